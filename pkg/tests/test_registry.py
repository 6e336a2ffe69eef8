from __future__ import annotations

import datetime as dt
import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from citescreen.registry import (
    ChecksumFailure,
    DuplicateId,
    InvariantViolation,
    Issn,
    MalformedIssn,
    ParseError,
    RegisterEntry,
    RegisterIndex,
    issn_check_character,
    load_register,
    load_registry,
    validate_issn,
)

from oracles import expected_check_character

REGISTRY_HEADER = (
    "id,canonical_title,title_variants,legit_issns,hijacked_issns,legit_publisher,"
    "legit_domains,hijacked_domains,legit_doi_prefixes,hijack_first_seen,source_note"
)


def registry_csv(*rows: str) -> io.BytesIO:
    return io.BytesIO(("\n".join([REGISTRY_HEADER, *rows]) + "\n").encode("utf-8"))


def register_csv(*rows: str) -> io.BytesIO:
    return io.BytesIO(("\n".join(["venue_title,issns,publisher,level", *rows]) + "\n").encode("utf-8"))


GOOD_ROW = (
    "hj-x,Journal of Coastal Informatics,J Coastal Informatics,2301-9484,3011-5558,"
    "Tidewater Academic Press,coastalinformatics.org,coastal-informatics.net,10.5501,2020-06-01,note"
)


class TestIssn:
    def test_known_check_characters(self):
        # 0317-8471 is the canonical example serial; the rest exercise 0 and X.
        assert validate_issn("0317-8471").canonical == "0317-8471"
        assert issn_check_character("0317847") == "1"
        assert issn_check_character("1000007") == "0"
        assert issn_check_character("1000002") == "X"

    def test_accepts_unhyphenated_and_lowercase_x(self):
        assert validate_issn("1000002x").canonical == "1000-002X"
        assert validate_issn("03178471").canonical == "0317-8471"
        # hyphen position is not checked, only count
        assert validate_issn("03-178471").canonical == "0317-8471"

    def test_strips_whitespace(self):
        assert validate_issn("  0317-8471 ").canonical == "0317-8471"

    @pytest.mark.parametrize("raw", ["", "0317847", "0317-84712", "ABCD-EFGH", "0317_8471", "0317--8471"])
    def test_malformed(self, raw):
        with pytest.raises(MalformedIssn):
            validate_issn(raw)

    def test_checksum_failure(self):
        with pytest.raises(ChecksumFailure):
            validate_issn("0317-8472")

    def test_ordering_and_str(self):
        a = validate_issn("0317-8471")
        b = validate_issn("1000-0070")
        assert str(a) == "0317-8471"
        assert a < b
        assert a == Issn(digits="0317847", check="1")

    @given(st.text(alphabet="0123456789", min_size=7, max_size=7))
    def test_check_character_matches_oracle(self, digits):
        assert issn_check_character(digits) == expected_check_character(digits)


class TestLoadRegistry:
    def test_round_trip_fields(self):
        records = load_registry(registry_csv(GOOD_ROW))
        assert len(records) == 1
        rec = records[0]
        assert rec.id == "hj-x"
        assert rec.title_variants == ("J Coastal Informatics",)
        assert [str(i) for i in rec.legit_issns] == ["2301-9484"]
        assert [str(i) for i in rec.hijacked_issns] == ["3011-5558"]
        assert rec.hijack_first_seen == dt.date(2020, 6, 1)

    def test_empty_file_yields_no_records(self):
        assert load_registry(io.BytesIO(b"")) == []

    def test_header_mismatch(self):
        with pytest.raises(ParseError):
            load_registry(io.BytesIO(b"id,title\nx,y\n"))

    def test_duplicate_id(self):
        with pytest.raises(DuplicateId):
            load_registry(registry_csv(GOOD_ROW, GOOD_ROW))

    def test_bad_issn_names_the_record(self):
        row = GOOD_ROW.replace("2301-9484", "2301-9485")
        with pytest.raises(InvariantViolation) as err:
            load_registry(registry_csv(row))
        assert "hj-x" in str(err.value)

    def test_requires_legit_issn(self):
        row = GOOD_ROW.replace("2301-9484", "")
        with pytest.raises(InvariantViolation):
            load_registry(registry_csv(row))

    def test_domain_overlap_rejected(self):
        row = GOOD_ROW.replace("coastal-informatics.net", "coastalinformatics.org")
        with pytest.raises(InvariantViolation):
            load_registry(registry_csv(row))

    def test_future_first_seen_rejected(self):
        row = GOOD_ROW.replace("2020-06-01", "2031-01-01")
        with pytest.raises(InvariantViolation):
            load_registry(registry_csv(row, ))
        # but fine when "today" is later than that date
        records = load_registry(registry_csv(row), today=dt.date(2032, 1, 1))
        assert records[0].hijack_first_seen.year == 2031

    def test_search_names_dedupes_case_insensitively(self):
        row = GOOD_ROW.replace("J Coastal Informatics", "JOURNAL OF COASTAL INFORMATICS;J Coastal Informatics")
        rec = load_registry(registry_csv(row))[0]
        assert rec.search_names() == ["Journal of Coastal Informatics", "J Coastal Informatics"]

    def test_path_input_rejected(self):
        with pytest.raises(TypeError):
            load_registry("fixtures/registry.csv")


class TestLoadRegister:
    def test_levels_and_lookup(self):
        index = load_register(register_csv(
            "Estuarine Systems Research,1000-0011,Bluewater Journals,1",
            "Applied Geoinformatics Quarterly,1000-0062,Meridian Science Press,0",
        ))
        assert index.contains_issn(validate_issn("1000-0011"))
        # level 0 is still listed: presence is what matters
        assert index.contains_title("Applied Geoinformatics Quarterly")
        assert index.contains_title("  the APPLIED GEOINFORMATICS quarterly. ")
        assert not index.contains_title("Unknown Venue")

    def test_lookup_returns_entries(self):
        index = load_register(register_csv("Estuarine Systems Research,1000-0011,Bluewater Journals,1"))
        by_issn = index.lookup(validate_issn("1000-0011"))
        by_title = index.lookup("Estuarine Systems Research")
        assert by_issn == by_title
        assert by_issn[0].publisher == "Bluewater Journals"

    def test_row_needs_title_or_issn(self):
        with pytest.raises(ParseError):
            load_register(register_csv(",,Ghost Press,1"))

    def test_level_out_of_range(self):
        with pytest.raises(ParseError):
            load_register(register_csv("Venue,1000-0011,P,3"))

    def test_bad_issn_in_register(self):
        with pytest.raises(ParseError):
            load_register(register_csv("Venue,1000-0012,P,1"))

    def test_multi_issn_field(self):
        index = load_register(register_csv("Venue,1000-0011;1000-002X,P,2"))
        assert index.contains_issn(validate_issn("1000-002X"))

    def test_empty_index(self):
        index = RegisterIndex(entries=())
        assert not index.contains_title("anything")
        assert index.lookup("anything") == []


def test_fixture_files_load(registry, register):
    assert [rec.id for rec in registry] == ["hj-001", "hj-002", "hj-003"]
    assert registry[1].hijacked_issns == ()
    assert len(register.entries) == 8
    assert register.contains_title("Wetland Monitoring Bulletin.")


def test_register_entry_is_frozen():
    entry = RegisterEntry(venue_title="V", issns=(), publisher="P", level=1)
    with pytest.raises(AttributeError):
        entry.level = 2
