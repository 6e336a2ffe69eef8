"""Acceptance suite: one test per release criterion.

Run with ``pytest -v tests/test_acceptance.py`` to get exactly one pass/fail
line per criterion. Tolerances are pinned in the assertions, never computed
from the values under test. Fixture oracles (toy-corpus manifest, full-scale
ledger shape) were written by hand before the pipeline existed.
"""

from __future__ import annotations

import importlib.util
import random
import re
import time

import pytest

from citescreen.harvester import DateWindow
from citescreen.ledger import Ledger
from citescreen.matcher import (
    EvidenceSignals,
    Label,
    TriState,
    UrlDomain,
    auto_classify,
    levenshtein,
    similarity,
)
from citescreen.refparse import EmptyReference, parse_reference
from citescreen.registry import ChecksumFailure, issn_check_character, validate_issn
from citescreen.screener import compute_stats, format_percent, render_report

from conftest import FIXTURES, run_toy_pipeline

WINDOW = DateWindow.from_iso("2021-01-01", "2022-01-31")
RULES = {"R1", "R2", "R3", "R4", "R5", "R6", "R7"}


@pytest.fixture(scope="module")
def fullscale_ledger_path(tmp_path_factory):
    """Synthetic 1,421-article ledger built by the bundled generator script."""
    script = FIXTURES.parent / "scripts" / "make_fullscale_fixture.py"
    spec = importlib.util.spec_from_file_location("make_fullscale_fixture", script)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    path = tmp_path_factory.mktemp("fullscale") / "ledger.jsonl"
    module.build_ledger(path)
    return path


def test_fullscale_fixture_share_and_daily_average(fullscale_ledger_path):
    """1,421 retrieved / 828 citejacked over 396 days: share 58.3% within
    0.05 percentage points, daily average 2.09 within 0.01, under 5 s."""
    started = time.perf_counter()
    ledger = Ledger(fullscale_ledger_path)
    stats = compute_stats(ledger, WINDOW)
    elapsed = time.perf_counter() - started

    assert stats.retrieved_articles == 1421
    assert stats.citejacked_articles == 828
    assert abs(stats.share * 100 - 58.3) <= 0.05, f"share {stats.share * 100:.4f}% off 58.3%"
    assert format_percent(stats.share) == "58.3%"
    assert abs(stats.daily_average - 2.09) <= 0.01, f"daily average {stats.daily_average:.4f} off 2.09"
    assert elapsed < 5.0, f"stats took {elapsed:.2f}s"
    print(f"PASS share={format_percent(stats.share)} daily={stats.daily_average:.2f} elapsed={elapsed:.3f}s")


def test_publisher_distribution_sixty_seven_and_top_ten(fullscale_ledger_path):
    """67 distinct publishers; the rendered report lists exactly 10 rows in
    descending count order; shares are consistent."""
    stats = compute_stats(Ledger(fullscale_ledger_path), WINDOW)
    assert stats.distinct_publishers == 67

    report = render_report(stats, top=10)
    rows = re.findall(r"^  (\S.*?)\s+(\d+)\s+[\d.]+%$", report, flags=re.MULTILINE)
    assert len(rows) == 10, f"expected 10 rendered publisher rows, got {len(rows)}"
    counts = [int(count) for _, count in rows]
    assert counts == sorted(counts, reverse=True)

    top_ten_share = sum(row.share for row in stats.publishers[:10])
    assert top_ten_share <= 1.0 + 1e-9
    all_share = sum(row.share for row in stats.publishers)
    assert abs(all_share - 1.0) <= 1e-7, f"all-publisher shares sum to {all_share}"
    print(f"PASS distinct=67 rendered_rows=10 top10_share={top_ten_share:.4f} total_share={all_share:.9f}")


def test_issn_checksum_properties():
    """10,000 random prefixes validate with their computed check character;
    every single-digit mutation of 1,000 valid ISSNs fails the checksum."""
    rng = random.Random(0x155A)

    for _ in range(10_000):
        prefix = "".join(rng.choices("0123456789", k=7))
        check = issn_check_character(prefix)
        issn = validate_issn(f"{prefix[:4]}-{prefix[4:]}{check}")
        assert issn.digits == prefix and issn.check == check

    mutations = 0
    for _ in range(1_000):
        prefix = "".join(rng.choices("0123456789", k=7))
        check = issn_check_character(prefix)
        for position in range(7):
            original = prefix[position]
            for replacement in "0123456789":
                if replacement == original:
                    continue
                mutated = prefix[:position] + replacement + prefix[position + 1 :]
                with pytest.raises(ChecksumFailure):
                    validate_issn(mutated + check)
                mutations += 1
    assert mutations == 1_000 * 7 * 9
    print(f"PASS validated=10000 mutations_rejected={mutations}")


def test_edit_distance_matches_independent_oracle():
    """Library edit distance agrees exactly with the brute-force matrix
    implementation on 1,000 random pairs of length <= 12; similarity is
    symmetric on the same pairs."""
    from oracles import slow_edit_distance

    rng = random.Random(0xD157)
    alphabet = "abcdefghij éüñ-'."
    for _ in range(1_000):
        a = "".join(rng.choices(alphabet, k=rng.randint(0, 12)))
        b = "".join(rng.choices(alphabet, k=rng.randint(0, 12)))
        assert levenshtein(a, b) == slow_edit_distance(a, b), (a, b)
        assert similarity(a, b) == similarity(b, a), (a, b)
    print("PASS pairs=1000 exact-match and symmetric")


GUARDS = {
    1: {"matched_in_reference_list": False},
    2: {"issn_matches_hijacked_only": True},
    3: {"url_domain": UrlDomain.HIJACKED},
    4: {"doi_prefix_is_legit": TriState.YES},
    5: {"url_domain": UrlDomain.LEGIT},
    6: {"year_in_hijack_window": TriState.NO},
}


def guard_signals(**overrides) -> EvidenceSignals:
    base = dict(
        title_similarity=1.0,
        issn_matches_legit=False,
        issn_matches_hijacked_only=False,
        doi_prefix_is_legit=TriState.UNKNOWN,
        url_domain=UrlDomain.ABSENT,
        year_in_hijack_window=TriState.UNKNOWN,
        matched_in_reference_list=True,
    )
    base.update(overrides)
    return EvidenceSignals(**base)


def test_classifier_precedence_and_totality():
    """Every simultaneously-satisfiable pair of rule guards resolves to the
    earlier rule; the classifier is total and deterministic over the entire
    signal space."""
    # single guards, plus the no-guard fallthrough
    for index, overrides in GUARDS.items():
        assert auto_classify(guard_signals(**overrides)).rule_fired == f"R{index}"
    assert auto_classify(guard_signals()).rule_fired == "R7"

    pair_count = 0
    for low in GUARDS:
        for high in GUARDS:
            if low >= high:
                continue
            if {low, high} == {3, 5}:
                continue  # a URL cannot be on a hijacked and a legit domain at once
            merged = {**GUARDS[low], **GUARDS[high]}
            assert auto_classify(guard_signals(**merged)).rule_fired == f"R{low}", (low, high)
            pair_count += 1
    assert pair_count == 14

    total = 0
    for legit in (False, True):
        for hijacked_only in (False, True):
            if legit and hijacked_only:
                continue
            for doi in TriState:
                for url in UrlDomain:
                    for year in TriState:
                        for in_list in (False, True):
                            signals = guard_signals(
                                issn_matches_legit=legit,
                                issn_matches_hijacked_only=hijacked_only,
                                doi_prefix_is_legit=doi,
                                url_domain=url,
                                year_in_hijack_window=year,
                                matched_in_reference_list=in_list,
                            )
                            first = auto_classify(signals)
                            second = auto_classify(signals)
                            assert first.rule_fired in RULES
                            assert first.label is second.label
                            assert first.rule_fired == second.rule_fired
                            total += 1
    assert total == 216  # 3 * 3 * 4 * 3 * 2 valid signal combinations
    print(f"PASS guard_pairs={pair_count} exhaustive_vectors={total}")


def test_toy_corpus_reproduces_manifest_exactly(tmp_path, manifest):
    """The bundled 30-article corpus yields precisely the hand-derived
    manifest ledger; re-running appends nothing; unregistered venues and
    out-of-window articles never appear."""
    path = tmp_path / "ledger.jsonl"
    ledger, _ = run_toy_pipeline(path, manifest)

    got = {
        (e.candidate.citing_article_id, str(e.candidate.reference_position), e.candidate.registry_id):
        (e.current_label.value, e.history[0].rule_fired)
        for e in ledger.entries()
    }
    want = {
        (m["article"], str(m["position"]), m["registry_id"]): (m["label"], m["rule"])
        for m in manifest["entries"]
    }
    assert got == want, {
        "missing": sorted(set(want) - set(got)),
        "extra": sorted(set(got) - set(want)),
        "relabelled": {k: (got[k], want[k]) for k in set(got) & set(want) if got[k] != want[k]},
    }

    retrieved = {e.article.id for e in ledger.entries()}
    assert retrieved == set(manifest["retrieved_articles"])
    for excluded in manifest["excluded_by_register"] + manifest["out_of_window"]:
        assert excluded not in retrieved

    citejacked = {e.article.id for e in ledger.entries() if e.current_label is Label.TRUE_POSITIVE}
    assert citejacked == set(manifest["citejacked_articles"])

    bytes_before = path.read_bytes()
    rerun, _ = run_toy_pipeline(path, manifest)
    assert path.read_bytes() == bytes_before, "idempotent re-run must append nothing"
    assert len(rerun) == len(manifest["entries"])
    print(f"PASS entries={len(got)} retrieved={len(retrieved)} idempotent=yes")


def test_ledger_replay_reconstructs_state(tmp_path, manifest):
    """After 50 random manual decisions the event file replays to a state
    deep-equal to the live ledger."""
    path = tmp_path / "ledger.jsonl"
    live, _ = run_toy_pipeline(path, manifest)

    rng = random.Random(0x5EED)
    entries = live.entries()
    labels = [Label.TRUE_POSITIVE, Label.FALSE_POSITIVE, Label.MENTION]
    for _ in range(50):
        live.record_decision(rng.choice(entries).entry_id, rng.choice(labels), rng.choice(["ana", "ben", "caro"]))

    replayed = Ledger(path)
    assert len(replayed) == len(live)
    fresh = replayed.entries()
    for rebuilt, original in zip(fresh, entries):
        assert rebuilt == original, rebuilt.entry_id
    assert [e.entry_id for e in replayed.queue()] == [e.entry_id for e in live.queue()]
    decisions = sum(len(e.history) - 1 for e in fresh)
    assert decisions == 50
    print(f"PASS decisions=50 replayed_entries={len(replayed)} deep_equal=yes")


def test_reference_goldens_and_fuzz():
    """The two pinned real-world reference strings parse to their expected
    fields; 10,000 random non-empty UTF-8 strings never crash the parser."""
    first = parse_reference(
        "Abalkina A. Detecting a network of hijacked journals by its archive. "
        "Scientometrics 126, 7123–7148, 2021. doi:10.1007/s11192-021-04056-0"
    )
    assert first.container_title == "Scientometrics"
    assert first.volume == "126"
    assert first.pages == "7123–7148"
    assert first.year == 2021
    assert first.doi == "10.1007/s11192-021-04056-0"

    second = parse_reference(
        "Moussa S. A “Trojan horse” in the reference lists: … "
        "The Journal of Academic Librarianship, 47(5), 2021. doi: 10.1016/j.acalib.2021.102388"
    )
    assert second.container_title == "The Journal of Academic Librarianship"
    assert second.volume == "47"
    assert second.issue == "5"
    assert second.year == 2021
    assert second.doi == "10.1016/j.acalib.2021.102388"

    rng = random.Random(0xF422)

    def random_char() -> str:
        while True:
            codepoint = rng.randint(1, 0x10FFFF)
            if 0xD800 <= codepoint <= 0xDFFF:
                continue  # unencodable surrogate half
            return chr(codepoint)

    parsed = 0
    for _ in range(10_000):
        raw = "".join(random_char() for _ in range(rng.randint(1, 80)))
        try:
            record = parse_reference(raw)
        except EmptyReference:
            assert raw.strip() == ""
            continue
        assert record.raw == raw
        parsed += 1
    assert parsed > 9_000
    print(f"PASS goldens=2 fuzz_parsed={parsed}/10000")
