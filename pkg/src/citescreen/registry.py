"""Registry of hijacked-journal records and the whitelist register of venues.

Both files are UTF-8 CSV with a fixed header row; list-valued fields use an
internal ";" separator. Loaded structures are immutable and safe to share
across threads.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
from dataclasses import dataclass, field

from .errors import CitescreenError
from .textnorm import normalize_title

REGISTRY_HEADER = [
    "id",
    "canonical_title",
    "title_variants",
    "legit_issns",
    "hijacked_issns",
    "legit_publisher",
    "legit_domains",
    "hijacked_domains",
    "legit_doi_prefixes",
    "hijack_first_seen",
    "source_note",
]

REGISTER_HEADER = ["venue_title", "issns", "publisher", "level"]

_ISSN_WEIGHTS = (8, 7, 6, 5, 4, 3, 2)


class IssnError(CitescreenError):
    pass


class MalformedIssn(IssnError):
    """Wrong length or characters for an ISSN."""


class ChecksumFailure(IssnError):
    """Well-formed ISSN whose check character does not validate."""


class ParseError(CitescreenError):
    """Malformed row or field; carries the 1-based row index."""

    def __init__(self, row: int, message: str) -> None:
        super().__init__(f"row {row}: {message}")
        self.row = row


class DuplicateId(CitescreenError):
    pass


class InvariantViolation(CitescreenError):
    """A loaded record breaks one of its declared invariants."""

    def __init__(self, record_id: str, message: str) -> None:
        super().__init__(f"record {record_id!r}: {message}")
        self.record_id = record_id


@dataclass(frozen=True, order=True)
class Issn:
    """Validated serial number: 7 digits plus a mod-11 check character (X = 10)."""

    digits: str
    check: str

    @property
    def canonical(self) -> str:
        return f"{self.digits[:4]}-{self.digits[4:]}{self.check}"

    def __str__(self) -> str:
        return self.canonical


def issn_check_character(digits: str) -> str:
    """Check character for a 7-digit prefix (weights 8..2, mod 11, X = 10)."""
    if len(digits) != 7 or not digits.isdigit():
        raise MalformedIssn(f"expected 7 digits, got {digits!r}")
    total = sum(int(d) * w for d, w in zip(digits, _ISSN_WEIGHTS))
    rem = total % 11
    value = 0 if rem == 0 else 11 - rem
    return "X" if value == 10 else str(value)


def validate_issn(raw: str) -> Issn:
    """Parse ``raw`` into a canonical Issn.

    Accepts an optional single hyphen anywhere and a lowercase trailing x.
    Raises MalformedIssn for shape problems and ChecksumFailure when the
    check character does not match.
    """
    compact = raw.strip()
    if compact.count("-") == 1:
        compact = compact.replace("-", "")
    if len(compact) == 8 and compact[7] == "x":
        compact = compact[:7] + "X"
    if len(compact) != 8 or not compact[:7].isdigit() or compact[7] not in "0123456789X":
        raise MalformedIssn(f"not an ISSN: {raw!r}")
    expected = issn_check_character(compact[:7])
    if compact[7] != expected:
        raise ChecksumFailure(f"{raw!r}: check character {compact[7]} != {expected}")
    return Issn(digits=compact[:7], check=compact[7])


@dataclass(frozen=True)
class HijackedJournalRecord:
    """One journal with a documented fraudulent clone of its identity."""

    id: str
    canonical_title: str
    title_variants: tuple[str, ...]
    legit_issns: tuple[Issn, ...]
    hijacked_issns: tuple[Issn, ...]
    legit_publisher: str
    legit_domains: tuple[str, ...]
    hijacked_domains: tuple[str, ...]
    legit_doi_prefixes: tuple[str, ...]
    hijack_first_seen: dt.date
    source_note: str

    def search_names(self) -> list[str]:
        """Canonical title plus variants, deduplicated case-insensitively."""
        names: list[str] = []
        seen: set[str] = set()
        for name in (self.canonical_title, *self.title_variants):
            key = name.casefold()
            if name and key not in seen:
                seen.add(key)
                names.append(name)
        return names


@dataclass(frozen=True)
class RegisterEntry:
    """One venue listed in the whitelist register."""

    venue_title: str
    issns: tuple[Issn, ...]
    publisher: str
    level: int


@dataclass
class RegisterIndex:
    """Register entries indexed for exact lookup by ISSN and normalized title.

    Duplicate ISSNs or titles across rows are preserved; lookup returns all
    matching entries. Immutable after construction.
    """

    entries: tuple[RegisterEntry, ...]
    _by_issn: dict[str, list[RegisterEntry]] = field(default_factory=dict, repr=False)
    _by_title: dict[str, list[RegisterEntry]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for entry in self.entries:
            for issn in entry.issns:
                self._by_issn.setdefault(issn.canonical, []).append(entry)
            title = normalize_title(entry.venue_title)
            if title:
                self._by_title.setdefault(title, []).append(entry)

    def lookup(self, key: Issn | str) -> list[RegisterEntry]:
        """Entries matching an ISSN or a title (normalized before comparison)."""
        if isinstance(key, Issn):
            return list(self._by_issn.get(key.canonical, []))
        return list(self._by_title.get(normalize_title(key), []))

    def contains_issn(self, issn: Issn) -> bool:
        return issn.canonical in self._by_issn

    def contains_title(self, title: str) -> bool:
        return normalize_title(title) in self._by_title


def _decode(source) -> io.TextIOBase:
    if isinstance(source, (str, bytes)):
        raise TypeError("load_* takes a readable stream, not a path or data")
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8")

def _split_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(";") if item.strip()]


def _parse_issn_list(value: str, row: int) -> tuple[Issn, ...]:
    issns = []
    for item in _split_list(value):
        try:
            issns.append(validate_issn(item))
        except IssnError as exc:
            raise ParseError(row, f"bad ISSN {item!r}: {exc}") from exc
    return tuple(issns)


def load_registry(source, today: dt.date | None = None) -> list[HijackedJournalRecord]:
    """Load hijacked-journal records from a CSV byte or text stream.

    Every record is checked against its invariants; ids must be unique.
    Deterministic: the same bytes yield the same records in the same order.
    """
    today = today or dt.date.today()
    reader = csv.reader(_decode(source))
    try:
        header = next(reader)
    except StopIteration:
        return []
    if header != REGISTRY_HEADER:
        raise ParseError(1, f"unexpected header {header!r}")

    records: list[HijackedJournalRecord] = []
    seen_ids: set[str] = set()
    for row_idx, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(REGISTRY_HEADER):
            raise ParseError(row_idx, f"expected {len(REGISTRY_HEADER)} fields, got {len(row)}")
        rec_id = row[0].strip()
        if not rec_id:
            raise ParseError(row_idx, "empty id")
        if rec_id in seen_ids:
            raise DuplicateId(f"duplicate registry id {rec_id!r} at row {row_idx}")
        seen_ids.add(rec_id)

        try:
            legit_issns = _parse_issn_list(row[3], row_idx)
            hijacked_issns = _parse_issn_list(row[4], row_idx)
        except ParseError as exc:
            # A syntactically broken ISSN in a registry record is a record
            # problem, not a file problem: name the record.
            raise InvariantViolation(rec_id, str(exc)) from exc
        try:
            first_seen = dt.date.fromisoformat(row[9].strip())
        except ValueError as exc:
            raise ParseError(row_idx, f"bad date {row[9]!r}") from exc

        record = HijackedJournalRecord(
            id=rec_id,
            canonical_title=row[1].strip(),
            title_variants=tuple(_split_list(row[2])),
            legit_issns=legit_issns,
            hijacked_issns=hijacked_issns,
            legit_publisher=row[5].strip(),
            legit_domains=tuple(_split_list(row[6])),
            hijacked_domains=tuple(_split_list(row[7])),
            legit_doi_prefixes=tuple(_split_list(row[8])),
            hijack_first_seen=first_seen,
            source_note=row[10].strip(),
        )
        _check_record(record, today)
        records.append(record)
    return records


def _check_record(record: HijackedJournalRecord, today: dt.date) -> None:
    if not record.legit_issns:
        raise InvariantViolation(record.id, "legit_issns must be nonempty")
    overlap = set(record.legit_domains) & set(record.hijacked_domains)
    if overlap:
        raise InvariantViolation(record.id, f"domains listed as both legit and hijacked: {sorted(overlap)}")
    if record.hijack_first_seen > today:
        raise InvariantViolation(record.id, f"hijack_first_seen {record.hijack_first_seen} is in the future")


def load_register(source) -> RegisterIndex:
    """Load the venue whitelist from a CSV byte or text stream.

    Level 0 venues are still listed: presence, not level, is what the
    screening filter checks.
    """
    reader = csv.reader(_decode(source))
    try:
        header = next(reader)
    except StopIteration:
        return RegisterIndex(entries=())
    if header != REGISTER_HEADER:
        raise ParseError(1, f"unexpected header {header!r}")

    entries: list[RegisterEntry] = []
    for row_idx, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(REGISTER_HEADER):
            raise ParseError(row_idx, f"expected {len(REGISTER_HEADER)} fields, got {len(row)}")
        title = row[0].strip()
        issns = _parse_issn_list(row[1], row_idx)
        if not title and not issns:
            raise ParseError(row_idx, "entry needs a venue title or at least one ISSN")
        try:
            level = int(row[3])
        except ValueError as exc:
            raise ParseError(row_idx, f"bad level {row[3]!r}") from exc
        if level not in (0, 1, 2):
            raise ParseError(row_idx, f"level must be 0, 1 or 2, got {level}")
        entries.append(RegisterEntry(venue_title=title, issns=issns, publisher=row[2].strip(), level=level))
    return RegisterIndex(entries=tuple(entries))
