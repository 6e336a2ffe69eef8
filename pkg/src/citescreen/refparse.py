"""Best-effort parsing of bibliographic reference strings and structured maps.

The string parser extracts fields in a fixed order (DOI, URL, ISSN, year,
pages, volume/issue, container title), masking each match before the next
step so identifiers never bleed into later heuristics. It is rule-based and
deterministic; unparseable parts simply stay absent. The original string is
always preserved untouched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import CitescreenError
from .registry import Issn, IssnError, validate_issn

YEAR_MIN = 1500
YEAR_MAX = 2100

_DOI_SHAPE = re.compile(r"10\.\d+(?:\.\d+)*/.+")
_DOI_FIND = re.compile(r"(?:https?://(?:dx\.)?doi\.org/|\bdoi:\s*)?(10\.\d+(?:\.\d+)*/\S+)", re.IGNORECASE)
_URL_FIND = re.compile(r"(?:https?://|www\.)[^\s<>\"]+", re.IGNORECASE)
_ISSN_FIND = re.compile(r"\b\d{4}-?\d{3}[\dXx]\b")
_YEAR_FIND = re.compile(r"\b(?:1[5-9]\d{2}|20\d{2}|2100)\b")
_PAGES_FIND = re.compile(r"(?:\bpp?\.\s*)?(\d{1,5}\s?[-–—]\s?\d{1,5})\b")
_VOLUME_PAREN = re.compile(r"\b(\d{1,4})\s*\(\s*(\d{1,4}[A-Za-z]?)\s*\)")
_BARE_NUMBER = re.compile(r"\b\d{1,4}\b")
_ITALIC_SEGMENT = re.compile(r"[*_]([^*_]{2,200}?)[*_]")

_QUOTE_MAP = str.maketrans({"“": '"', "”": '"', "‘": "'", "’": "'"})
_SEGMENT_STRIP = " \t,;:.'\"()[]…"


class EmptyReference(CitescreenError):
    """Raised when the raw reference is empty or whitespace."""


@dataclass(frozen=True)
class ReferenceRecord:
    """Normalized fields of one bibliographic reference.

    All parsed fields are optional; ``raw`` is byte-identical to the input
    (or synthesized, for structured references). ``warnings`` records fields
    that were present but unparseable.
    """

    raw: str
    position: int
    authors: str | None = None
    year: int | None = None
    article_title: str | None = None
    container_title: str | None = None
    volume: str | None = None
    issue: str | None = None
    pages: str | None = None
    doi: str | None = None
    url: str | None = None
    issn: Issn | None = None
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.raw:
            raise ValueError("raw must be nonempty")
        if self.doi is not None and not _DOI_SHAPE.fullmatch(self.doi):
            raise ValueError(f"malformed DOI {self.doi!r}")
        if self.year is not None and not YEAR_MIN <= self.year <= YEAR_MAX:
            raise ValueError(f"year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]")

    def to_dict(self) -> dict:
        return {
            "raw": self.raw,
            "position": self.position,
            "authors": self.authors,
            "year": self.year,
            "article_title": self.article_title,
            "container_title": self.container_title,
            "volume": self.volume,
            "issue": self.issue,
            "pages": self.pages,
            "doi": self.doi,
            "url": self.url,
            "issn": self.issn.canonical if self.issn else None,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReferenceRecord":
        return cls(
            raw=data["raw"],
            position=data["position"],
            authors=data.get("authors"),
            year=data.get("year"),
            article_title=data.get("article_title"),
            container_title=data.get("container_title"),
            volume=data.get("volume"),
            issue=data.get("issue"),
            pages=data.get("pages"),
            doi=data.get("doi"),
            url=data.get("url"),
            issn=validate_issn(data["issn"]) if data.get("issn") else None,
            warnings=tuple(data.get("warnings", ())),
        )


def _mask(text: str, start: int, end: int) -> str:
    return text[:start] + " " * (end - start) + text[end:]


def _strip_trailing(value: str) -> str:
    return value.rstrip(".,;)")


def extract_doi(raw: str) -> str | None:
    """First DOI in ``raw``, with ``doi:`` / resolver prefixes and trailing
    punctuation stripped; None when no DOI shape occurs."""
    match = _DOI_FIND.search(raw)
    if not match:
        return None
    doi = _strip_trailing(match.group(1))
    return doi if _DOI_SHAPE.fullmatch(doi) else None


def doi_prefix(doi: str) -> str:
    """Registrant part of a well-formed DOI (everything before the first slash)."""
    return doi.split("/", 1)[0]


def _take_doi(text: str) -> tuple[str | None, str]:
    match = _DOI_FIND.search(text)
    if not match:
        return None, text
    doi = _strip_trailing(match.group(1))
    if not _DOI_SHAPE.fullmatch(doi):
        return None, text
    return doi, _mask(text, match.start(), match.end())


def _take_url(text: str) -> tuple[str | None, str]:
    url = None
    for match in _URL_FIND.finditer(text):
        if url is None:
            url = _strip_trailing(match.group(0))
        text = _mask(text, match.start(), match.end())
    return url, text


def _looks_like_year_range(candidate: str) -> bool:
    if "-" not in candidate:
        return False
    left, right = candidate.split("-", 1)
    return (
        left.isdigit()
        and right.isdigit()
        and YEAR_MIN <= int(left) <= YEAR_MAX
        and YEAR_MIN <= int(right) <= YEAR_MAX
    )


def _take_issn(text: str) -> tuple[Issn | None, str]:
    """First checksum-valid ISSN-shaped token, preferring ones labelled "ISSN".

    Unlabelled tokens that read as a year range (e.g. "2021-2022") are
    skipped: they are far more often date spans than serial numbers.
    """
    labelled: list[re.Match] = []
    bare: list[re.Match] = []
    for match in _ISSN_FIND.finditer(text):
        prefix = text[max(0, match.start() - 8) : match.start()].lower()
        if "issn" in prefix:
            labelled.append(match)
        elif not _looks_like_year_range(match.group(0)):
            bare.append(match)
    for match in labelled + bare:
        try:
            issn = validate_issn(match.group(0))
        except IssnError:
            continue
        return issn, _mask(text, match.start(), match.end())
    return None, text


def _take_year(text: str) -> tuple[int | None, int | None, str]:
    matches = list(_YEAR_FIND.finditer(text))
    if not matches:
        return None, None, text
    # Last in-range token: years trail references, volume numbers lead them.
    match = matches[-1]
    return int(match.group(0)), match.start(), _mask(text, match.start(), match.end())


def _take_pages(text: str) -> tuple[str | None, int | None, str]:
    matches = list(_PAGES_FIND.finditer(text))
    if not matches:
        return None, None, text
    match = matches[-1]
    pages = re.sub(r"\s+", "", match.group(1))
    return pages, match.start(1), _mask(text, match.start(), match.end())


def _take_volume(
    text: str, pages_at: int | None, year_at: int | None
) -> tuple[str | None, str | None, int | None]:
    paren = _VOLUME_PAREN.search(text)
    if paren:
        return paren.group(1), paren.group(2), paren.start()
    limit = pages_at if pages_at is not None else year_at
    if limit is None:
        return None, None, None
    numbers = list(_BARE_NUMBER.finditer(text, 0, limit))
    if not numbers:
        return None, None, None
    match = numbers[-1]
    return match.group(0), None, match.start()


def _split_segments(text: str) -> list[tuple[int, str]]:
    """Split at sentence boundaries: '.' (unless it closes a single-letter
    initial), ';' and an ellipsis. Returns (start offset, segment text) pairs."""
    segments: list[tuple[int, str]] = []
    start = 0
    for idx, char in enumerate(text):
        if char in ";…":
            segments.append((start, text[start:idx]))
            start = idx + 1
        elif char == ".":
            word = re.search(r"(\S+)$", text[start:idx])
            if word and len(word.group(1)) == 1 and word.group(1).isalpha():
                continue
            segments.append((start, text[start:idx]))
            start = idx + 1
    if start < len(text):
        segments.append((start, text[start:]))
    return segments


def _container_and_title(
    text: str, anchor: int | None, authors: str | None
) -> tuple[str | None, str | None]:
    head = text if anchor is None else text[:anchor]

    italic_matches = [m for m in _ITALIC_SEGMENT.finditer(text) if anchor is None or m.end() <= anchor + 1]
    if italic_matches:
        best = max(italic_matches, key=lambda m: len(m.group(1)))
        container = best.group(1).strip(_SEGMENT_STRIP)
        title = _title_from_segments(_split_segments(text[: best.start()]), len_segments=None, authors=authors)
        return (container or None), title

    if anchor is None:
        return None, None
    segments = _split_segments(head)
    for idx in range(len(segments) - 1, -1, -1):
        candidate = segments[idx][1].strip(_SEGMENT_STRIP)
        if re.search(r"[^\W\d_]", candidate):
            title = _title_from_segments(segments, len_segments=idx, authors=authors)
            return candidate, title
    return None, None


def _title_from_segments(
    segments: list[tuple[int, str]], len_segments: int | None, authors: str | None
) -> str | None:
    parts = segments if len_segments is None else segments[:len_segments]
    joined = ". ".join(seg.strip() for _, seg in parts).strip(_SEGMENT_STRIP)
    joined = re.sub(r"\s+", " ", joined)
    if authors and joined.startswith(authors):
        joined = joined[len(authors) :].lstrip(_SEGMENT_STRIP + " ")
    return joined or None


def _take_authors(text: str) -> str | None:
    dot = text.find(".")
    if dot < 2 or dot > 80:
        return None
    prefix = text[:dot].strip()
    if not re.search(r"[A-Za-z]", prefix) or re.search(r"\d", prefix):
        return None
    return prefix


def parse_reference(raw: str, position: int = 0) -> ReferenceRecord:
    """Parse one raw reference string; extraction is best-effort and never
    raises on messy input. Only an empty/whitespace string is an error."""
    if not raw or not raw.strip():
        raise EmptyReference("reference string is empty")

    work = raw.translate(_QUOTE_MAP)
    doi, work = _take_doi(work)
    url, work = _take_url(work)
    issn, work = _take_issn(work)
    year, year_at, work = _take_year(work)
    pages, pages_at, work = _take_pages(work)
    volume, issue, volume_at = _take_volume(work, pages_at, year_at)

    anchor = volume_at if volume_at is not None else pages_at if pages_at is not None else year_at
    authors = _take_authors(work)
    container, article_title = _container_and_title(work, anchor, authors)

    return ReferenceRecord(
        raw=raw,
        position=position,
        authors=authors,
        year=year,
        article_title=article_title,
        container_title=container,
        volume=volume,
        issue=issue,
        pages=pages,
        doi=doi,
        url=url,
        issn=issn,
    )


_STRUCTURED_KEYS = ("author", "year", "title", "container-title", "volume", "issue", "page", "DOI", "URL", "ISSN")


def _synthesize_raw(fields: dict[str, str]) -> str:
    segments = [fields[k] for k in ("author", "title", "container-title") if fields.get(k)]
    middle = fields.get("volume", "")
    if fields.get("issue"):
        middle += f"({fields['issue']})" if middle else fields["issue"]
    if fields.get("page"):
        middle += f":{fields['page']}" if middle else fields["page"]
    if middle:
        segments.append(middle)
    if fields.get("year"):
        segments.append(fields["year"])
    raw = ". ".join(seg.strip() for seg in segments)
    raw = raw + "." if raw else ""
    if fields.get("DOI"):
        raw += f" doi:{fields['DOI'].strip()}."
    if fields.get("URL"):
        raw += f" {fields['URL'].strip()}"
    if fields.get("ISSN"):
        raw += f" ISSN {fields['ISSN'].strip()}."
    return raw.strip()


def parse_structured_reference(fields: dict[str, str], position: int = 0) -> ReferenceRecord:
    """Build a record from structured citation metadata.

    Recognized keys: author, year, title, container-title, volume, issue,
    page, DOI, URL, ISSN. Unknown keys are ignored. An unparseable year,
    ISSN or DOI is dropped and noted in ``warnings`` instead of failing.
    """
    known = {k: str(v).strip() for k, v in fields.items() if k in _STRUCTURED_KEYS and str(v).strip()}
    warnings: list[str] = []

    year: int | None = None
    if "year" in known:
        try:
            year = int(known["year"])
            if not YEAR_MIN <= year <= YEAR_MAX:
                raise ValueError
        except ValueError:
            warnings.append(f"year: unparseable {known['year']!r}")
            year = None

    issn: Issn | None = None
    if "ISSN" in known:
        try:
            issn = validate_issn(known["ISSN"])
        except IssnError as exc:
            warnings.append(f"ISSN: {exc}")

    doi = known.get("DOI")
    if doi is not None and not _DOI_SHAPE.fullmatch(doi):
        warnings.append(f"DOI: malformed {doi!r}")
        doi = None

    raw = _synthesize_raw(known)
    if not raw:
        raise EmptyReference("structured reference has no usable fields")

    return ReferenceRecord(
        raw=raw,
        position=position,
        authors=known.get("author"),
        year=year,
        article_title=known.get("title"),
        container_title=known.get("container-title"),
        volume=known.get("volume"),
        issue=known.get("issue"),
        pages=known.get("page"),
        doi=doi,
        url=known.get("URL"),
        issn=issn,
        warnings=tuple(warnings),
    )
