"""Matching cited container titles to watchlist journals and auto-classifying.

Matching scores a normalized edit-distance ratio between the cited title and
each watchlist journal's names. Classification runs a short ordered rule
chain over evidence collected from the parsed reference; every signal
combination lands on exactly one rule, and anything ambiguous stays
Undecided for a human reviewer.
"""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass
from typing import Iterable

from .refparse import ReferenceRecord, doi_prefix
from .registry import HijackedJournalRecord
from .textnorm import normalize_title

__all__ = [
    "BODY_TEXT_POSITION",
    "DEFAULT_THRESHOLD",
    "TriState",
    "UrlDomain",
    "Label",
    "Origin",
    "EvidenceSignals",
    "Classification",
    "MatchCandidate",
    "normalize_title",
    "levenshtein",
    "similarity",
    "find_candidates",
    "collect_evidence",
    "auto_classify",
]

DEFAULT_THRESHOLD = 0.90

# Sentinel reference position for a journal name found in body text only.
BODY_TEXT_POSITION = "body-text"


class TriState(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class UrlDomain(enum.Enum):
    LEGIT = "legit"
    HIJACKED = "hijacked"
    OTHER = "other"
    ABSENT = "absent"


class Label(enum.Enum):
    TRUE_POSITIVE = "TruePositive"
    FALSE_POSITIVE = "FalsePositive"
    MENTION = "Mention"
    UNDECIDED = "Undecided"


class Origin(enum.Enum):
    AUTOMATIC = "Automatic"
    MANUAL = "Manual"


def levenshtein(a: str, b: str) -> int:
    """Edit distance (insert, delete, substitute) between two strings."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, char_a in enumerate(a, start=1):
        current = [i]
        for j, char_b in enumerate(b, start=1):
            cost = 0 if char_a == char_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Similarity of two titles after normalization, in [0, 1].

    1 - distance/max(length); two titles that both normalize to nothing
    count as identical. Symmetric, and exactly 1.0 iff the normalized forms
    are equal.
    """
    norm_a = normalize_title(a)
    norm_b = normalize_title(b)
    if not norm_a and not norm_b:
        return 1.0
    return 1.0 - levenshtein(norm_a, norm_b) / max(len(norm_a), len(norm_b))


@dataclass(frozen=True)
class EvidenceSignals:
    """Per-candidate evidence from one reference against one journal record."""

    title_similarity: float
    issn_matches_legit: bool
    issn_matches_hijacked_only: bool
    doi_prefix_is_legit: TriState
    url_domain: UrlDomain
    year_in_hijack_window: TriState
    matched_in_reference_list: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.title_similarity <= 1.0:
            raise ValueError(f"title_similarity {self.title_similarity} outside [0, 1]")
        if self.issn_matches_legit and self.issn_matches_hijacked_only:
            raise ValueError("an ISSN cannot match legit and hijacked-only at once")

    def to_dict(self) -> dict:
        return {
            "title_similarity": self.title_similarity,
            "issn_matches_legit": self.issn_matches_legit,
            "issn_matches_hijacked_only": self.issn_matches_hijacked_only,
            "doi_prefix_is_legit": self.doi_prefix_is_legit.value,
            "url_domain": self.url_domain.value,
            "year_in_hijack_window": self.year_in_hijack_window.value,
            "matched_in_reference_list": self.matched_in_reference_list,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvidenceSignals":
        return cls(
            title_similarity=data["title_similarity"],
            issn_matches_legit=data["issn_matches_legit"],
            issn_matches_hijacked_only=data["issn_matches_hijacked_only"],
            doi_prefix_is_legit=TriState(data["doi_prefix_is_legit"]),
            url_domain=UrlDomain(data["url_domain"]),
            year_in_hijack_window=TriState(data["year_in_hijack_window"]),
            matched_in_reference_list=data["matched_in_reference_list"],
        )


@dataclass(frozen=True)
class Classification:
    """One labelling act, machine or human."""

    label: Label
    origin: Origin
    decided_at: dt.datetime
    reviewer: str | None = None
    rule_fired: str | None = None

    def __post_init__(self) -> None:
        if (self.origin is Origin.MANUAL) != (self.reviewer is not None):
            raise ValueError("reviewer present exactly when origin is Manual")
        if (self.origin is Origin.AUTOMATIC) != (self.rule_fired is not None):
            raise ValueError("rule_fired present exactly when origin is Automatic")

    @classmethod
    def automatic(cls, label: Label, rule_fired: str, decided_at: dt.datetime | None = None) -> "Classification":
        return cls(
            label=label,
            origin=Origin.AUTOMATIC,
            decided_at=decided_at or dt.datetime.now(dt.timezone.utc),
            rule_fired=rule_fired,
        )

    @classmethod
    def manual(cls, label: Label, reviewer: str, decided_at: dt.datetime | None = None) -> "Classification":
        return cls(
            label=label,
            origin=Origin.MANUAL,
            decided_at=decided_at or dt.datetime.now(dt.timezone.utc),
            reviewer=reviewer,
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "origin": self.origin.value,
            "decided_at": self.decided_at.isoformat(),
            "reviewer": self.reviewer,
            "rule_fired": self.rule_fired,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Classification":
        return cls(
            label=Label(data["label"]),
            origin=Origin(data["origin"]),
            decided_at=dt.datetime.fromisoformat(data["decided_at"]),
            reviewer=data.get("reviewer"),
            rule_fired=data.get("rule_fired"),
        )


@dataclass(frozen=True)
class MatchCandidate:
    """One (citing article, reference, watchlist journal) hit.

    reference_position is the zero-based index into the article's reference
    list, or the "body-text" sentinel for a name matched outside it.
    """

    citing_article_id: str
    reference_position: int | str
    registry_id: str
    signals: EvidenceSignals
    auto_classification: Classification

    def __post_init__(self) -> None:
        if isinstance(self.reference_position, str) and self.reference_position != BODY_TEXT_POSITION:
            raise ValueError(f"bad reference position {self.reference_position!r}")
        if self.auto_classification.origin is not Origin.AUTOMATIC:
            raise ValueError("candidate classification must be automatic")

    def to_dict(self) -> dict:
        return {
            "citing_article_id": self.citing_article_id,
            "reference_position": self.reference_position,
            "registry_id": self.registry_id,
            "signals": self.signals.to_dict(),
            "auto_classification": self.auto_classification.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MatchCandidate":
        return cls(
            citing_article_id=data["citing_article_id"],
            reference_position=data["reference_position"],
            registry_id=data["registry_id"],
            signals=EvidenceSignals.from_dict(data["signals"]),
            auto_classification=Classification.from_dict(data["auto_classification"]),
        )


def find_candidates(
    record: ReferenceRecord,
    registry: Iterable[HijackedJournalRecord],
    threshold: float = DEFAULT_THRESHOLD,
) -> list[tuple[str, float]]:
    """Watchlist journals whose name the reference's container title matches.

    Best similarity per journal across its canonical title and variants;
    kept iff >= threshold. Sorted by similarity descending, ties by journal
    id ascending; one row per journal.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside (0, 1]")
    container = record.container_title or ""
    hits: list[tuple[str, float]] = []
    for journal in registry:
        best = max(similarity(container, name) for name in journal.search_names())
        if best >= threshold:
            hits.append((journal.id, best))
    hits.sort(key=lambda item: (-item[1], item[0]))
    return hits


def _url_host(url: str) -> str | None:
    from urllib.parse import urlsplit

    target = url if "://" in url else "//" + url
    host = urlsplit(target).hostname
    if not host:
        return None
    host = host.lower()
    return host[4:] if host.startswith("www.") else host


def _domain_matches(host: str, domains: Iterable[str]) -> bool:
    for domain in domains:
        domain = domain.lower()
        if host == domain or host.endswith("." + domain):
            return True
    return False


def _classify_url(url: str | None, journal: HijackedJournalRecord) -> UrlDomain:
    if url is None:
        return UrlDomain.ABSENT
    host = _url_host(url)
    if host is None:
        return UrlDomain.OTHER
    if _domain_matches(host, journal.hijacked_domains):
        return UrlDomain.HIJACKED
    if _domain_matches(host, journal.legit_domains):
        return UrlDomain.LEGIT
    return UrlDomain.OTHER


def collect_evidence(
    record: ReferenceRecord,
    journal: HijackedJournalRecord,
    in_reference_list: bool,
    sim: float,
) -> EvidenceSignals:
    """Evidence for one reference judged against one watchlist journal."""
    canonical = record.issn.canonical if record.issn else None
    legit_issns = {issn.canonical for issn in journal.legit_issns}
    hijacked_issns = {issn.canonical for issn in journal.hijacked_issns}
    issn_legit = canonical is not None and canonical in legit_issns
    issn_hijacked_only = canonical is not None and canonical in hijacked_issns and canonical not in legit_issns

    if record.doi is None:
        doi_legit = TriState.UNKNOWN
    elif doi_prefix(record.doi) in journal.legit_doi_prefixes:
        doi_legit = TriState.YES
    else:
        doi_legit = TriState.NO

    if record.year is None:
        in_window = TriState.UNKNOWN
    elif record.year >= journal.hijack_first_seen.year:
        in_window = TriState.YES
    else:
        in_window = TriState.NO

    return EvidenceSignals(
        title_similarity=sim,
        issn_matches_legit=issn_legit,
        issn_matches_hijacked_only=issn_hijacked_only,
        doi_prefix_is_legit=doi_legit,
        url_domain=_classify_url(record.url, journal),
        year_in_hijack_window=in_window,
        matched_in_reference_list=in_reference_list,
    )


def body_text_signals(sim: float = 1.0) -> EvidenceSignals:
    """Signals for a name seen in body text only: nothing to inspect beyond
    the match itself."""
    return EvidenceSignals(
        title_similarity=sim,
        issn_matches_legit=False,
        issn_matches_hijacked_only=False,
        doi_prefix_is_legit=TriState.UNKNOWN,
        url_domain=UrlDomain.ABSENT,
        year_in_hijack_window=TriState.UNKNOWN,
        matched_in_reference_list=False,
    )


def auto_classify(signals: EvidenceSignals, decided_at: dt.datetime | None = None) -> Classification:
    """Apply the rule chain; the first matching rule wins and is recorded.

    R1  not in a reference list             -> Mention
    R2  ISSN is hijacked-only               -> TruePositive
    R3  URL on a hijacked domain            -> TruePositive
    R4  DOI under the journal's own prefix  -> FalsePositive
    R5  URL on the journal's own domain     -> FalsePositive
    R6  cited year predates the hijacking   -> FalsePositive
    R7  everything else                     -> Undecided
    """
    if not signals.matched_in_reference_list:
        label, rule = Label.MENTION, "R1"
    elif signals.issn_matches_hijacked_only:
        label, rule = Label.TRUE_POSITIVE, "R2"
    elif signals.url_domain is UrlDomain.HIJACKED:
        label, rule = Label.TRUE_POSITIVE, "R3"
    elif signals.doi_prefix_is_legit is TriState.YES:
        label, rule = Label.FALSE_POSITIVE, "R4"
    elif signals.url_domain is UrlDomain.LEGIT:
        label, rule = Label.FALSE_POSITIVE, "R5"
    elif signals.year_in_hijack_window is TriState.NO:
        label, rule = Label.FALSE_POSITIVE, "R6"
    else:
        label, rule = Label.UNDECIDED, "R7"
    return Classification.automatic(label, rule, decided_at)
