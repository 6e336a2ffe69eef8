"""Generate the synthetic full-scale ledger fixture.

Shape: 1,421 retrieved articles in the 2021-01-01..2022-01-31 window, 828 of
them with a current TruePositive entry, spread over 67 publishers (top ten
with distinct counts summing to 600, the remaining 57 with 4 each). Output
is deterministic: fixed timestamps, fixed ordering.

Usage: python3 scripts/make_fullscale_fixture.py --out PATH
"""

from __future__ import annotations

import argparse
import datetime as dt
from pathlib import Path

from citescreen.harvester import CitingArticle
from citescreen.ledger import Ledger
from citescreen.matcher import (
    EvidenceSignals,
    MatchCandidate,
    TriState,
    UrlDomain,
    auto_classify,
)
from citescreen.refparse import ReferenceRecord

WINDOW_START = dt.date(2021, 1, 1)
WINDOW_END = dt.date(2022, 1, 31)
WINDOW_DAYS = (WINDOW_END - WINDOW_START).days + 1

TOTAL_ARTICLES = 1421
CITEJACKED = 828
TOP_TEN_COUNTS = [100, 90, 80, 70, 60, 50, 45, 40, 35, 30]
TAIL_PUBLISHERS = 57
TAIL_COUNT = 4

DECIDED_AT = dt.datetime(2022, 2, 1, tzinfo=dt.timezone.utc)
REGISTRY_ID = "hj-synthetic"
REGISTRY_TITLE = "Synthetic Hijacked Journal"


def _signals(kind: str) -> EvidenceSignals:
    base = dict(
        title_similarity=1.0,
        issn_matches_legit=False,
        issn_matches_hijacked_only=False,
        doi_prefix_is_legit=TriState.UNKNOWN,
        url_domain=UrlDomain.ABSENT,
        year_in_hijack_window=TriState.UNKNOWN,
        matched_in_reference_list=True,
    )
    if kind == "TruePositive":
        base["issn_matches_hijacked_only"] = True
    elif kind == "FalsePositive":
        base["year_in_hijack_window"] = TriState.NO
    elif kind == "Mention":
        base["matched_in_reference_list"] = False
    elif kind != "Undecided":
        raise ValueError(kind)
    return EvidenceSignals(**base)


def _publisher_sequence() -> list[str]:
    """One publisher name per citejacked article, 828 in total."""
    names: list[str] = []
    for rank, count in enumerate(TOP_TEN_COUNTS, start=1):
        names.extend([f"Publisher {rank:02d}"] * count)
    for rank in range(11, 11 + TAIL_PUBLISHERS):
        names.extend([f"Publisher {rank:02d}"] * TAIL_COUNT)
    assert len(names) == CITEJACKED
    return names


def build_ledger(path: Path) -> None:
    if path.exists():
        path.unlink()
    ledger = Ledger(path)
    citejacked_publishers = _publisher_sequence()
    other_labels = ["FalsePositive", "Mention", "Undecided"]

    for index in range(TOTAL_ARTICLES):
        published = WINDOW_START + dt.timedelta(days=index % WINDOW_DAYS)
        if index < CITEJACKED:
            kind = "TruePositive"
            publisher = citejacked_publishers[index]
        else:
            kind = other_labels[index % len(other_labels)]
            publisher = f"Publisher {(index % 10) + 1:02d}"
        article = CitingArticle(
            id=f"10.9999/synth.{index:04d}",
            title=f"Synthetic citing article {index:04d}",
            venue_title=f"Synthetic Venue {index % 40:02d}",
            venue_issns=(),
            publisher=publisher,
            published_on=published,
            source="synthetic",
        )
        signals = _signals(kind)
        position: int | str = "body-text" if kind == "Mention" else 0
        reference = None
        if position == 0:
            reference = ReferenceRecord(
                raw=f"Author {index:04d}. Synthetic cited work. {REGISTRY_TITLE} 1(1), 2021.",
                position=0,
                container_title=REGISTRY_TITLE,
                year=2021,
            )
        candidate = MatchCandidate(
            citing_article_id=article.id,
            reference_position=position,
            registry_id=REGISTRY_ID,
            signals=signals,
            auto_classification=auto_classify(signals, decided_at=DECIDED_AT),
        )
        ledger.add_candidate(candidate, article, reference, REGISTRY_TITLE)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, type=Path, help="ledger JSONL path to write")
    args = parser.parse_args(argv)
    build_ledger(args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
