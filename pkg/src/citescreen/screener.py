"""End-to-end screening pipeline and aggregate statistics.

For every watchlist journal name: full-text search, whitelist filter,
reference fetch, candidate matching, evidence collection, auto-
classification, ledger append. Statistics count citing articles (never
references): an article is citejacked when at least one of its entries
currently carries the TruePositive label.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import CitescreenError
from .harvester import (
    CitingArticle,
    Client,
    DateWindow,
    fetch_references,
    filter_by_register,
    search_fulltext,
)
from .ledger import Ledger
from .matcher import (
    BODY_TEXT_POSITION,
    DEFAULT_THRESHOLD,
    Label,
    MatchCandidate,
    auto_classify,
    body_text_signals,
    collect_evidence,
    find_candidates,
)
from .refparse import ReferenceRecord
from .registry import HijackedJournalRecord, RegisterIndex


class HarvestFailed(CitescreenError):
    """Raised after the run when some journals could not be harvested; the
    work for all other journals is already in the ledger."""

    def __init__(self, failures: dict[str, str]) -> None:
        summary = "; ".join(f"{journal}: {reason}" for journal, reason in sorted(failures.items()))
        super().__init__(f"harvest failed for {len(failures)} journal(s): {summary}")
        self.failures = dict(failures)


@dataclass
class ScreeningConfig:
    registry: list[HijackedJournalRecord]
    register: RegisterIndex
    client: Client
    window: DateWindow
    ledger: Ledger
    threshold: float = DEFAULT_THRESHOLD


@dataclass(frozen=True)
class PublisherRow:
    publisher: str
    citejacked: int
    share: float


@dataclass(frozen=True)
class ScreeningStats:
    """Aggregates over the ledger for one date window.

    publishers rows cover every publisher with at least one citejacked
    article, sorted by count descending then name; label_counts breaks the
    current entry labels down so false positives and mentions stay
    separately inspectable.
    """

    window: DateWindow
    retrieved_articles: int
    citejacked_articles: int
    share: float
    publishers: tuple[PublisherRow, ...]
    distinct_publishers: int
    daily_average: float
    label_counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.citejacked_articles > self.retrieved_articles:
            raise ValueError("citejacked cannot exceed retrieved")
        if not 0.0 <= self.share <= 1.0:
            raise ValueError(f"share {self.share} outside [0, 1]")

    def to_dict(self) -> dict:
        return {
            "window": {"start": self.window.start.isoformat(), "end": self.window.end.isoformat()},
            "retrieved_articles": self.retrieved_articles,
            "citejacked_articles": self.citejacked_articles,
            "share": self.share,
            "publishers": [
                {"publisher": row.publisher, "citejacked": row.citejacked, "share": row.share}
                for row in self.publishers
            ],
            "distinct_publishers": self.distinct_publishers,
            "daily_average": self.daily_average,
            "label_counts": dict(self.label_counts),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScreeningStats":
        return cls(
            window=DateWindow.from_iso(data["window"]["start"], data["window"]["end"]),
            retrieved_articles=data["retrieved_articles"],
            citejacked_articles=data["citejacked_articles"],
            share=data["share"],
            publishers=tuple(
                PublisherRow(row["publisher"], row["citejacked"], row["share"]) for row in data["publishers"]
            ),
            distinct_publishers=data["distinct_publishers"],
            daily_average=data["daily_average"],
            label_counts=dict(data.get("label_counts", {})),
        )


def run_screening(config: ScreeningConfig) -> ScreeningStats:
    """Run the whole pipeline and return stats over the resulting ledger.

    A failure while harvesting one journal does not abort the others; if any
    journal failed, HarvestFailed summarizes them after everything else has
    been recorded. Existing ledger entries are never duplicated, so re-runs
    over an unchanged corpus append nothing.
    """
    by_id = {journal.id: journal for journal in config.registry}
    retrieved: dict[str, CitingArticle] = {}
    references: dict[str, list[ReferenceRecord]] = {}
    matched_for: dict[str, set[str]] = {}
    failures: dict[str, str] = {}

    for journal in config.registry:
        try:
            for name in journal.search_names():
                stream = search_fulltext(config.client, name, config.window)
                for article in filter_by_register(stream, config.register):
                    if article.id not in retrieved:
                        references[article.id] = fetch_references(config.client, article.id)
                        retrieved[article.id] = article
                    matched_for.setdefault(article.id, set()).add(journal.id)
        except CitescreenError as exc:
            failures[journal.id] = str(exc)

    for article_id, article in retrieved.items():
        covered: set[str] = set()
        for reference in references[article_id]:
            for registry_id, sim in find_candidates(reference, config.registry, config.threshold):
                journal = by_id[registry_id]
                signals = collect_evidence(reference, journal, True, sim)
                candidate = MatchCandidate(
                    citing_article_id=article_id,
                    reference_position=reference.position,
                    registry_id=registry_id,
                    signals=signals,
                    auto_classification=auto_classify(signals),
                )
                config.ledger.add_candidate(candidate, article, reference, journal.canonical_title)
                covered.add(registry_id)
        for registry_id in sorted(matched_for.get(article_id, set()) - covered):
            signals = body_text_signals()
            candidate = MatchCandidate(
                citing_article_id=article_id,
                reference_position=BODY_TEXT_POSITION,
                registry_id=registry_id,
                signals=signals,
                auto_classification=auto_classify(signals),
            )
            config.ledger.add_candidate(candidate, article, None, by_id[registry_id].canonical_title)

    if failures:
        raise HarvestFailed(failures)
    return compute_stats(config.ledger, config.window)


def compute_stats(ledger: Ledger, window: DateWindow) -> ScreeningStats:
    """Statistics over ledger entries whose citing article falls in the window."""
    articles: dict[str, CitingArticle] = {}
    citejacked: set[str] = set()
    label_counts: dict[str, int] = {label.value: 0 for label in Label}
    for entry in ledger.entries():
        if not window.contains(entry.article.published_on):
            continue
        articles[entry.article.id] = entry.article
        label = entry.current_label
        label_counts[label.value] += 1
        if label is Label.TRUE_POSITIVE:
            citejacked.add(entry.article.id)

    per_publisher: dict[str, int] = {}
    for article_id in citejacked:
        publisher = articles[article_id].publisher
        per_publisher[publisher] = per_publisher.get(publisher, 0) + 1
    total = len(citejacked)
    rows = tuple(
        PublisherRow(publisher=name, citejacked=count, share=count / total)
        for name, count in sorted(per_publisher.items(), key=lambda item: (-item[1], item[0]))
    )

    retrieved = len(articles)
    return ScreeningStats(
        window=window,
        retrieved_articles=retrieved,
        citejacked_articles=total,
        share=total / retrieved if retrieved else 0.0,
        publishers=rows,
        distinct_publishers=len(rows),
        daily_average=total / window.days,
        label_counts=label_counts,
    )


def derive_window(ledger: Ledger) -> DateWindow | None:
    """Smallest window covering every article in the ledger; None when empty."""
    dates = [entry.article.published_on for entry in ledger.entries()]
    if not dates:
        return None
    return DateWindow(min(dates), max(dates))


def format_percent(share: float) -> str:
    """One decimal place, dot separator, e.g. 0.5827 -> "58.3%"."""
    return f"{share * 100:.1f}%"


def render_report(stats: ScreeningStats, fmt: str = "plain", top: int = 10) -> str:
    """Render stats as a plain table, CSV, or JSON mirroring the stats fields."""
    if fmt == "json":
        return json.dumps(stats.to_dict(), ensure_ascii=False, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["publisher", "citejacked", "share"])
        for row in stats.publishers[:top]:
            writer.writerow([row.publisher, row.citejacked, format_percent(row.share)])
        writer.writerow([])
        writer.writerow(["retrieved", stats.retrieved_articles, ""])
        writer.writerow(["citejacked", stats.citejacked_articles, format_percent(stats.share)])
        writer.writerow(["daily_average", f"{stats.daily_average:.2f}", ""])
        return buffer.getvalue()
    if fmt != "plain":
        raise ValueError(f"unknown format {fmt!r}")

    lines = [
        f"window: {stats.window.start.isoformat()} .. {stats.window.end.isoformat()} ({stats.window.days} days)",
        f"retrieved articles: {stats.retrieved_articles}",
        f"citejacked articles: {stats.citejacked_articles} ({format_percent(stats.share)})",
        f"daily average: {stats.daily_average:.2f}",
        f"distinct publishers: {stats.distinct_publishers}",
        "",
    ]
    shown = stats.publishers[:top]
    if shown:
        width = max(len(row.publisher) for row in shown)
        lines.append(f"top {len(shown)} publishers by citejacked articles:")
        for row in shown:
            lines.append(f"  {row.publisher.ljust(width)}  {row.citejacked:>5}  {format_percent(row.share):>7}")
    else:
        lines.append("no citejacked articles; publisher table is empty")
    counts = ", ".join(f"{name}: {count}" for name, count in sorted(stats.label_counts.items()))
    lines.append("")
    lines.append(f"entry labels: {counts}")
    return "\n".join(lines) + "\n"
