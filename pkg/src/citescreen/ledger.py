"""Append-only JSONL ledger of match candidates and review decisions.

Two event kinds, one JSON object per line: CandidateAdded (a pipeline hit,
carrying full snapshots of the article, reference and signals) and
DecisionRecorded (a human label). Replaying the file from the start
reconstructs the exact in-memory state; entry ids are content-derived so
re-running the pipeline never duplicates work.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CitescreenError
from .harvester import CitingArticle
from .matcher import Classification, Label, MatchCandidate, Origin
from .refparse import ReferenceRecord


class UnknownEntry(CitescreenError):
    pass


class InvalidLabel(CitescreenError):
    pass


class LedgerCorrupt(CitescreenError):
    """The event file failed to replay cleanly; carries the offending line."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def make_entry_id(citing_article_id: str, reference_position: int | str, registry_id: str) -> str:
    """Deterministic entry id: SHA-256 over the identifying triple, joined
    with unit separators so field boundaries cannot collide."""
    key = f"{citing_article_id}\x1f{reference_position}\x1f{registry_id}"
    return hashlib.sha256(key.encode("utf-8")).hexdigest()


@dataclass
class LedgerEntry:
    """One candidate with its full adjudication history.

    history[0] is always the automatic classification; the current label is
    the label of the last history element.
    """

    entry_id: str
    candidate: MatchCandidate
    article: CitingArticle
    reference: ReferenceRecord | None
    registry_title: str
    history: list[Classification] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.history:
            self.history = [self.candidate.auto_classification]
        if self.history[0].origin is not Origin.AUTOMATIC:
            raise ValueError("history must start with the automatic classification")

    @property
    def current_label(self) -> Label:
        return self.history[-1].label

    def to_view(self) -> dict:
        """JSON shape served to the review UI."""
        auto = self.history[0]
        return {
            "entry_id": self.entry_id,
            "article": self.article.to_dict(),
            "registry_id": self.candidate.registry_id,
            "registry_title": self.registry_title,
            "reference_position": self.candidate.reference_position,
            "reference_raw": self.reference.raw if self.reference else None,
            "reference": self.reference.to_dict() if self.reference else None,
            "signals": self.candidate.signals.to_dict(),
            "rule_fired": auto.rule_fired,
            "current_label": self.current_label.value,
            "history": [item.to_dict() for item in self.history],
        }


class Ledger:
    """In-memory entry map backed by an append-only JSONL event file.

    All mutation goes through one lock: state update and file append happen
    together, so readers only ever observe fully recorded events.
    """

    def __init__(self, path: Path | str) -> None:
        self._path = Path(path)
        self._lock = threading.Lock()
        self._entries: dict[str, LedgerEntry] = {}
        if self._path.exists():
            self._replay()

    @property
    def path(self) -> Path:
        return self._path

    def _replay(self) -> None:
        with self._path.open("r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    event = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise LedgerCorrupt(line_no, f"not JSON: {exc}") from exc
                try:
                    self._apply(event)
                except (KeyError, ValueError, TypeError, CitescreenError) as exc:
                    raise LedgerCorrupt(line_no, str(exc)) from exc

    def _apply(self, event: dict) -> None:
        kind = event.get("event")
        if kind == "CandidateAdded":
            entry = LedgerEntry(
                entry_id=event["entry_id"],
                candidate=MatchCandidate.from_dict(event["candidate"]),
                article=CitingArticle.from_dict(event["article"]),
                reference=ReferenceRecord.from_dict(event["reference"]) if event.get("reference") else None,
                registry_title=event.get("registry_title", ""),
            )
            expected = make_entry_id(
                entry.candidate.citing_article_id,
                entry.candidate.reference_position,
                entry.candidate.registry_id,
            )
            if entry.entry_id != expected:
                raise ValueError(f"entry id {entry.entry_id} does not match its triple")
            if entry.entry_id in self._entries:
                raise ValueError(f"duplicate CandidateAdded for {entry.entry_id}")
            self._entries[entry.entry_id] = entry
        elif kind == "DecisionRecorded":
            entry = self._entries.get(event["entry_id"])
            if entry is None:
                raise ValueError(f"decision for unknown entry {event.get('entry_id')!r}")
            entry.history.append(Classification.from_dict(event["classification"]))
        else:
            raise ValueError(f"unknown event kind {kind!r}")

    def _append_event(self, event: dict) -> None:
        line = json.dumps(event, ensure_ascii=False, sort_keys=True)
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with self._path.open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")

    def add_candidate(
        self,
        candidate: MatchCandidate,
        article: CitingArticle,
        reference: ReferenceRecord | None,
        registry_title: str,
    ) -> LedgerEntry | None:
        """Record a new candidate; returns None when the triple is already
        present (idempotent re-runs append nothing)."""
        entry_id = make_entry_id(candidate.citing_article_id, candidate.reference_position, candidate.registry_id)
        with self._lock:
            if entry_id in self._entries:
                return None
            entry = LedgerEntry(
                entry_id=entry_id,
                candidate=candidate,
                article=article,
                reference=reference,
                registry_title=registry_title,
            )
            self._append_event(
                {
                    "event": "CandidateAdded",
                    "entry_id": entry_id,
                    "candidate": candidate.to_dict(),
                    "article": article.to_dict(),
                    "reference": reference.to_dict() if reference else None,
                    "registry_title": registry_title,
                }
            )
            self._entries[entry_id] = entry
            return entry

    def record_decision(
        self,
        entry_id: str,
        label: Label,
        reviewer: str,
        decided_at: dt.datetime | None = None,
    ) -> LedgerEntry:
        """Append a manual classification; the new label becomes current."""
        if label is Label.UNDECIDED:
            raise InvalidLabel("Undecided cannot be assigned manually; make a decision")
        if not isinstance(label, Label):
            raise InvalidLabel(f"unknown label {label!r}")
        if not reviewer or not reviewer.strip():
            raise InvalidLabel("reviewer must be nonempty")
        with self._lock:
            entry = self._entries.get(entry_id)
            if entry is None:
                raise UnknownEntry(f"no entry {entry_id!r}")
            classification = Classification.manual(label, reviewer.strip(), decided_at)
            self._append_event(
                {
                    "event": "DecisionRecorded",
                    "entry_id": entry_id,
                    "classification": classification.to_dict(),
                }
            )
            entry.history.append(classification)
            return entry

    def get(self, entry_id: str) -> LedgerEntry:
        entry = self._entries.get(entry_id)
        if entry is None:
            raise UnknownEntry(f"no entry {entry_id!r}")
        return entry

    def entries(self) -> list[LedgerEntry]:
        """All entries, oldest first."""
        return list(self._entries.values())

    def queue(self) -> list[LedgerEntry]:
        """Entries still awaiting a human decision, oldest first."""
        return [entry for entry in self._entries.values() if entry.current_label is Label.UNDECIDED]

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, entry_id: str) -> bool:
        return entry_id in self._entries
