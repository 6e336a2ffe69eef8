"""Retrieval of citing-article candidates from a local corpus or a remote API.

Both clients expose the same contract: ``search(query, window)`` yields
article metadata and ``references(article_id)`` returns the parsed reference
list. The local client reads one JSON document per article from a directory;
the remote client speaks a thin generic HTTP+JSON search schema with cursor
pagination, shared rate limiting and capped exponential backoff.
"""

from __future__ import annotations

import datetime as dt
import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Protocol

from .errors import CitescreenError
from .refparse import ReferenceRecord, parse_reference, parse_structured_reference
from .registry import Issn, IssnError, RegisterIndex, validate_issn

TOKEN_ENV_VAR = "SCREENER_API_TOKEN"
DEFAULT_MAX_ATTEMPTS = 4


class SourceUnavailable(CitescreenError):
    """Network or auth failure that retries could not recover."""


class QuotaExceeded(CitescreenError):
    """The source kept refusing requests for rate reasons."""


class MalformedResponse(CitescreenError):
    """Undecodable payload; carries an excerpt of the raw body."""

    def __init__(self, message: str, excerpt: str = "") -> None:
        super().__init__(f"{message}: {excerpt[:200]!r}" if excerpt else message)
        self.excerpt = excerpt[:200]


class NotFound(CitescreenError):
    pass


class CorpusUnreadable(CitescreenError):
    pass


@dataclass(frozen=True)
class CitingArticle:
    """Metadata of one article that may cite a watchlist journal."""

    id: str
    title: str
    venue_title: str
    venue_issns: tuple[Issn, ...]
    publisher: str
    published_on: dt.date
    source: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("article id must be nonempty")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "venue_title": self.venue_title,
            "venue_issns": [issn.canonical for issn in self.venue_issns],
            "publisher": self.publisher,
            "published_on": self.published_on.isoformat(),
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CitingArticle":
        return cls(
            id=data["id"],
            title=data.get("title", ""),
            venue_title=data.get("venue_title", ""),
            venue_issns=tuple(validate_issn(raw) for raw in data.get("venue_issns", [])),
            publisher=data.get("publisher", ""),
            published_on=dt.date.fromisoformat(data["published_on"]),
            source=data.get("source", ""),
        )


@dataclass(frozen=True)
class DateWindow:
    """Inclusive date range."""

    start: dt.date
    end: dt.date

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"window start {self.start} after end {self.end}")

    def contains(self, day: dt.date) -> bool:
        return self.start <= day <= self.end

    @property
    def days(self) -> int:
        return (self.end - self.start).days + 1

    @classmethod
    def from_iso(cls, start: str, end: str) -> "DateWindow":
        return cls(dt.date.fromisoformat(start), dt.date.fromisoformat(end))


class Client(Protocol):
    def search(self, query: str, window: DateWindow) -> Iterator[CitingArticle]: ...

    def references(self, article_id: str) -> list[ReferenceRecord]: ...


def _parse_references(items: Iterable, origin: str) -> list[ReferenceRecord]:
    records = []
    for position, item in enumerate(items):
        if isinstance(item, str):
            records.append(parse_reference(item, position))
        elif isinstance(item, dict):
            records.append(parse_structured_reference(item, position))
        else:
            raise MalformedResponse(f"{origin}: reference {position} is neither string nor map")
    return records


def _parse_document(doc: dict, origin: str, source: str) -> tuple[CitingArticle, str, list[ReferenceRecord]]:
    """Shared corpus/remote document decoder: (article, body text, references)."""
    if not isinstance(doc, dict):
        raise MalformedResponse(f"{origin}: document is not a JSON object")
    article_id = str(doc.get("id") or "").strip()
    if not article_id:
        raise MalformedResponse(f"{origin}: missing id")
    try:
        published = dt.date.fromisoformat(str(doc.get("published_on", "")))
    except ValueError:
        raise MalformedResponse(f"{origin}: bad published_on {doc.get('published_on')!r}") from None
    issns = []
    for raw in doc.get("venue_issns", []) or []:
        try:
            issns.append(validate_issn(str(raw)))
        except IssnError as exc:
            raise MalformedResponse(f"{origin}: bad venue ISSN {raw!r}: {exc}") from exc
    article = CitingArticle(
        id=article_id,
        title=str(doc.get("title", "")),
        venue_title=str(doc.get("venue_title", "")),
        venue_issns=tuple(issns),
        publisher=str(doc.get("publisher", "")),
        published_on=published,
        source=source,
    )
    references = _parse_references(doc.get("references", []) or [], origin)
    return article, str(doc.get("body_text", "")), references


class LocalCorpusClient:
    """Search/fetch over a directory of per-article JSON documents.

    Full-text matching is exact case-insensitive substring over the body
    text and raw reference strings (a stand-in for a real search backend).
    All documents are validated up front; order is stable (by file name).
    """

    def __init__(self, root: Path | str) -> None:
        root = Path(root)
        if not root.is_dir():
            raise CorpusUnreadable(f"not a directory: {root}")
        self.source = f"local:{root.name}"
        self._articles: dict[str, CitingArticle] = {}
        self._haystacks: dict[str, str] = {}
        self._references: dict[str, list[ReferenceRecord]] = {}
        for path in sorted(root.glob("*.json")):
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                article, body, refs = _parse_document(doc, origin=path.name, source=self.source)
            except (json.JSONDecodeError, CitescreenError, OSError) as exc:
                raise CorpusUnreadable(f"{path.name}: {exc}") from exc
            if article.id in self._articles:
                raise CorpusUnreadable(f"{path.name}: duplicate article id {article.id!r}")
            self._articles[article.id] = article
            haystack = "\n".join([body, *(ref.raw for ref in refs)])
            self._haystacks[article.id] = haystack.lower()
            self._references[article.id] = refs

    def search(self, query: str, window: DateWindow) -> Iterator[CitingArticle]:
        needle = query.lower()
        for article_id, article in self._articles.items():
            if window.contains(article.published_on) and needle in self._haystacks[article_id]:
                yield article

    def references(self, article_id: str) -> list[ReferenceRecord]:
        if article_id not in self._references:
            raise NotFound(f"unknown article id {article_id!r}")
        return list(self._references[article_id])


def local_corpus_client(root: Path | str) -> LocalCorpusClient:
    """Build a client over a directory of JSON article documents."""
    return LocalCorpusClient(root)


class RateLimiter:
    """Serializes request slots so a shared client never exceeds ``rate`` per
    second. Clock and sleep are injectable for simulated-time tests."""

    def __init__(
        self,
        rate: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        if rate <= 0:
            raise ValueError("rate must be positive")
        self._interval = 1.0 / rate
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_slot: float | None = None

    def acquire(self) -> None:
        with self._lock:
            now = self._clock()
            if self._next_slot is None or now >= self._next_slot:
                self._next_slot = now + self._interval
                return
            wait = self._next_slot - now
            self._next_slot += self._interval
        self._sleep(wait)


class RemoteClient:
    """HTTP+JSON client for a generic scholarly-search backend.

    Wire contract: ``GET {base}/search?q=&from=&to=[&cursor=]`` returning
    ``{"items": [document...], "next_cursor": id-or-null}``, and
    ``GET {base}/articles/{id}`` returning one document. Documents use the
    same shape as local corpus files. Sends ``Authorization: Bearer`` when
    the token env var is set. Rate limiting is shared across threads;
    transient failures retry with capped exponential backoff.
    """

    def __init__(
        self,
        base_url: str,
        session=None,
        token: str | None = None,
        rate: float = 5.0,
        max_attempts: int = DEFAULT_MAX_ATTEMPTS,
        backoff_base: float = 0.5,
        backoff_cap: float = 8.0,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        timeout: float = 30.0,
    ) -> None:
        if session is None:
            import requests

            session = requests.Session()
        self._base = base_url.rstrip("/")
        self._session = session
        self._token = token
        self._limiter = RateLimiter(rate, clock=clock, sleep=sleep)
        self._max_attempts = max(1, max_attempts)
        self._backoff_base = backoff_base
        self._backoff_cap = backoff_cap
        self._sleep = sleep
        self._timeout = timeout
        self._reference_cache: dict[str, list[ReferenceRecord]] = {}
        self.source = f"remote:{self._base}"

    def _headers(self) -> dict[str, str]:
        import os

        token = self._token if self._token is not None else os.environ.get(TOKEN_ENV_VAR)
        return {"Authorization": f"Bearer {token}"} if token else {}

    def _get(self, path: str, params: dict[str, str]) -> dict:
        url = f"{self._base}{path}"
        last_error: Exception | None = None
        rate_limited = False
        for attempt in range(1, self._max_attempts + 1):
            self._limiter.acquire()
            try:
                response = self._session.get(url, params=params, headers=self._headers(), timeout=self._timeout)
            except Exception as exc:
                last_error = exc
                rate_limited = False
            else:
                status = response.status_code
                if status == 200:
                    try:
                        payload = response.json()
                    except ValueError as exc:
                        raise MalformedResponse(f"{path}: body is not JSON", excerpt=response.text) from exc
                    if not isinstance(payload, dict):
                        raise MalformedResponse(f"{path}: expected JSON object", excerpt=response.text)
                    return payload
                if status == 404:
                    raise NotFound(f"{path}: not found")
                if status in (401, 403):
                    raise SourceUnavailable(f"{path}: authorization rejected ({status})")
                if status != 429 and 400 <= status < 500:
                    raise SourceUnavailable(f"{path}: client error {status}")
                rate_limited = status == 429
                last_error = SourceUnavailable(f"{path}: server returned {status}")
            if attempt < self._max_attempts:
                self._sleep(min(self._backoff_base * 2 ** (attempt - 1), self._backoff_cap))
        if rate_limited:
            raise QuotaExceeded(f"{path}: still throttled after {self._max_attempts} attempts")
        raise SourceUnavailable(f"{path}: gave up after {self._max_attempts} attempts: {last_error}")

    def search(self, query: str, window: DateWindow) -> Iterator[CitingArticle]:
        cursor: str | None = None
        while True:
            params = {"q": query, "from": window.start.isoformat(), "to": window.end.isoformat()}
            if cursor:
                params["cursor"] = cursor
            payload = self._get("/search", params)
            items = payload.get("items")
            if not isinstance(items, list):
                raise MalformedResponse("/search: missing items list", excerpt=json.dumps(payload)[:200])
            for doc in items:
                article, _body, refs = _parse_document(doc, origin="/search item", source=self.source)
                if "references" in doc:
                    self._reference_cache[article.id] = refs
                yield article
            cursor = payload.get("next_cursor")
            if not cursor:
                return

    def references(self, article_id: str) -> list[ReferenceRecord]:
        cached = self._reference_cache.get(article_id)
        if cached is not None:
            return list(cached)
        payload = self._get(f"/articles/{article_id}", {})
        _article, _body, refs = _parse_document(payload, origin=f"/articles/{article_id}", source=self.source)
        self._reference_cache[article_id] = refs
        return list(refs)


def search_fulltext(client: Client, query: str, window: DateWindow) -> Iterator[CitingArticle]:
    """Stream every in-window article matching ``query``, deduplicated by id.

    Matching semantics belong to the client; the window bound is enforced
    here regardless.
    """
    if not query:
        raise ValueError("query must be nonempty")
    seen: set[str] = set()
    for article in client.search(query, window):
        if article.id in seen:
            continue
        seen.add(article.id)
        if window.contains(article.published_on):
            yield article


def filter_by_register(articles: Iterable[CitingArticle], register: RegisterIndex) -> Iterator[CitingArticle]:
    """Keep articles whose venue is listed in the register, by any venue ISSN
    or by normalized venue title. Order-preserving and idempotent."""
    for article in articles:
        if any(register.contains_issn(issn) for issn in article.venue_issns):
            yield article
        elif register.contains_title(article.venue_title):
            yield article


def fetch_references(client: Client, article_id: str) -> list[ReferenceRecord]:
    """The article's parsed reference list, in order, positions 0..n-1."""
    return client.references(article_id)
