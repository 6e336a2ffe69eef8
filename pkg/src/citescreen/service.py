"""HTTP review service: JSON API over the ledger plus static UI hosting.

All endpoints are read-only except POST /api/decisions, which funnels into
the ledger's single-writer append path. Error bodies are always
``{"error": code, "message": text}``.
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .harvester import DateWindow
from .ledger import Ledger, UnknownEntry
from .matcher import Label
from .screener import compute_stats, derive_window


class DecisionRequest(BaseModel):
    entry_id: str
    label: str
    reviewer: str


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def _parse_date(value: str, name: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise ValueError(f"{name} must be an ISO date, got {value!r}") from None


def create_app(ledger: Ledger, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="citescreen review service", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error(422, "invalid_request", str(exc.errors()))

    @app.get("/api/queue")
    def get_queue(limit: int | None = None):
        entries = ledger.queue()
        total = len(entries)
        if limit is not None:
            if limit < 0:
                return _error(422, "invalid_request", "limit must be non-negative")
            entries = entries[:limit]
        return {"items": [entry.to_view() for entry in entries], "total": total}

    @app.get("/api/entries/{entry_id}")
    def get_entry(entry_id: str):
        try:
            return ledger.get(entry_id).to_view()
        except UnknownEntry as exc:
            return _error(404, "unknown_entry", str(exc))

    @app.post("/api/decisions")
    def post_decision(body: DecisionRequest):
        try:
            label = Label(body.label)
        except ValueError:
            return _error(422, "invalid_label", f"unknown label {body.label!r}")
        if label is Label.UNDECIDED:
            return _error(422, "invalid_label", "Undecided cannot be assigned manually")
        if not body.reviewer.strip():
            return _error(422, "invalid_reviewer", "reviewer must be nonempty")
        try:
            entry = ledger.record_decision(body.entry_id, label, body.reviewer)
        except UnknownEntry as exc:
            return _error(404, "unknown_entry", str(exc))
        return entry.to_view()

    @app.get("/api/stats")
    def get_stats(request: Request):
        params = request.query_params
        try:
            if "from" in params and "to" in params:
                window = DateWindow(_parse_date(params["from"], "from"), _parse_date(params["to"], "to"))
            elif "from" in params or "to" in params:
                raise ValueError("from and to must be given together")
            else:
                window = derive_window(ledger)
                if window is None:
                    today = dt.date.today()
                    window = DateWindow(today, today)
        except ValueError as exc:
            return _error(422, "invalid_request", str(exc))
        return compute_stats(ledger, window).to_dict()

    @app.get("/api/publishers")
    def get_publishers(top: int = 10):
        if top < 0:
            return _error(422, "invalid_request", "top must be non-negative")
        window = derive_window(ledger)
        if window is None:
            return {"publishers": [], "distinct_publishers": 0, "citejacked_articles": 0}
        stats = compute_stats(ledger, window)
        return {
            "publishers": [
                {"publisher": row.publisher, "citejacked": row.citejacked, "share": row.share}
                for row in stats.publishers[:top]
            ],
            "distinct_publishers": stats.distinct_publishers,
            "citejacked_articles": stats.citejacked_articles,
        }

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def root():
            return {"service": "citescreen", "queue": len(ledger.queue())}

    return app
