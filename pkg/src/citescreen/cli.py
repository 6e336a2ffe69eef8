"""Command-line entry points: screen, report, decide, serve."""

from __future__ import annotations

import argparse
import datetime as dt
import os
import sys
from pathlib import Path

from .errors import CitescreenError
from .harvester import DateWindow, local_corpus_client
from .ledger import Ledger
from .matcher import Label
from .registry import load_register, load_registry
from .screener import (
    HarvestFailed,
    ScreeningConfig,
    compute_stats,
    derive_window,
    render_report,
    run_screening,
)

LEDGER_ENV_VAR = "SCREENER_LEDGER"


def _iso_date(value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {value!r}") from None


def _default_ledger() -> str:
    return os.environ.get(LEDGER_ENV_VAR, "ledger.jsonl")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="citescreen", description="Screen citations for hijacked journals.")
    sub = parser.add_subparsers(dest="command", required=True)

    screen = sub.add_parser("screen", help="run the screening pipeline and append to the ledger")
    screen.add_argument("--registry", required=True, type=Path, help="hijacked-journal registry CSV")
    screen.add_argument("--register", required=True, type=Path, help="venue whitelist CSV")
    source = screen.add_mutually_exclusive_group(required=True)
    source.add_argument("--corpus", type=Path, help="directory of local JSON article documents")
    source.add_argument("--api-url", help="base URL of a remote search API")
    screen.add_argument("--from", dest="from_date", required=True, type=_iso_date, metavar="DATE")
    screen.add_argument("--to", dest="to_date", required=True, type=_iso_date, metavar="DATE")
    screen.add_argument("--threshold", type=float, default=0.90, help="title similarity threshold (default 0.90)")
    screen.add_argument("--ledger", type=Path, default=None, help=f"ledger path (default ${LEDGER_ENV_VAR} or ledger.jsonl)")

    report = sub.add_parser("report", help="print statistics from the ledger")
    report.add_argument("--ledger", type=Path, default=None)
    report.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    report.add_argument("--top", type=int, default=10, help="publisher rows to list (default 10)")
    report.add_argument("--from", dest="from_date", type=_iso_date, metavar="DATE", help="window start (default: ledger extent)")
    report.add_argument("--to", dest="to_date", type=_iso_date, metavar="DATE", help="window end (default: ledger extent)")

    decide = sub.add_parser("decide", help="record a manual decision")
    decide.add_argument("--ledger", type=Path, default=None)
    decide.add_argument("--entry", required=True, help="entry id")
    decide.add_argument("--label", required=True, help="TruePositive | FalsePositive | Mention")
    decide.add_argument("--reviewer", required=True)

    serve = sub.add_parser("serve", help="run the review HTTP service")
    serve.add_argument("--ledger", type=Path, default=None)
    serve.add_argument("--bind", default="127.0.0.1:8000", metavar="ADDR:PORT")
    serve.add_argument("--ui-dir", type=Path, default=None, help="static directory for the review UI")

    return parser


def _open_ledger(path: Path | None) -> Ledger:
    return Ledger(path if path is not None else Path(_default_ledger()))


def _resolve_window(ledger: Ledger, from_date: dt.date | None, to_date: dt.date | None) -> DateWindow:
    if from_date and to_date:
        return DateWindow(from_date, to_date)
    if from_date or to_date:
        raise CitescreenError("--from and --to must be given together")
    window = derive_window(ledger)
    if window is None:
        today = dt.date.today()
        window = DateWindow(today, today)
    return window


def cmd_screen(args: argparse.Namespace) -> int:
    with args.registry.open("rb") as handle:
        registry = load_registry(handle)
    with args.register.open("rb") as handle:
        register = load_register(handle)
    if args.corpus is not None:
        client = local_corpus_client(args.corpus)
    else:
        from .harvester import RemoteClient

        client = RemoteClient(args.api_url)
    ledger = _open_ledger(args.ledger)
    config = ScreeningConfig(
        registry=registry,
        register=register,
        client=client,
        window=DateWindow(args.from_date, args.to_date),
        ledger=ledger,
        threshold=args.threshold,
    )
    try:
        stats = run_screening(config)
    except HarvestFailed as exc:
        stats = compute_stats(ledger, config.window)
        sys.stdout.write(render_report(stats))
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stdout.write(render_report(stats))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    ledger = _open_ledger(args.ledger)
    window = _resolve_window(ledger, args.from_date, args.to_date)
    stats = compute_stats(ledger, window)
    sys.stdout.write(render_report(stats, fmt=args.format, top=args.top))
    return 0


def cmd_decide(args: argparse.Namespace) -> int:
    ledger = _open_ledger(args.ledger)
    try:
        label = Label(args.label)
    except ValueError:
        sys.stderr.write(f"error: unknown label {args.label!r}\n")
        return 1
    entry = ledger.record_decision(args.entry, label, args.reviewer)
    sys.stdout.write(f"{entry.entry_id} -> {entry.current_label.value}\n")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    ledger = _open_ledger(args.ledger)
    addr, _, port_text = args.bind.rpartition(":")
    if not addr or not port_text.isdigit():
        sys.stderr.write(f"error: --bind must be ADDR:PORT, got {args.bind!r}\n")
        return 1
    app = create_app(ledger, ui_dir=args.ui_dir)
    try:
        uvicorn.run(app, host=addr, port=int(port_text), log_level="warning")
    except OSError as exc:
        sys.stderr.write(f"error: cannot bind {args.bind}: {exc}\n")
        return 1
    return 0


_COMMANDS = {
    "screen": cmd_screen,
    "report": cmd_report,
    "decide": cmd_decide,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CitescreenError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
