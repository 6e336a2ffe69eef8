from __future__ import annotations

import json
from pathlib import Path

import pytest

from citescreen.harvester import DateWindow, local_corpus_client
from citescreen.ledger import Ledger
from citescreen.registry import load_register, load_registry
from citescreen.screener import ScreeningConfig, run_screening

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def manifest() -> dict:
    return json.loads((FIXTURES / "manifest.json").read_text(encoding="utf-8"))


@pytest.fixture()
def registry():
    with (FIXTURES / "registry.csv").open("rb") as handle:
        return load_registry(handle)


@pytest.fixture()
def register():
    with (FIXTURES / "register.csv").open("rb") as handle:
        return load_register(handle)


@pytest.fixture()
def corpus_client():
    return local_corpus_client(FIXTURES / "corpus")


def run_toy_pipeline(ledger_path: Path, manifest: dict) -> tuple[Ledger, ScreeningConfig]:
    """Screen the bundled corpus into ``ledger_path``; reusable for re-runs."""
    with (FIXTURES / "registry.csv").open("rb") as handle:
        registry = load_registry(handle)
    with (FIXTURES / "register.csv").open("rb") as handle:
        register = load_register(handle)
    config = ScreeningConfig(
        registry=registry,
        register=register,
        client=local_corpus_client(FIXTURES / "corpus"),
        window=DateWindow.from_iso(manifest["window"]["start"], manifest["window"]["end"]),
        ledger=Ledger(ledger_path),
        threshold=manifest["threshold"],
    )
    run_screening(config)
    return config.ledger, config


@pytest.fixture()
def toy_ledger(tmp_path, manifest) -> Ledger:
    ledger, _config = run_toy_pipeline(tmp_path / "ledger.jsonl", manifest)
    return ledger
