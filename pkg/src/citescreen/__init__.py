"""citescreen: screening pipeline and review service for citations to
hijacked journals."""

from .errors import CitescreenError
from .harvester import CitingArticle, DateWindow, local_corpus_client
from .ledger import Ledger, LedgerEntry, make_entry_id
from .matcher import Label, auto_classify, normalize_title, similarity
from .registry import Issn, load_register, load_registry, validate_issn
from .screener import ScreeningConfig, ScreeningStats, compute_stats, render_report, run_screening

__all__ = [
    "CitescreenError",
    "CitingArticle",
    "DateWindow",
    "Issn",
    "Label",
    "Ledger",
    "LedgerEntry",
    "ScreeningConfig",
    "ScreeningStats",
    "auto_classify",
    "compute_stats",
    "local_corpus_client",
    "load_register",
    "load_registry",
    "make_entry_id",
    "normalize_title",
    "render_report",
    "run_screening",
    "similarity",
    "validate_issn",
]

__version__ = "0.1.0"
