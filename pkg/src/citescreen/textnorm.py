"""Journal-title normalization shared by the register index and the matcher."""

from __future__ import annotations

import re
import unicodedata

_LEADING_ARTICLES = {"the", "a", "an"}
_NON_ALNUM = re.compile(r"[^0-9a-z]+")


def normalize_title(title: str) -> str:
    """Canonical lowercase form of a journal title for exact and fuzzy comparison.

    Applied in order: Unicode compatibility decomposition, case folding,
    diacritic stripping, punctuation to spaces, whitespace collapse, and
    removal of leading article words. A "journal of ..." prefix is kept:
    it distinguishes otherwise similar titles.
    """
    text = unicodedata.normalize("NFKD", title).casefold()
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = _NON_ALNUM.sub(" ", text).strip()
    tokens = text.split()
    while tokens and tokens[0] in _LEADING_ARTICLES:
        tokens = tokens[1:]
    return " ".join(tokens)
