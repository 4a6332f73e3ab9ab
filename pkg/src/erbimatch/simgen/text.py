"""Text normalization and n-gram extraction.

Two gram units exist.  Character grams slide over the NFC-normalized text
with whitespace runs collapsed and marked as ``_`` (case is preserved, so
"Joe Biden" yields Joe / oe_ / e_B / _Bi / Bid / ide / den for n=3).  Token
grams slide over casefolded whitespace tokens and are space-joined.
"""

from __future__ import annotations

import enum
import re
import unicodedata

__all__ = ["GramUnit", "extract_ngrams", "normalize_characters", "tokenize"]

_WHITESPACE = re.compile(r"\s+")


class GramUnit(enum.Enum):
    CHARACTER = "character"
    TOKEN = "token"


def normalize_characters(text: str) -> str:
    """NFC, collapse whitespace runs, strip, and mark spaces as ``_``."""
    text = unicodedata.normalize("NFC", text)
    text = _WHITESPACE.sub(" ", text).strip()
    return text.replace(" ", "_")


def tokenize(text: str) -> list[str]:
    """NFC + casefold + whitespace split."""
    text = unicodedata.normalize("NFC", text).casefold()
    return [t for t in _WHITESPACE.split(text) if t]


def extract_ngrams(text: str, unit: GramUnit, n: int) -> list[str]:
    """Ordered n-grams of ``text``; empty when the text is too short."""
    if n < 1:
        raise ValueError("n-gram order must be >= 1")
    if unit is GramUnit.CHARACTER:
        chars = normalize_characters(text)
        return [chars[i:i + n] for i in range(len(chars) - n + 1)]
    tokens = tokenize(text)
    return [" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]
