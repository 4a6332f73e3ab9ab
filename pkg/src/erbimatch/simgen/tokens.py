"""Word-level similarity measures over token multisets.

Inputs are multisets (collections.Counter or any iterable of tokens).  The
set-based measures (jaccard, dice, overlap, monge_elkan) consider distinct
tokens; cosine, euclidean, block, simon_white and generalized_jaccard use
the multiplicities.  Conventions: two empty inputs compare as 1.0, one
empty input as 0.0.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable

__all__ = ["token_set_similarity", "TOKEN_MEASURES", "local_alignment_similarity"]


def _as_counter(tokens) -> Counter:
    if isinstance(tokens, Counter):
        return tokens
    return Counter(tokens)


def _empty_convention(a: Counter, b: Counter) -> float | None:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    return None


def _cosine(a: Counter, b: Counter) -> float:
    dot = sum(count * b[token] for token, count in a.items())
    norm = math.sqrt(sum(c * c for c in a.values())) * \
        math.sqrt(sum(c * c for c in b.values()))
    return dot / norm


def _euclidean(a: Counter, b: Counter) -> float:
    distance = math.sqrt(sum(
        (a[token] - b[token]) ** 2 for token in a.keys() | b.keys()
    ))
    return 1.0 / (1.0 + distance)


def _block(a: Counter, b: Counter) -> float:
    distance = sum(abs(a[token] - b[token]) for token in a.keys() | b.keys())
    return 1.0 - distance / (sum(a.values()) + sum(b.values()))


def _overlap(a: Counter, b: Counter) -> float:
    shared = len(a.keys() & b.keys())
    return shared / min(len(a), len(b))


def _dice(a: Counter, b: Counter) -> float:
    shared = len(a.keys() & b.keys())
    return 2 * shared / (len(a) + len(b))


def _simon_white(a: Counter, b: Counter) -> float:
    shared = sum((a & b).values())
    return 2 * shared / (sum(a.values()) + sum(b.values()))


def _jaccard(a: Counter, b: Counter) -> float:
    keys_a, keys_b = a.keys(), b.keys()
    return len(keys_a & keys_b) / len(keys_a | keys_b)


def _generalized_jaccard(a: Counter, b: Counter) -> float:
    return sum((a & b).values()) / sum((a | b).values())


def local_alignment_similarity(word1: str, word2: str, *, match: float = 1.0,
                               mismatch: float = -1.0, gap: float = -0.5) -> float:
    """Best local alignment score, normalized by the shorter word length.

    The score of the best window is at most min(len) with these parameters,
    so the result stays in [0, 1].
    """
    if not word1 and not word2:
        return 1.0
    if not word1 or not word2:
        return 0.0
    best = 0.0
    previous = [0.0] * (len(word2) + 1)
    for c1 in word1:
        current = [0.0]
        for j, c2 in enumerate(word2, start=1):
            score = max(
                0.0,
                previous[j - 1] + (match if c1 == c2 else mismatch),
                previous[j] + gap,
                current[j - 1] + gap,
            )
            current.append(score)
            if score > best:
                best = score
        previous = current
    return best / min(len(word1), len(word2))


def _monge_elkan(a: Counter, b: Counter) -> float:
    words_a = sorted(a.keys())
    words_b = sorted(b.keys())
    total = sum(
        max(local_alignment_similarity(wa, wb) for wb in words_b)
        for wa in words_a
    )
    return total / len(words_a)


TOKEN_MEASURES = {
    "cosine": _cosine,
    "euclidean": _euclidean,
    "block": _block,
    "overlap": _overlap,
    "dice": _dice,
    "simon_white": _simon_white,
    "jaccard": _jaccard,
    "generalized_jaccard": _generalized_jaccard,
    "monge_elkan": _monge_elkan,
}


def token_set_similarity(measure: str, a: Iterable[str] | Counter,
                         b: Iterable[str] | Counter) -> float:
    """Dispatch a word-level measure by name; result in [0, 1]."""
    try:
        fn = TOKEN_MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown token measure {measure!r}; expected one of "
                         + ", ".join(sorted(TOKEN_MEASURES))) from None
    ca, cb = _as_counter(a), _as_counter(b)
    empty = _empty_convention(ca, cb)
    if empty is not None:
        return empty
    return float(fn(ca, cb))
