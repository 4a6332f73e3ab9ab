"""Character-level string similarity measures.

All measures return a similarity in [0, 1].  Distance-based ones are
converted with a bounded per-pair rule so that a later graph-level min-max
normalization sees finite values:

    levenshtein / damerau   1 - d / max(|s1|, |s2|)
    needleman-wunsch        (score - s_min) / (0 - s_min), s_min = -2 max(|s1|, |s2|)
    q-grams                 block distance over character trigram profiles,
                            1 - d / (total grams of both profiles)

Two empty strings compare as 1.0 everywhere.
"""

from __future__ import annotations

from collections import Counter

from .text import GramUnit, extract_ngrams

__all__ = ["edit_similarity", "EDIT_MEASURES"]


def levenshtein_distance(s1: str, s2: str) -> int:
    if not s1:
        return len(s2)
    if not s2:
        return len(s1)
    previous = list(range(len(s2) + 1))
    for i, c1 in enumerate(s1, start=1):
        current = [i]
        for j, c2 in enumerate(s2, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (c1 != c2),
            ))
        previous = current
    return previous[-1]


def damerau_levenshtein_distance(s1: str, s2: str) -> int:
    """Levenshtein plus adjacent transpositions (optimal string alignment)."""
    rows = len(s1) + 1
    cols = len(s2) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = s1[i - 1] != s2[j - 1]
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if (i > 1 and j > 1 and s1[i - 1] == s2[j - 2]
                    and s1[i - 2] == s2[j - 1]):
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[-1][-1]


def jaro_similarity(s1: str, s2: str) -> float:
    if not s1 and not s2:
        return 1.0
    if not s1 or not s2:
        return 0.0
    window = max(max(len(s1), len(s2)) // 2 - 1, 0)
    matched1 = [False] * len(s1)
    matched2 = [False] * len(s2)
    m = 0
    for i, c in enumerate(s1):
        lo = max(0, i - window)
        hi = min(len(s2), i + window + 1)
        for j in range(lo, hi):
            if not matched2[j] and s2[j] == c:
                matched1[i] = matched2[j] = True
                m += 1
                break
    if m == 0:
        return 0.0
    chars1 = [c for c, hit in zip(s1, matched1) if hit]
    chars2 = [c for c, hit in zip(s2, matched2) if hit]
    t = sum(a != b for a, b in zip(chars1, chars2)) / 2
    return (m / len(s1) + m / len(s2) + (m - t) / m) / 3


def needleman_wunsch_score(s1: str, s2: str, match: int = 0,
                           mismatch: int = -1, gap: int = -2) -> int:
    previous = [j * gap for j in range(len(s2) + 1)]
    for i in range(1, len(s1) + 1):
        current = [i * gap]
        for j in range(1, len(s2) + 1):
            score = match if s1[i - 1] == s2[j - 1] else mismatch
            current.append(max(
                previous[j - 1] + score,
                previous[j] + gap,
                current[j - 1] + gap,
            ))
        previous = current
    return previous[-1]


def longest_common_substring(s1: str, s2: str) -> int:
    if not s1 or not s2:
        return 0
    best = 0
    previous = [0] * (len(s2) + 1)
    for c1 in s1:
        current = [0]
        for j, c2 in enumerate(s2, start=1):
            run = previous[j - 1] + 1 if c1 == c2 else 0
            current.append(run)
            if run > best:
                best = run
        previous = current
    return best


def longest_common_subsequence(s1: str, s2: str) -> int:
    previous = [0] * (len(s2) + 1)
    for c1 in s1:
        current = [0]
        for j, c2 in enumerate(s2, start=1):
            if c1 == c2:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def _length_scaled(distance: int, s1: str, s2: str) -> float:
    longest = max(len(s1), len(s2))
    if longest == 0:
        return 1.0
    return 1.0 - distance / longest


def _levenshtein_sim(s1, s2):
    return _length_scaled(levenshtein_distance(s1, s2), s1, s2)


def _damerau_sim(s1, s2):
    return _length_scaled(damerau_levenshtein_distance(s1, s2), s1, s2)


def _needleman_wunsch_sim(s1, s2):
    worst = -2 * max(len(s1), len(s2))
    if worst == 0:
        return 1.0
    score = needleman_wunsch_score(s1, s2)
    return (score - worst) / (0 - worst)


def _qgrams_sim(s1, s2):
    p1 = Counter(extract_ngrams(s1, GramUnit.CHARACTER, 3))
    p2 = Counter(extract_ngrams(s2, GramUnit.CHARACTER, 3))
    total = sum(p1.values()) + sum(p2.values())
    if total == 0:
        return 1.0
    if not p1 or not p2:
        return 0.0
    distance = sum(abs(p1[g] - p2[g]) for g in p1.keys() | p2.keys())
    return 1.0 - distance / total


def _lc_substring_sim(s1, s2):
    return longest_common_substring(s1, s2) / max(len(s1), len(s2)) \
        if (s1 or s2) else 1.0


def _lc_subsequence_sim(s1, s2):
    return longest_common_subsequence(s1, s2) / max(len(s1), len(s2)) \
        if (s1 or s2) else 1.0


EDIT_MEASURES = {
    "levenshtein": _levenshtein_sim,
    "damerau_levenshtein": _damerau_sim,
    "jaro": jaro_similarity,
    "needleman_wunsch": _needleman_wunsch_sim,
    "qgrams": _qgrams_sim,
    "lc_substring": _lc_substring_sim,
    "lc_subsequence": _lc_subsequence_sim,
}


def edit_similarity(measure: str, s1: str, s2: str) -> float:
    """Dispatch a character-level measure by name; result in [0, 1]."""
    try:
        fn = EDIT_MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown edit measure {measure!r}; expected one of "
                         + ", ".join(sorted(EDIT_MEASURES))) from None
    return float(fn(s1, s2))
