"""Similarities over precomputed dense embedding vectors.

The package never runs embedding models; vectors arrive from files (see the
ingest module) and are compared here.
"""

from __future__ import annotations

import numpy as np

__all__ = ["vector_similarity", "cosine_similarity", "euclidean_similarity",
           "VECTOR_MEASURES"]


def _check(v1: np.ndarray, v2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    v1 = np.asarray(v1, dtype=np.float64)
    v2 = np.asarray(v2, dtype=np.float64)
    if v1.shape != v2.shape:
        raise ValueError(f"dimension mismatch: {v1.shape} vs {v2.shape}")
    return v1, v2


def cosine_similarity(v1, v2) -> float:
    """Cosine of the angle; 0.0 when either vector is zero."""
    v1, v2 = _check(v1, v2)
    denom = float(np.linalg.norm(v1) * np.linalg.norm(v2))
    if denom == 0.0:
        return 0.0
    return float(np.dot(v1, v2) / denom)


def euclidean_similarity(v1, v2) -> float:
    """1 / (1 + euclidean distance)."""
    v1, v2 = _check(v1, v2)
    return float(1.0 / (1.0 + np.linalg.norm(v1 - v2)))


VECTOR_MEASURES = {
    "cosine": cosine_similarity,
    "euclidean": euclidean_similarity,
}


def vector_similarity(measure: str, v1, v2) -> float:
    try:
        fn = VECTOR_MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown vector measure {measure!r}; expected one of "
                         + ", ".join(sorted(VECTOR_MEASURES))) from None
    return fn(v1, v2)
