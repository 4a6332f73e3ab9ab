"""A small built-in demonstration dataset.

A 5x4 bipartite graph with one contested hub: A5-B1 is the heaviest edge,
but pairing A1-B1 and A5-B3 instead yields a larger total weight.  The
graph separates the behavior of every matcher in this package, so it backs
the demos, the `reproduce demo` recipe, and the trace tests.
"""

from __future__ import annotations

from .graph import SimilarityGraph

REFERENCE_EDGES = [
    ("A1", "B1", 0.60),
    ("A5", "B1", 0.90),
    ("A5", "B3", 0.60),
    ("A2", "B2", 0.80),
    ("A3", "B4", 0.70),
]

REFERENCE_LEFT_IDS = ("A1", "A2", "A3", "A4", "A5")
REFERENCE_RIGHT_IDS = ("B1", "B2", "B3", "B4")

# The intended resolution of the demonstration dataset (used as ground
# truth by the demos and sweep examples).
REFERENCE_TRUE_PAIRS = frozenset({("A5", "B1"), ("A2", "B2"), ("A3", "B4")})


def reference_graph() -> SimilarityGraph:
    """Build the demonstration graph with its string identifiers."""
    left_index = {name: i for i, name in enumerate(REFERENCE_LEFT_IDS)}
    right_index = {name: i for i, name in enumerate(REFERENCE_RIGHT_IDS)}
    edges = [
        (left_index[l], right_index[r], w) for l, r, w in REFERENCE_EDGES
    ]
    return SimilarityGraph(
        len(REFERENCE_LEFT_IDS),
        len(REFERENCE_RIGHT_IDS),
        edges,
        left_ids=REFERENCE_LEFT_IDS,
        right_ids=REFERENCE_RIGHT_IDS,
    )
