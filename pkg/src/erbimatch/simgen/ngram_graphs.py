"""n-gram graphs: grams as nodes, windowed co-occurrence as weighted edges.

Within one attribute value, each gram is linked to the grams that follow it
within a window of size n (so for "Joe Biden" with character trigrams, Joe
connects to oe_ and e_B, oe_ to e_B and _Bi, and so on).  Edge weights count
co-occurrences; self-loops are dropped.  An entity's graph is the merge of
its value graphs with edge weights accumulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..profiles import EntityProfile
from .text import GramUnit, extract_ngrams

__all__ = [
    "NGramGraph",
    "build_ngram_graph",
    "value_ngram_graph",
    "graph_similarity",
    "GRAPH_MEASURES",
]


@dataclass(frozen=True)
class NGramGraph:
    unit: GramUnit
    n: int
    nodes: frozenset[str] = frozenset()
    edges: dict[tuple[str, str], float] = field(default_factory=dict)

    @property
    def size(self) -> int:
        """Edge count, the |G| of the similarity formulas."""
        return len(self.edges)


def _edge_key(g1: str, g2: str) -> tuple[str, str]:
    return (g1, g2) if g1 <= g2 else (g2, g1)


def value_ngram_graph(value: str, unit: GramUnit, n: int) -> NGramGraph:
    """Graph of a single attribute value."""
    grams = extract_ngrams(value, unit, n)
    edges: dict[tuple[str, str], float] = {}
    for i, gram in enumerate(grams):
        for j in range(i + 1, min(i + n, len(grams))):
            if gram == grams[j]:
                continue
            key = _edge_key(gram, grams[j])
            edges[key] = edges.get(key, 0.0) + 1.0
    return NGramGraph(unit=unit, n=n, nodes=frozenset(grams), edges=edges)


def build_ngram_graph(profile: EntityProfile, unit: GramUnit, n: int,
                      attribute: str | None = None) -> NGramGraph:
    """Merge the value graphs of a profile by edge-weight accumulation."""
    nodes: set[str] = set()
    edges: dict[tuple[str, str], float] = {}
    for value in profile.values(attribute):
        part = value_ngram_graph(value, unit, n)
        nodes.update(part.nodes)
        for key, weight in part.edges.items():
            edges[key] = edges.get(key, 0.0) + weight
    return NGramGraph(unit=unit, n=n, nodes=frozenset(nodes), edges=edges)


def _shared_weight_ratios(gi: NGramGraph, gj: NGramGraph) -> float:
    return sum(
        min(wi, gj.edges[key]) / max(wi, gj.edges[key])
        for key, wi in gi.edges.items()
        if key in gj.edges
    )


def _containment(gi, gj):
    shared = sum(1 for key in gi.edges if key in gj.edges)
    return shared / min(gi.size, gj.size)


def _value_similarity(gi, gj):
    return _shared_weight_ratios(gi, gj) / max(gi.size, gj.size)


def _normalized_value(gi, gj):
    return _shared_weight_ratios(gi, gj) / min(gi.size, gj.size)


def _overall(gi, gj):
    return (_containment(gi, gj) + _value_similarity(gi, gj)
            + _normalized_value(gi, gj)) / 3


GRAPH_MEASURES = {
    "containment": _containment,
    "value": _value_similarity,
    "normalized_value": _normalized_value,
    "overall": _overall,
}


def graph_similarity(measure: str, gi: NGramGraph, gj: NGramGraph) -> float:
    """Compare two n-gram graphs; either one edgeless gives 0.0."""
    try:
        fn = GRAPH_MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown graph measure {measure!r}; expected one of "
                         + ", ".join(sorted(GRAPH_MEASURES))) from None
    if gi.unit is not gj.unit or gi.n != gj.n:
        raise ValueError("n-gram graphs must share gram unit and order")
    if gi.size == 0 or gj.size == 0:
        return 0.0
    return float(fn(gi, gj))
