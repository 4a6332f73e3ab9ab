"""Bipartite similarity graphs and matchings.

A :class:`SimilarityGraph` is a weighted bipartite graph over two node
partitions (``left`` and ``right``).  Nodes are dense 0-based indices within
their partition; external string identifiers live in side tables.  Edges are
stored once, in a canonical deterministic order: descending weight, ties
broken by ascending ``(left, right)``.  Instances are immutable after
construction and safe to share across threads.

A :class:`Matching` is a set of cross-partition pairs in which no node
appears twice (the unique mapping constraint of clean-clean resolution).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DataFormatError, EmptyGraphError
from .fileio import open_text

__all__ = [
    "Side",
    "NodeRef",
    "SimilarityGraph",
    "Matching",
    "min_max_normalize",
    "prune_edges",
    "connected_components",
    "read_edge_list",
    "write_edge_list",
]


class Side(enum.Enum):
    """Which of the two node partitions a node belongs to."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class NodeRef:
    """A node identified by its partition and dense index."""

    side: Side
    index: int

    def sort_key(self) -> tuple[bool, int]:
        """Total order: left partition first, then ascending index."""
        return (self.side is Side.RIGHT, self.index)

    def __lt__(self, other):
        if not isinstance(other, NodeRef):
            return NotImplemented
        return self.sort_key() < other.sort_key()


def _as_index_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return arr


class SimilarityGraph:
    """Immutable weighted bipartite graph.

    Parameters
    ----------
    left_count, right_count:
        Partition sizes.
    edges:
        Iterable of ``(left, right, weight)`` triples, or None for an
        edgeless graph.
    left_ids, right_ids:
        External string identifiers per index.  Synthesized as ``L{i}`` /
        ``R{i}`` when omitted.
    """

    __slots__ = (
        "left_count",
        "right_count",
        "left_ids",
        "right_ids",
        "lefts",
        "rights",
        "weights",
        "_left_starts",
        "_left_order",
        "_right_starts",
        "_right_order",
        "_pair_weights",
    )

    def __init__(
        self,
        left_count: int,
        right_count: int,
        edges: Iterable[tuple[int, int, float]] | None = None,
        *,
        left_ids: Sequence[str] | None = None,
        right_ids: Sequence[str] | None = None,
    ):
        if left_count < 0 or right_count < 0:
            raise ValueError("partition sizes must be non-negative")
        if edges is None:
            lefts = np.empty(0, dtype=np.int64)
            rights = np.empty(0, dtype=np.int64)
            weights = np.empty(0, dtype=np.float64)
        else:
            triples = list(edges)
            lefts = _as_index_array([e[0] for e in triples], "left indices")
            rights = _as_index_array([e[1] for e in triples], "right indices")
            weights = np.asarray([e[2] for e in triples], dtype=np.float64)
        self._init_from_arrays(left_count, right_count, lefts, rights, weights,
                               left_ids, right_ids, canonical=False)

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_arrays(
        cls,
        left_count: int,
        right_count: int,
        lefts: np.ndarray,
        rights: np.ndarray,
        weights: np.ndarray,
        *,
        left_ids: Sequence[str] | None = None,
        right_ids: Sequence[str] | None = None,
    ) -> "SimilarityGraph":
        """Build a graph from parallel edge arrays."""
        g = cls.__new__(cls)
        g._init_from_arrays(
            left_count,
            right_count,
            _as_index_array(lefts, "left indices"),
            _as_index_array(rights, "right indices"),
            np.asarray(weights, dtype=np.float64),
            left_ids,
            right_ids,
            canonical=False,
        )
        return g

    @classmethod
    def _from_canonical(cls, left_count, right_count, lefts, rights, weights,
                        left_ids, right_ids) -> "SimilarityGraph":
        # Internal fast path: arrays are already validated and in canonical
        # order (e.g. a prefix slice of another graph's arrays).
        g = cls.__new__(cls)
        g._init_from_arrays(left_count, right_count, lefts, rights, weights,
                            left_ids, right_ids, canonical=True)
        return g

    def _init_from_arrays(self, left_count, right_count, lefts, rights, weights,
                          left_ids, right_ids, canonical):
        if not (len(lefts) == len(rights) == len(weights)):
            raise ValueError("edge arrays must have equal length")
        if not canonical:
            if len(lefts) and (lefts.min() < 0 or lefts.max() >= left_count):
                raise ValueError("left endpoint out of bounds")
            if len(rights) and (rights.min() < 0 or rights.max() >= right_count):
                raise ValueError("right endpoint out of bounds")
            if len(weights) and not np.all(np.isfinite(weights)):
                raise ValueError("edge weights must be finite")
            if len(lefts):
                packed = lefts * max(right_count, 1) + rights
                if len(np.unique(packed)) != len(packed):
                    raise ValueError("duplicate (left, right) edge")
                order = np.lexsort((rights, lefts, -weights))
                lefts = lefts[order]
                rights = rights[order]
                weights = weights[order]
        for arr in (lefts, rights, weights):
            arr.setflags(write=False)
        self.left_count = int(left_count)
        self.right_count = int(right_count)
        self.lefts = lefts
        self.rights = rights
        self.weights = weights
        self.left_ids = self._make_ids(left_ids, left_count, "L")
        self.right_ids = self._make_ids(right_ids, right_count, "R")
        self._left_starts = None
        self._left_order = None
        self._right_starts = None
        self._right_order = None
        self._pair_weights = None

    @staticmethod
    def _make_ids(ids, count, prefix) -> tuple[str, ...]:
        if ids is None:
            return tuple(f"{prefix}{i}" for i in range(count))
        ids = tuple(ids)
        if len(ids) != count:
            raise ValueError(f"expected {count} node identifiers, got {len(ids)}")
        if len(set(ids)) != count:
            raise ValueError("node identifiers must be unique")
        return ids

    # ------------------------------------------------------------------
    # basic queries

    @property
    def edge_count(self) -> int:
        return len(self.weights)

    @property
    def node_count(self) -> int:
        return self.left_count + self.right_count

    def __repr__(self):
        return (f"SimilarityGraph(left={self.left_count}, right={self.right_count}, "
                f"edges={self.edge_count})")

    def edge_list(self) -> list[tuple[int, int, float]]:
        """All edges as ``(left, right, weight)`` in canonical order."""
        return list(zip(self.lefts.tolist(), self.rights.tolist(), self.weights.tolist()))

    def edge_records(self) -> list[tuple[str, str, float]]:
        """All edges as ``(left_id, right_id, weight)`` in canonical order."""
        return [
            (self.left_ids[l], self.right_ids[r], w)
            for l, r, w in self.edge_list()
        ]

    def pair_weights(self) -> dict[tuple[int, int], float]:
        """Lazily built ``(left, right) -> weight`` lookup table."""
        if self._pair_weights is None:
            self._pair_weights = {
                (int(l), int(r)): float(w)
                for l, r, w in zip(self.lefts, self.rights, self.weights)
            }
        return self._pair_weights

    def _adjacency(self, side: Side):
        # Group canonical edge positions by endpoint.  A stable sort keeps
        # the canonical (descending weight) order inside each group.
        if side is Side.LEFT:
            if self._left_starts is None:
                order = np.argsort(self.lefts, kind="stable")
                keys = self.lefts[order]
                starts = np.searchsorted(keys, np.arange(self.left_count + 1))
                self._left_order = order
                self._left_starts = starts
            return self._left_order, self._left_starts
        if self._right_starts is None:
            order = np.argsort(self.rights, kind="stable")
            keys = self.rights[order]
            starts = np.searchsorted(keys, np.arange(self.right_count + 1))
            self._right_order = order
            self._right_starts = starts
        return self._right_order, self._right_starts

    def neighbors(self, side: Side, index: int) -> tuple[np.ndarray, np.ndarray]:
        """Adjacent opposite-side indices and weights, best first.

        The order is total and deterministic: descending weight, ties by
        ascending ``(left, right)``.
        """
        order, starts = self._adjacency(side)
        sel = order[starts[index]:starts[index + 1]]
        if side is Side.LEFT:
            return self.rights[sel], self.weights[sel]
        return self.lefts[sel], self.weights[sel]

    def degrees(self, side: Side) -> np.ndarray:
        if side is Side.LEFT:
            return np.bincount(self.lefts, minlength=self.left_count)
        return np.bincount(self.rights, minlength=self.right_count)

    # ------------------------------------------------------------------
    # transformations

    def prune(self, threshold: float) -> "SimilarityGraph":
        """Keep exactly the edges with weight >= ``threshold``.

        Node counts and identifiers are unchanged.  Because edges are stored
        in descending-weight order the retained set is a prefix, so this is
        cheap and returns views onto the same arrays.
        """
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {threshold}")
        cut = int(np.searchsorted(-self.weights, -threshold, side="right"))
        return SimilarityGraph._from_canonical(
            self.left_count, self.right_count,
            self.lefts[:cut], self.rights[:cut], self.weights[:cut],
            self.left_ids, self.right_ids,
        )

    def normalized(self) -> "SimilarityGraph":
        """Min-max normalize edge weights to span [0, 1].

        Weights map to ``(w - min) / (max - min)``.  When all weights are
        equal the graph carries no contrast and every weight becomes 1.0.
        Raises :class:`EmptyGraphError` for edgeless graphs.
        """
        if self.edge_count == 0:
            raise EmptyGraphError("cannot normalize a graph with no edges")
        w_min = float(self.weights.min())
        w_max = float(self.weights.max())
        if w_max == w_min:
            new_weights = np.ones_like(self.weights)
        else:
            new_weights = (self.weights - w_min) / (w_max - w_min)
        # Re-canonicalize: rounding can collapse distinct weights into ties,
        # which then need the (left, right) tie-break.
        return SimilarityGraph.from_arrays(
            self.left_count, self.right_count,
            self.lefts, self.rights, new_weights,
            left_ids=self.left_ids, right_ids=self.right_ids,
        )

    def connected_components(self) -> list[set[NodeRef]]:
        """Partition all nodes of both sides into maximal connected sets.

        Isolated nodes form singletons.  Union-find with path compression,
        O(n + m α(n)).  Components are returned ordered by their smallest
        member (left partition first, then index); membership sets are
        unordered.
        """
        n = self.node_count
        parent = list(range(n))
        size = [1] * n

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        offset = self.left_count
        for l, r in zip(self.lefts.tolist(), self.rights.tolist()):
            a, b = find(l), find(r + offset)
            if a != b:
                if size[a] < size[b]:
                    a, b = b, a
                parent[b] = a
                size[a] += size[b]

        groups: dict[int, set[NodeRef]] = {}
        for node in range(n):
            ref = (NodeRef(Side.LEFT, node) if node < offset
                   else NodeRef(Side.RIGHT, node - offset))
            groups.setdefault(find(node), set()).add(ref)
        return sorted(groups.values(), key=lambda comp: min(comp).sort_key())


class Matching:
    """A set of cross-partition pairs obeying the unique mapping constraint."""

    __slots__ = ("pairs", "_left_map", "_right_map")

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        pairs = frozenset((int(l), int(r)) for l, r in pairs)
        left_map: dict[int, int] = {}
        right_map: dict[int, int] = {}
        for l, r in sorted(pairs):
            if l in left_map:
                raise ValueError(f"left node {l} matched twice")
            if r in right_map:
                raise ValueError(f"right node {r} matched twice")
            left_map[l] = r
            right_map[r] = l
        self.pairs = pairs
        self._left_map = left_map
        self._right_map = right_map

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __eq__(self, other) -> bool:
        if isinstance(other, Matching):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self):
        return f"Matching({sorted(self.pairs)})"

    def is_left_matched(self, index: int) -> bool:
        return index in self._left_map

    def is_right_matched(self, index: int) -> bool:
        return index in self._right_map

    def left_partner(self, index: int) -> int | None:
        return self._left_map.get(index)

    def right_partner(self, index: int) -> int | None:
        return self._right_map.get(index)

    def total_weight(self, graph: SimilarityGraph) -> float:
        """Sum of the graph's weights over the matched pairs.

        Recomputed from scratch on every call; pairs without a corresponding
        edge contribute 0.
        """
        lookup = graph.pair_weights()
        return sum(lookup.get(pair, 0.0) for pair in self.pairs)

    def id_pairs(self, graph: SimilarityGraph) -> set[tuple[str, str]]:
        """Pairs translated to external identifiers."""
        return {
            (graph.left_ids[l], graph.right_ids[r]) for l, r in self.pairs
        }


# ----------------------------------------------------------------------
# free-function forms of the graph operations

def prune_edges(graph: SimilarityGraph, threshold: float) -> SimilarityGraph:
    """Return the subgraph with exactly the edges of weight >= ``threshold``."""
    return graph.prune(threshold)


def min_max_normalize(graph: SimilarityGraph) -> SimilarityGraph:
    """Return a copy of ``graph`` with weights min-max normalized to [0, 1]."""
    return graph.normalized()


def connected_components(graph: SimilarityGraph) -> list[set[NodeRef]]:
    """Maximal connected node sets of ``graph`` (both partitions)."""
    return graph.connected_components()


# ----------------------------------------------------------------------
# edge-list files: one `left_id<TAB>right_id<TAB>weight` per line, UTF-8,
# `#` starts a comment line.  Node-ID tables are inferred from the file in
# first-appearance order.

def write_edge_list(graph: SimilarityGraph, path, *, comments: Sequence[str] = ()) -> None:
    with open_text(path, "w") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        for left_id, right_id, weight in graph.edge_records():
            fh.write(f"{left_id}\t{right_id}\t{weight!r}\n")


def read_edge_list(path) -> SimilarityGraph:
    left_index: dict[str, int] = {}
    right_index: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    with open_text(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataFormatError(
                    f"expected 3 tab-separated fields, got {len(parts)}",
                    path=path, line=lineno,
                )
            left_id, right_id, weight_text = parts
            try:
                weight = float(weight_text)
            except ValueError:
                raise DataFormatError(
                    f"bad weight {weight_text!r}", path=path, line=lineno
                ) from None
            l = left_index.setdefault(left_id, len(left_index))
            r = right_index.setdefault(right_id, len(right_index))
            edges.append((l, r, weight))
    return SimilarityGraph(
        len(left_index), len(right_index), edges,
        left_ids=list(left_index), right_ids=list(right_index),
    )
