"""The eight bipartite graph matching algorithms.

Every matcher maps ``(graph, threshold, config)`` to a :class:`Matching`
whose pairs all correspond to edges of weight >= threshold, with each node
matched at most once.  All matchers are pure functions of their inputs
(``bah`` included, under a fixed seed) and share one pruning convention:
edges with weight >= t are retained.

    cnc  connected components whose component is exactly one cross pair
    rsr  sequential rippling: seeds ranked by average adjacent weight
         re-assign neighbors, orphaned centers re-attach to singletons
    rca  row/column greedy assignment, better-valued pass wins
    bah  random swap search over an index-aligned initial assignment
    bmc  basis side greedily takes its best unmatched counterpart
    exc  mutual-best pairs only
    krc  proposal scheme with one second chance per proposer
         (3/2-approximation family for maximum stable marriage)
    umc  globally greedy by descending weight
"""

from __future__ import annotations

import enum
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fileio import open_text
from .errors import DataFormatError
from .graph import Matching, Side, SimilarityGraph

__all__ = [
    "Basis",
    "BahConfig",
    "match_cnc",
    "match_rsr",
    "match_rca",
    "match_bah",
    "match_bmc",
    "match_exc",
    "match_krc",
    "match_umc",
    "rca_passes",
    "ALGORITHMS",
    "get_matcher",
    "write_matching",
    "read_matching",
]


def _check_threshold(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {t}")


class Basis(enum.Enum):
    """Which partition ``bmc`` iterates over; AUTO picks the smaller one."""

    LEFT = "left"
    RIGHT = "right"
    AUTO = "auto"


@dataclass(frozen=True)
class BahConfig:
    """Search budget for the random-swap matcher.

    ``max_moves`` bounds the number of proposed swaps (0 means the filtered
    initial assignment is returned untouched), ``time_limit`` is wall-clock
    seconds, and ``rng_seed`` fixes the proposal sequence.
    """

    max_moves: int = 10_000
    time_limit: float = 120.0
    rng_seed: int = 42

    def __post_init__(self):
        if self.max_moves < 0:
            raise ValueError("max_moves must be >= 0")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


# ----------------------------------------------------------------------


def match_cnc(graph: SimilarityGraph, threshold: float) -> Matching:
    """Cross pairs that form complete connected components after pruning.

    A 2-node cross component is exactly an edge whose endpoints both have
    degree 1 in the pruned graph, so no explicit closure pass is needed.
    """
    _check_threshold(threshold)
    g = graph.prune(threshold)
    if g.edge_count == 0:
        return Matching()
    deg_l = g.degrees(Side.LEFT)
    deg_r = g.degrees(Side.RIGHT)
    keep = (deg_l[g.lefts] == 1) & (deg_r[g.rights] == 1)
    return Matching(zip(g.lefts[keep].tolist(), g.rights[keep].tolist()))


def match_rsr(graph: SimilarityGraph, threshold: float) -> Matching:
    """Sequential rippling over seeds ranked by average adjacent weight.

    Seeds are visited in descending average-adjacent-weight order (ties:
    left partition first, then index).  A seed claims the first neighbor
    that would be strictly closer to it than both the neighbor's current
    center and the seed's own, then centers its partition.  A center whose
    partition shrinks to a singleton is re-attached to its most similar
    partition that still has fewer than two members.  Only partitions with
    exactly one node per side survive as pairs.
    """
    _check_threshold(threshold)
    g = graph.prune(threshold)
    n1 = g.left_count
    n = g.node_count

    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i in range(n1):
        nbrs, ws = g.neighbors(Side.LEFT, i)
        adjacency[i] = [(n1 + int(j), float(w)) for j, w in zip(nbrs, ws)]
    for j in range(g.right_count):
        nbrs, ws = g.neighbors(Side.RIGHT, j)
        adjacency[n1 + j] = [(int(i), float(w)) for i, w in zip(nbrs, ws)]
    averages = [
        sum(w for _, w in edges) / len(edges) if edges else 0.0
        for edges in adjacency
    ]

    seeds = sorted((v for v in range(n) if adjacency[v]),
                   key=lambda v: (-averages[v], v))

    sim_with_center = [0.0] * n
    center_of = list(range(n))
    partitions: list[set[int]] = [set() for _ in range(n)]
    centers: set[int] = set()

    for seed in seeds:
        to_reassign: set[int] = set()
        for other, w in adjacency[seed]:
            if other in centers:
                continue
            if w > sim_with_center[other] and w > sim_with_center[seed]:
                partitions[center_of[other]].discard(other)
                partitions[seed].add(other)
                if center_of[other] != other:
                    to_reassign.add(center_of[other])
                sim_with_center[other] = w
                center_of[other] = seed
                break
        if partitions[seed]:
            if center_of[seed] != seed:
                partitions[center_of[seed]].discard(seed)
                to_reassign.add(center_of[seed])
            centers.add(seed)
            partitions[seed].add(seed)
            center_of[seed] = seed
            sim_with_center[seed] = 1.0
        for orphan in sorted(to_reassign):
            best_sim = 0.0
            best_owner = None
            for other, w in adjacency[orphan]:
                if w > best_sim and len(partitions[other]) < 2:
                    best_owner = other
                    best_sim = w
            if best_owner is not None:
                partitions[orphan].clear()
                partitions[best_owner].add(orphan)

    pairs = []
    for members in partitions:
        if len(members) != 2:
            continue
        a, b = sorted(members)
        if a < n1 <= b:
            pairs.append((a, b - n1))
    return Matching(pairs)


def rca_passes(graph: SimilarityGraph) -> tuple[list[tuple[int, int]], float,
                                                list[tuple[int, int]], float]:
    """Both row/column greedy assignments and their values, unfiltered.

    Pass 1 scans left nodes in index order, each taking its most similar
    still-unassigned right node; pass 2 is the mirror image.  Absent edges
    count as similarity 0 and never produce an assignment.
    """
    pairs_rows: list[tuple[int, int]] = []
    value_rows = 0.0
    taken_r = np.zeros(graph.right_count, dtype=bool)
    for i in range(graph.left_count):
        nbrs, ws = graph.neighbors(Side.LEFT, i)
        for j, w in zip(nbrs.tolist(), ws.tolist()):
            if not taken_r[j]:
                pairs_rows.append((i, j))
                taken_r[j] = True
                value_rows += w
                break

    pairs_cols: list[tuple[int, int]] = []
    value_cols = 0.0
    taken_l = np.zeros(graph.left_count, dtype=bool)
    for j in range(graph.right_count):
        nbrs, ws = graph.neighbors(Side.RIGHT, j)
        for i, w in zip(nbrs.tolist(), ws.tolist()):
            if not taken_l[i]:
                pairs_cols.append((i, j))
                taken_l[i] = True
                value_cols += w
                break

    return pairs_rows, value_rows, pairs_cols, value_cols


def match_rca(graph: SimilarityGraph, threshold: float) -> Matching:
    """Greedy row and column assignment passes; the better-valued pass wins.

    Both passes run on the unpruned graph (the assignment view treats every
    pairing as admissible); sub-threshold pairs are dropped from the winning
    pass at the end.  A value tie returns the column pass.
    """
    _check_threshold(threshold)
    pairs_rows, value_rows, pairs_cols, value_cols = rca_passes(graph)
    chosen = pairs_rows if value_rows > value_cols else pairs_cols
    lookup = graph.pair_weights()
    return Matching(p for p in chosen if lookup[p] >= threshold)


def match_bah(
    graph: SimilarityGraph,
    threshold: float,
    config: BahConfig | None = None,
    *,
    value_trace: list[float] | None = None,
) -> Matching:
    """Random-swap search for a high-value assignment.

    Starts from the index-aligned assignment that fully matches the smaller
    partition, then repeatedly proposes swapping the partners of two random
    nodes of the larger partition, accepting whenever the assignment value
    does not decrease.  Stops at ``max_moves`` proposals or at the time
    limit, whichever comes first; the final pairs are filtered to edges of
    weight >= threshold.  ``value_trace``, when given, records the running
    assignment value after every accepted swap.
    """
    _check_threshold(threshold)
    cfg = config or BahConfig()

    swap_left = graph.left_count >= graph.right_count
    n_big = graph.left_count if swap_left else graph.right_count
    n_small = graph.right_count if swap_left else graph.left_count

    contribution: dict[tuple[int, int], float] = {}
    pruned = graph.prune(threshold)
    for l, r, w in zip(pruned.lefts.tolist(), pruned.rights.tolist(),
                       pruned.weights.tolist()):
        key = (l, r) if swap_left else (r, l)
        contribution[key] = w

    partner: list[int | None] = [k if k < n_small else None for k in range(n_big)]
    value = sum(contribution.get((k, k), 0.0) for k in range(n_small))

    rng = random.Random(cfg.rng_seed)
    start = time.perf_counter()
    if n_big >= 2:
        for move in range(cfg.max_moves):
            if move % 1024 == 0 and time.perf_counter() - start > cfg.time_limit:
                break
            i = rng.randrange(n_big)
            j = rng.randrange(n_big)
            while j == i:
                j = rng.randrange(n_big)
            delta = 0.0
            if partner[i] is not None:
                delta += (contribution.get((j, partner[i]), 0.0)
                          - contribution.get((i, partner[i]), 0.0))
            if partner[j] is not None:
                delta += (contribution.get((i, partner[j]), 0.0)
                          - contribution.get((j, partner[j]), 0.0))
            if delta >= 0:
                partner[i], partner[j] = partner[j], partner[i]
                value += delta
                if value_trace is not None:
                    value_trace.append(value)

    pairs = []
    for big, small in enumerate(partner):
        if small is not None and (big, small) in contribution:
            pairs.append((big, small) if swap_left else (small, big))
    return Matching(pairs)


def match_bmc(graph: SimilarityGraph, threshold: float,
              basis: Basis = Basis.AUTO) -> Matching:
    """Each basis-side node takes its best not-yet-matched counterpart.

    Basis nodes are visited in index order; AUTO resolves to the smaller
    partition (left on ties).
    """
    _check_threshold(threshold)
    if basis is Basis.AUTO:
        basis = Basis.LEFT if graph.left_count <= graph.right_count else Basis.RIGHT
    g = graph.prune(threshold)
    side = Side.LEFT if basis is Basis.LEFT else Side.RIGHT
    count = g.left_count if basis is Basis.LEFT else g.right_count
    taken = np.zeros(g.right_count if basis is Basis.LEFT else g.left_count,
                     dtype=bool)
    pairs = []
    for i in range(count):
        nbrs, _ = g.neighbors(side, i)
        for j in nbrs.tolist():
            if not taken[j]:
                taken[j] = True
                pairs.append((i, j) if basis is Basis.LEFT else (j, i))
                break
    return Matching(pairs)


def match_exc(graph: SimilarityGraph, threshold: float) -> Matching:
    """Pairs whose members are mutually each other's best match.

    Ties are resolved by the deterministic adjacency order (descending
    weight, then ascending index), so "best" is the first neighbor.
    """
    _check_threshold(threshold)
    g = graph.prune(threshold)
    pairs = []
    for i in range(g.left_count):
        nbrs, _ = g.neighbors(Side.LEFT, i)
        if not len(nbrs):
            continue
        j = int(nbrs[0])
        back, _ = g.neighbors(Side.RIGHT, j)
        if int(back[0]) == i:
            pairs.append((i, j))
    return Matching(pairs)


def match_krc(graph: SimilarityGraph, threshold: float) -> Matching:
    """Proposal-based matcher with one second chance per left node.

    Left nodes propose down their preference lists (best surviving edge
    first) in a FIFO free list.  A right node accepts a proposal when it is
    free, when the proposal is strictly heavier than its engagement, or on
    equal weight when the incumbent is on its second chance and the
    proposer is not.  A left node that exhausts its list once recovers the
    full list and tries again; after the second exhaustion it stays single.
    """
    _check_threshold(threshold)
    g = graph.prune(threshold)
    n1 = g.left_count

    preference: list[list[tuple[int, float]]] = []
    for i in range(n1):
        nbrs, ws = g.neighbors(Side.LEFT, i)
        preference.append(list(zip(nbrs.tolist(), ws.tolist())))

    position = [0] * n1
    second_chance = [False] * n1
    fiance: dict[int, int] = {}
    engagement_weight: dict[int, float] = {}
    free = deque(i for i in range(n1) if preference[i])

    while free:
        man = free.popleft()
        if position[man] >= len(preference[man]):
            if not second_chance[man]:
                second_chance[man] = True
                position[man] = 0
                free.append(man)
            continue
        woman, weight = preference[man][position[man]]
        position[man] += 1
        incumbent = fiance.get(woman)
        if incumbent is None:
            fiance[woman] = man
            engagement_weight[woman] = weight
            continue
        current = engagement_weight[woman]
        accepts = weight > current or (
            weight == current
            and second_chance[incumbent]
            and not second_chance[man]
        )
        if accepts:
            fiance[woman] = man
            engagement_weight[woman] = weight
            free.append(incumbent)
        else:
            free.append(man)

    return Matching((man, woman) for woman, man in fiance.items())


def match_umc(graph: SimilarityGraph, threshold: float) -> Matching:
    """Global greedy: scan edges by descending weight, take both-free pairs.

    The edge order is the canonical one (ties by ascending (left, right)).
    """
    _check_threshold(threshold)
    g = graph.prune(threshold)
    taken_l = bytearray(g.left_count)
    taken_r = bytearray(g.right_count)
    pairs = []
    for l, r in zip(g.lefts.tolist(), g.rights.tolist()):
        if not taken_l[l] and not taken_r[r]:
            taken_l[l] = 1
            taken_r[r] = 1
            pairs.append((l, r))
    return Matching(pairs)


# ----------------------------------------------------------------------
# registry

ALGORITHMS: dict[str, Callable] = {
    "cnc": match_cnc,
    "rsr": match_rsr,
    "rca": match_rca,
    "bah": match_bah,
    "bmc": match_bmc,
    "exc": match_exc,
    "krc": match_krc,
    "umc": match_umc,
}


def get_matcher(name: str, **config) -> Callable[[SimilarityGraph, float], Matching]:
    """Resolve an algorithm abbreviation (case-insensitive) to a matcher.

    ``bah`` accepts ``max_moves``/``time_limit``/``rng_seed`` (or a ready
    ``config=BahConfig``); ``bmc`` accepts ``basis``.  The returned callable
    takes ``(graph, threshold)``.
    """
    key = name.lower()
    if key not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of "
                         + ", ".join(sorted(ALGORITHMS)))
    if key == "bah":
        cfg = config.pop("config", None)
        if cfg is None:
            cfg = BahConfig(
                max_moves=config.pop("max_moves", 10_000),
                time_limit=config.pop("time_limit", 120.0),
                rng_seed=config.pop("rng_seed", 42),
            )
        _reject_extra(config)
        return lambda g, t: match_bah(g, t, cfg)
    if key == "bmc":
        basis = config.pop("basis", Basis.AUTO)
        if isinstance(basis, str):
            basis = Basis(basis.lower())
        _reject_extra(config)
        return lambda g, t: match_bmc(g, t, basis)
    _reject_extra(config)
    return ALGORITHMS[key]


def _reject_extra(config: dict) -> None:
    if config:
        raise ValueError(f"unexpected matcher options: {sorted(config)}")


# ----------------------------------------------------------------------
# matching files: `left_id<TAB>right_id<TAB>weight` rows preceded by header
# comments recording algorithm, threshold, config and wall time.

def write_matching(
    matching: Matching,
    graph: SimilarityGraph,
    path,
    *,
    algorithm: str,
    threshold: float,
    config: str = "",
    wall_time: float | None = None,
) -> None:
    lookup = graph.pair_weights()
    with open_text(path, "w") as fh:
        fh.write(f"# algorithm: {algorithm}\n")
        fh.write(f"# threshold: {threshold!r}\n")
        fh.write(f"# config: {config}\n")
        if wall_time is not None:
            fh.write(f"# wall_time_s: {wall_time:.6f}\n")
        for l, r in matching:
            fh.write(f"{graph.left_ids[l]}\t{graph.right_ids[r]}\t"
                     f"{lookup[(l, r)]!r}\n")


def read_matching(path) -> tuple[list[tuple[str, str, float]], dict[str, str]]:
    """Parse a matching file into id-pair records plus its header fields."""
    header: dict[str, str] = {}
    records: list[tuple[str, str, float]] = []
    with open_text(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, value = body.split(":", 1)
                    header[key.strip()] = value.strip()
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataFormatError(
                    f"expected 3 tab-separated fields, got {len(parts)}",
                    path=path, line=lineno,
                )
            records.append((parts[0], parts[1], float(parts[2])))
    return records, header
