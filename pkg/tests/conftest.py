import random

import pytest

from erbimatch import SimilarityGraph
from erbimatch.reference import reference_graph


@pytest.fixture
def g_ref() -> SimilarityGraph:
    return reference_graph()


def make_random_graph(rng: random.Random, max_side: int = 20,
                      density: float = 0.4, *, weight_grid: int | None = None
                      ) -> SimilarityGraph:
    """Random bipartite graph; weight_grid snaps weights to k levels to force ties."""
    n1 = rng.randint(1, max_side)
    n2 = rng.randint(1, max_side)
    edges = []
    for i in range(n1):
        for j in range(n2):
            if rng.random() < density:
                w = rng.random()
                if weight_grid:
                    w = round(w * weight_grid) / weight_grid
                edges.append((i, j, w))
    return SimilarityGraph(n1, n2, edges)
