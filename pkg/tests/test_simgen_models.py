import math

import numpy as np
import pytest

from erbimatch import EntityProfile
from erbimatch.simgen import (
    GramUnit,
    WeightScheme,
    bag_similarity,
    build_bag_model,
    build_ngram_graph,
    corpus_stats,
    graph_similarity,
    vector_similarity,
)
from erbimatch.simgen.bags import BagModel, CorpusStats
from erbimatch.simgen.ngram_graphs import NGramGraph


def profile(pid, *values, attr="name"):
    return EntityProfile(pid, {attr: tuple(values)})


class TestBagModel:
    def test_single_gram_tf(self):
        stats = CorpusStats(doc_count=1, document_frequency={"aa": 1})
        bm = build_bag_model(profile("p", "aa"), GramUnit.CHARACTER, 2,
                             WeightScheme.TF, stats)
        assert bm.weights == {"aa": 1.0}

    def test_absent_gram_omitted(self):
        stats = CorpusStats(doc_count=1, document_frequency={})
        bm = build_bag_model(profile("p", "ab"), GramUnit.CHARACTER, 2,
                             WeightScheme.TF, stats)
        assert "zz" not in bm.weights

    def test_negative_idf_kept(self):
        # a gram present in all 3 documents: idf = ln(3/4) < 0
        profiles = [profile(f"p{i}", "common words") for i in range(3)]
        stats = corpus_stats(profiles, GramUnit.TOKEN, 1)
        bm = build_bag_model(profiles[0], GramUnit.TOKEN, 1,
                             WeightScheme.TFIDF, stats)
        assert bm.weights["common"] == pytest.approx(0.5 * math.log(3 / 4))
        assert bm.weights["common"] < 0

    def test_empty_profile_gives_empty_model(self):
        stats = CorpusStats(doc_count=1, document_frequency={})
        bm = build_bag_model(EntityProfile("p", {}), GramUnit.TOKEN, 1,
                             WeightScheme.TF, stats)
        assert bm.weights == {}

    def test_tf_weights_sum_to_one(self):
        stats = CorpusStats(doc_count=1, document_frequency={})
        bm = build_bag_model(profile("p", "a b a c"), GramUnit.TOKEN, 1,
                             WeightScheme.TF, stats)
        assert sum(bm.weights.values()) == pytest.approx(1.0)
        assert bm.weights["a"] == pytest.approx(0.5)

    def test_attribute_order_does_not_matter(self):
        p1 = EntityProfile("p", {"a": ("x y",), "b": ("z",)})
        p2 = EntityProfile("p", {"b": ("z",), "a": ("x y",)})
        stats = CorpusStats(doc_count=1, document_frequency={})
        m1 = build_bag_model(p1, GramUnit.TOKEN, 1, WeightScheme.TF, stats)
        m2 = build_bag_model(p2, GramUnit.TOKEN, 1, WeightScheme.TF, stats)
        assert m1.weights == m2.weights

    def test_schema_based_scope(self):
        p = EntityProfile("p", {"name": ("alpha",), "desc": ("beta",)})
        stats = CorpusStats(doc_count=1, document_frequency={})
        bm = build_bag_model(p, GramUnit.TOKEN, 1, WeightScheme.TF, stats,
                             attribute="name")
        assert set(bm.weights) == {"alpha"}


def bag(weights, unit=GramUnit.TOKEN, n=1, scheme=WeightScheme.TF):
    return BagModel(unit=unit, n=n, scheme=scheme, weights=weights)


class TestBagSimilarity:
    def test_cosine_identity(self):
        bm = bag({"x": 0.4, "y": 0.6})
        assert bag_similarity("cosine", bm, bm) == pytest.approx(1.0)

    def test_jaccard_supports(self):
        assert bag_similarity("jaccard", bag({"x": 1.0, "y": 2.0}),
                              bag({"y": 9.0, "z": 1.0})) == pytest.approx(1 / 3)

    def test_arcs_formula(self):
        s1 = CorpusStats(doc_count=4, document_frequency={"g": 2})
        s2 = CorpusStats(doc_count=4, document_frequency={"g": 2})
        value = bag_similarity("arcs", bag({"g": 0.1}), bag({"g": 0.9}), s1, s2)
        assert value == pytest.approx(math.log(2) / math.log(4))

    def test_arcs_rare_gram_clamped(self):
        s = CorpusStats(doc_count=10, document_frequency={"g": 1})
        value = bag_similarity("arcs", bag({"g": 1.0}), bag({"g": 1.0}), s, s)
        assert value == pytest.approx(1.0)

    def test_disjoint_supports(self):
        a, b = bag({"x": 1.0}), bag({"y": 1.0})
        s = CorpusStats(doc_count=2, document_frequency={"x": 1, "y": 1})
        for measure in ("cosine", "jaccard", "generalized_jaccard"):
            assert bag_similarity(measure, a, b) == 0.0
        assert bag_similarity("arcs", a, b, s, s) == 0.0

    def test_generalized_jaccard(self):
        a = bag({"x": 0.2, "y": 0.8})
        b = bag({"x": 0.4, "y": 0.4})
        expected = (0.2 + 0.4) / (0.4 + 0.8)
        assert bag_similarity("generalized_jaccard", a, b) == pytest.approx(expected)

    def test_incompatible_models_rejected(self):
        with pytest.raises(ValueError):
            bag_similarity("cosine", bag({"x": 1.0}, n=1), bag({"x": 1.0}, n=2))


class TestNgramGraph:
    def test_window_edges_match_worked_example(self):
        g = build_ngram_graph(profile("p", "Joe Biden"), GramUnit.CHARACTER, 3)
        assert ("Joe", "oe_") in g.edges and g.edges[("Joe", "oe_")] == 1.0
        assert ("Joe", "e_B") in g.edges
        assert ("e_B", "oe_") in g.edges  # keys are sorted pairs
        assert ("_Bi", "oe_") in g.edges
        assert len(g.nodes) == 7 and g.size == 11

    def test_single_gram_value(self):
        g = build_ngram_graph(profile("p", "ab"), GramUnit.CHARACTER, 2)
        assert g.nodes == {"ab"} and g.size == 0

    def test_self_loops_dropped(self):
        g = build_ngram_graph(profile("p", "aaaa"), GramUnit.CHARACTER, 2)
        assert g.nodes == {"aa"} and g.edges == {}

    def test_value_graphs_merge_by_weight_sum(self):
        g = build_ngram_graph(profile("p", "abc", "abc"), GramUnit.CHARACTER, 2)
        assert g.edges[("ab", "bc")] == 2.0

    def test_empty_profile(self):
        g = build_ngram_graph(EntityProfile("p", {}), GramUnit.CHARACTER, 2)
        assert g.nodes == frozenset() and g.size == 0


def ngraph(edges, unit=GramUnit.CHARACTER, n=3):
    nodes = frozenset(x for e in edges for x in e)
    return NGramGraph(unit=unit, n=n, nodes=nodes, edges=dict(edges))


class TestGraphSimilarity:
    def test_identity(self):
        g = ngraph({("a", "b"): 2.0, ("b", "c"): 1.0})
        assert graph_similarity("containment", g, g) == 1.0
        assert graph_similarity("normalized_value", g, g) == 1.0
        assert graph_similarity("value", g, g) == 1.0  # equal sizes
        assert graph_similarity("overall", g, g) == 1.0

    def test_partial_containment(self):
        gi = ngraph({("a", "b"): 1.0, ("b", "c"): 1.0})
        gj = ngraph({("a", "b"): 1.0, ("c", "d"): 1.0, ("d", "e"): 1.0,
                     ("e", "f"): 1.0})
        assert graph_similarity("containment", gi, gj) == pytest.approx(1 / 2)

    def test_value_uses_weight_ratio_and_larger_size(self):
        gi = ngraph({("a", "b"): 1.0, ("b", "c"): 3.0})
        gj = ngraph({("a", "b"): 2.0, ("c", "d"): 1.0, ("d", "e"): 1.0})
        # shared edge ratio 1/2, larger size 3
        assert graph_similarity("value", gi, gj) == pytest.approx((1 / 2) / 3)
        assert graph_similarity("normalized_value", gi, gj) == pytest.approx((1 / 2) / 2)

    def test_disjoint_graphs(self):
        gi = ngraph({("a", "b"): 1.0})
        gj = ngraph({("c", "d"): 1.0})
        assert graph_similarity("overall", gi, gj) == 0.0

    def test_edgeless_graph(self):
        gi = ngraph({("a", "b"): 1.0})
        empty = NGramGraph(unit=GramUnit.CHARACTER, n=3)
        assert graph_similarity("containment", gi, empty) == 0.0


class TestVectorSimilarity:
    def test_identity(self):
        v = np.array([0.3, 0.7, -0.1])
        assert vector_similarity("cosine", v, v) == pytest.approx(1.0)
        assert vector_similarity("euclidean", v, v) == 1.0

    def test_orthogonal_cosine(self):
        assert vector_similarity("cosine", [1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_euclidean_three_four_five(self):
        s = vector_similarity("euclidean", [0.0, 0.0, 0.0], [3.0, 4.0, 0.0])
        assert s == pytest.approx(1 / 6)

    def test_zero_vector_cosine(self):
        assert vector_similarity("cosine", [0.0, 0.0], [1.0, 2.0]) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            vector_similarity("cosine", [1.0], [1.0, 2.0])
