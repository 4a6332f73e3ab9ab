#!/usr/bin/env python3
"""Tour of the learning-free similarity functions, family by family.

Four representation models exist: raw strings (character- or word-level
measures), n-gram frequency vectors ("bags"), n-gram co-occurrence graphs,
and precomputed dense vectors.
"""

import numpy as np

from erbimatch import (
    EntityProfile,
    GramUnit,
    WeightScheme,
    bag_similarity,
    build_bag_model,
    build_ngram_graph,
    corpus_stats,
    edit_similarity,
    extract_ngrams,
    graph_similarity,
    token_set_similarity,
    vector_similarity,
)

S1, S2 = "Sony Cyber-shot DSC-W710", "sony cybershot dscw710 camera"


def main():
    print(f"comparing:\n  s1 = {S1!r}\n  s2 = {S2!r}\n")

    print("character-level measures (raw strings, lowercased):")
    for measure in ("levenshtein", "damerau_levenshtein", "jaro",
                    "needleman_wunsch", "qgrams", "lc_substring",
                    "lc_subsequence"):
        value = edit_similarity(measure, S1.lower(), S2.lower())
        print(f"  {measure:<20} {value:.3f}")

    print("\nword-level measures (token multisets):")
    a, b = S1.lower().split(), S2.lower().split()
    for measure in ("cosine", "euclidean", "block", "overlap", "dice",
                    "simon_white", "jaccard", "generalized_jaccard",
                    "monge_elkan"):
        print(f"  {measure:<20} {token_set_similarity(measure, a, b):.3f}")

    print("\nn-gram extraction ('Joe Biden'):")
    print(f"  character 3-grams: {extract_ngrams('Joe Biden', GramUnit.CHARACTER, 3)}")
    print(f"  token 2-grams:     {extract_ngrams('Joe Biden', GramUnit.TOKEN, 2)}")

    print("\nbag models over a 3-document corpus (character bigrams):")
    corpus = [
        EntityProfile("e1", {"name": (S1,)}),
        EntityProfile("e2", {"name": (S2,)}),
        EntityProfile("e3", {"name": ("Canon PowerShot A2300",)}),
    ]
    stats = corpus_stats(corpus, GramUnit.CHARACTER, 2)
    models = {
        p.id: build_bag_model(p, GramUnit.CHARACTER, 2, WeightScheme.TFIDF, stats)
        for p in corpus
    }
    for measure in ("cosine", "jaccard", "generalized_jaccard", "arcs"):
        near = bag_similarity(measure, models["e1"], models["e2"], stats, stats)
        far = bag_similarity(measure, models["e1"], models["e3"], stats, stats)
        print(f"  {measure:<20} e1~e2 {near:6.3f}   e1~e3 {far:6.3f}")

    print("\nn-gram graphs (windowed co-occurrence, character trigrams):")
    graphs = {p.id: build_ngram_graph(p, GramUnit.CHARACTER, 3) for p in corpus}
    for measure in ("containment", "value", "normalized_value", "overall"):
        near = graph_similarity(measure, graphs["e1"], graphs["e2"])
        far = graph_similarity(measure, graphs["e1"], graphs["e3"])
        print(f"  {measure:<20} e1~e2 {near:6.3f}   e1~e3 {far:6.3f}")

    print("\nprecomputed embedding vectors:")
    v1 = np.array([0.8, 0.1, 0.2])
    v2 = np.array([0.7, 0.2, 0.2])
    v3 = np.array([-0.4, 0.9, 0.0])
    for measure in ("cosine", "euclidean"):
        print(f"  {measure:<20} v1~v2 {vector_similarity(measure, v1, v2):6.3f}"
              f"   v1~v3 {vector_similarity(measure, v1, v3):6.3f}")


if __name__ == "__main__":
    main()
