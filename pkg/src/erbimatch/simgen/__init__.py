"""Learning-free similarity functions and similarity-graph construction."""

from .bags import (
    BAG_MEASURES,
    BagModel,
    CorpusStats,
    WeightScheme,
    bag_similarity,
    build_bag_model,
    corpus_stats,
)
from .builder import SimFnConfig, build_similarity_graph, model_coverage
from .ngram_graphs import (
    GRAPH_MEASURES,
    NGramGraph,
    build_ngram_graph,
    graph_similarity,
    value_ngram_graph,
)
from .strings import EDIT_MEASURES, edit_similarity
from .text import GramUnit, extract_ngrams, normalize_characters, tokenize
from .tokens import TOKEN_MEASURES, local_alignment_similarity, token_set_similarity
from .vectors import (
    VECTOR_MEASURES,
    cosine_similarity,
    euclidean_similarity,
    vector_similarity,
)
