"""Bipartite graph matching for clean-clean entity resolution.

The package covers the full pipeline: ingesting entity-profile collections,
building weighted bipartite similarity graphs with learning-free similarity
functions, resolving them with eight matching algorithms, and evaluating
precision/recall/F1 with threshold sweeps, run-time benchmarks and
Friedman/Nemenyi rank statistics.
"""

from .errors import (
    ConfigurationError,
    DataFormatError,
    EmptyGraphError,
    ErbimatchError,
)
from .graph import (
    Matching,
    NodeRef,
    Side,
    SimilarityGraph,
    connected_components,
    min_max_normalize,
    prune_edges,
    read_edge_list,
    write_edge_list,
)
from .matchers import (
    ALGORITHMS,
    BahConfig,
    Basis,
    get_matcher,
    match_bah,
    match_bmc,
    match_cnc,
    match_exc,
    match_krc,
    match_rca,
    match_rsr,
    match_umc,
    read_matching,
    write_matching,
)
from .evaluation import (
    DEFAULT_GRID,
    BenchmarkResult,
    FriedmanResult,
    GroundTruth,
    PrfScore,
    SweepResult,
    benchmark,
    emit_report,
    evaluate,
    friedman_test,
    mean_ranks,
    nemenyi_cd,
    parse_report,
    sweep_report,
    threshold_sweep,
)
from .ingest import (
    DatasetBundle,
    GraphQualityFlags,
    detect_duplicates,
    quality_filter,
    read_embeddings,
    read_ground_truth,
    read_profiles,
    write_ground_truth,
    write_profiles,
)
from .profiles import EntityProfile, ProfileCollection
from .reference import reference_graph
from .simgen import (
    BagModel,
    CorpusStats,
    GramUnit,
    NGramGraph,
    SimFnConfig,
    WeightScheme,
    bag_similarity,
    build_bag_model,
    build_ngram_graph,
    build_similarity_graph,
    corpus_stats,
    edit_similarity,
    extract_ngrams,
    graph_similarity,
    token_set_similarity,
    vector_similarity,
)

__version__ = "0.1.0"
