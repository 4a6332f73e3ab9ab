"""Sparse n-gram frequency vectors (bag models) and their similarities.

An entity's "document" is the pool of n-grams of all its relevant attribute
values (grams never span value boundaries).  TF weights are gram frequency
over the document's total gram count; TF-IDF multiplies by
``ln(|E| / (df + 1))`` with document frequencies taken from the entity's own
collection.  Negative IDF (a gram in more than |E|-1 documents) is kept
as-is; downstream min-max normalization absorbs it.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from ..profiles import EntityProfile
from .text import GramUnit, extract_ngrams

__all__ = [
    "WeightScheme",
    "CorpusStats",
    "BagModel",
    "corpus_stats",
    "build_bag_model",
    "bag_similarity",
    "BAG_MEASURES",
]


class WeightScheme(enum.Enum):
    TF = "tf"
    TFIDF = "tfidf"


@dataclass(frozen=True)
class CorpusStats:
    """Per-collection document counts and per-gram document frequencies."""

    doc_count: int
    document_frequency: dict[str, int] = field(default_factory=dict)

    def df(self, gram: str) -> int:
        return self.document_frequency.get(gram, 0)

    def idf(self, gram: str) -> float:
        return math.log(self.doc_count / (self.df(gram) + 1))


@dataclass(frozen=True)
class BagModel:
    """Sparse gram->weight vector; zero entries are omitted."""

    unit: GramUnit
    n: int
    scheme: WeightScheme
    weights: dict[str, float] = field(default_factory=dict)

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))


def _profile_grams(profile: EntityProfile, unit: GramUnit, n: int,
                   attribute: str | None) -> Counter:
    grams: Counter = Counter()
    for value in profile.values(attribute):
        grams.update(extract_ngrams(value, unit, n))
    return grams


def corpus_stats(collection: Iterable[EntityProfile], unit: GramUnit, n: int,
                 attribute: str | None = None) -> CorpusStats:
    """Document frequencies over one collection (documents = entities)."""
    df: Counter = Counter()
    count = 0
    for profile in collection:
        count += 1
        df.update(set(_profile_grams(profile, unit, n, attribute)))
    return CorpusStats(doc_count=count, document_frequency=dict(df))


def build_bag_model(profile: EntityProfile, unit: GramUnit, n: int,
                    scheme: WeightScheme, stats: CorpusStats,
                    attribute: str | None = None) -> BagModel:
    """Bag model of one entity; empty profiles give an empty model."""
    grams = _profile_grams(profile, unit, n, attribute)
    total = sum(grams.values())
    weights: dict[str, float] = {}
    if total:
        for gram, freq in grams.items():
            tf = freq / total
            if scheme is WeightScheme.TF:
                weights[gram] = tf
            else:
                weights[gram] = tf * stats.idf(gram)
    return BagModel(unit=unit, n=n, scheme=scheme, weights=weights)


def _require_compatible(bm1: BagModel, bm2: BagModel) -> None:
    if bm1.unit is not bm2.unit or bm1.n != bm2.n:
        raise ValueError("bag models must share gram unit and order")


def _bag_cosine(bm1, bm2, stats1, stats2):
    dot = sum(w * bm2.weights.get(g, 0.0) for g, w in bm1.weights.items())
    denom = bm1.norm() * bm2.norm()
    if denom == 0.0:
        return 0.0
    return dot / denom


def _bag_jaccard(bm1, bm2, stats1, stats2):
    support1 = bm1.weights.keys()
    support2 = bm2.weights.keys()
    union = len(support1 | support2)
    if union == 0:
        return 0.0
    return len(support1 & support2) / union


def _bag_generalized_jaccard(bm1, bm2, stats1, stats2):
    grams = bm1.weights.keys() | bm2.weights.keys()
    numer = sum(min(bm1.weights.get(g, 0.0), bm2.weights.get(g, 0.0))
                for g in grams)
    denom = sum(max(bm1.weights.get(g, 0.0), bm2.weights.get(g, 0.0))
                for g in grams)
    if denom == 0.0:
        return 0.0
    return numer / denom


def _bag_arcs(bm1, bm2, stats1, stats2):
    if stats1 is None or stats2 is None:
        raise ValueError("arcs needs the corpus statistics of both collections")
    total = 0.0
    for gram in bm1.weights.keys() & bm2.weights.keys():
        # a gram unique to one document per side would make the denominator
        # log(1) = 0; clamping the df product at 2 caps the contribution at 1
        product = max(stats1.df(gram) * stats2.df(gram), 2)
        total += math.log(2) / math.log(product)
    return total


BAG_MEASURES = {
    "cosine": _bag_cosine,
    "jaccard": _bag_jaccard,
    "generalized_jaccard": _bag_generalized_jaccard,
    "arcs": _bag_arcs,
}


def bag_similarity(measure: str, bm1: BagModel, bm2: BagModel,
                   stats1: CorpusStats | None = None,
                   stats2: CorpusStats | None = None) -> float:
    """Compare two bag models; disjoint supports give 0.0.

    ``arcs`` ignores the stored weights and scores shared grams by rarity,
    so it needs both collections' statistics.
    """
    try:
        fn = BAG_MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown bag measure {measure!r}; expected one of "
                         + ", ".join(sorted(BAG_MEASURES))) from None
    _require_compatible(bm1, bm2)
    return float(fn(bm1, bm2, stats1, stats2))
