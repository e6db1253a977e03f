"""Search term recommendation by co-word analysis.

Associations between free tokens (title + abstract) and controlled descriptors
are scored with the log-likelihood ratio of the document-level 2x2 contingency
table. Queries are expanded by OR-ing the top recommended descriptors.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Corpus
from .search import Query, normalize_term, tokenize

# associations backed by fewer co-occurrences than this are flagged
LOW_CONFIDENCE_EVIDENCE = 2

DEFAULT_EXPANSION_K = 4


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def log_likelihood_ratio(k11: int, k12: int, k21: int, k22: int) -> float:
    """G statistic of a 2x2 table, via the entropy form with 0*ln(0) = 0.

    Equals 2 * sum over cells of k * ln(k / E) where E is the cell expectation
    under independence of the marginals.
    """
    row1, row2 = k11 + k12, k21 + k22
    col1, col2 = k11 + k21, k12 + k22
    n = row1 + row2
    g = 2.0 * (
        _xlogx(k11) + _xlogx(k12) + _xlogx(k21) + _xlogx(k22)
        - _xlogx(row1) - _xlogx(row2) - _xlogx(col1) - _xlogx(col2)
        + _xlogx(n)
    )
    return max(g, 0.0)  # clamp float noise; G is non-negative


@dataclass(frozen=True)
class Association:
    free_term: str
    controlled_term: str
    strength: float
    evidence: int  # documents containing both terms

    @property
    def low_confidence(self) -> bool:
        return self.evidence < LOW_CONFIDENCE_EVIDENCE


@dataclass(frozen=True)
class Recommendation:
    term: str
    strength: float
    low_confidence: bool = False


class AssociationModel:
    """Trained free-term -> controlled-term associations, immutable once built."""

    def __init__(self, associations: list[Association], corpus_id: str = "in-memory"):
        self.corpus_id = corpus_id
        self.by_free_term: dict[str, tuple[Association, ...]] = {}
        grouped: dict[str, list[Association]] = {}
        for assoc in associations:
            grouped.setdefault(assoc.free_term, []).append(assoc)
        for term, group in grouped.items():
            group.sort(key=lambda a: (-a.strength, a.controlled_term))
            self.by_free_term[term] = tuple(group)

    def associations_for(self, free_term: str) -> tuple[Association, ...]:
        return self.by_free_term.get(free_term, ())

    def __len__(self) -> int:
        return sum(len(g) for g in self.by_free_term.values())

    def __iter__(self):
        for term in sorted(self.by_free_term):
            yield from self.by_free_term[term]


def train(corpus: Corpus) -> AssociationModel:
    """Learn associations from document-level co-occurrence counts.

    Pairs that never co-occur are absent from the model; a corpus without
    controlled terms yields an empty model.
    """
    if corpus.n_docs == 0:
        raise ValueError("cannot train on an empty corpus")
    n = corpus.n_docs
    df_free: Counter = Counter()
    df_ctrl: Counter = Counter()
    pair_counts: Counter = Counter()
    for record in corpus:
        free_tokens = set(tokenize(record.free_text))
        descriptors = {normalize_term(t) for t in record.controlled_terms}
        df_free.update(free_tokens)
        df_ctrl.update(descriptors)
        for token in free_tokens:
            for desc in descriptors:
                pair_counts[(token, desc)] += 1

    associations = []
    for (token, desc), k11 in pair_counts.items():
        k12 = df_free[token] - k11
        k21 = df_ctrl[desc] - k11
        k22 = n - df_free[token] - df_ctrl[desc] + k11
        strength = log_likelihood_ratio(k11, k12, k21, k22)
        associations.append(Association(token, desc, strength, k11))
    return AssociationModel(associations, corpus_id=corpus.corpus_id)


def recommend(model: AssociationModel, query: Query, k: int) -> list[Recommendation]:
    """Top-k controlled terms for a query, strengths summed across query tokens.

    Descriptors identical to a query token are excluded; unknown tokens
    contribute nothing. Ties break by ascending term string.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    strengths: dict[str, float] = {}
    evidence: dict[str, int] = {}
    query_tokens = set(query.terms)
    for token in dict.fromkeys(query.terms):
        for assoc in model.associations_for(token):
            if assoc.controlled_term in query_tokens:
                continue
            strengths[assoc.controlled_term] = strengths.get(assoc.controlled_term, 0.0) + assoc.strength
            evidence[assoc.controlled_term] = max(evidence.get(assoc.controlled_term, 0), assoc.evidence)
    ranked = sorted(strengths.items(), key=lambda item: (-item[1], item[0]))
    return [
        Recommendation(term, strength, evidence[term] < LOW_CONFIDENCE_EVIDENCE)
        for term, strength in ranked[:k]
    ]


def expand(query: Query, model: AssociationModel, k: int = DEFAULT_EXPANSION_K) -> Query:
    """Attach the top-k recommended descriptors as expansion terms; k=0 is a no-op."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return query
    terms = tuple(rec.term for rec in recommend(model, query, k))
    return query.with_expansion(terms)


def save_model(model: AssociationModel, path) -> None:
    """Write TSV triples: free_term, controlled_term, strength (6 decimals)."""
    with open(path, "w", encoding="utf-8") as fh:
        for assoc in model:
            fh.write(f"{assoc.free_term}\t{assoc.controlled_term}\t{assoc.strength:.6f}\n")


def load_model(path, corpus_id: str = "loaded") -> AssociationModel:
    """Read a model saved by save_model.

    The persisted format carries no evidence counts, so loaded associations
    are never flagged low-confidence.
    """
    associations = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"line {line_no}: expected 3 tab-separated fields")
            free_term, controlled_term, strength = parts
            associations.append(
                Association(free_term, controlled_term, float(strength), LOW_CONFIDENCE_EVIDENCE)
            )
    return AssociationModel(associations, corpus_id=corpus_id)
