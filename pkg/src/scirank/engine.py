"""One entry point for every ranking mode, shared by the CLI and the service.

An engine bundles an immutable corpus, its index and an optional association
model; all searches are read-only, so one engine can serve concurrent callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import bradford, centrality, combine, recommend, search
from .corpus import Corpus, ingest
from .search import IndexedCorpus, Query, RankedList

RANKINGS = ("tfidf", "brad", "auth", "combined", "chain")


@dataclass(frozen=True)
class EngineResult:
    """Full (untruncated) ranking plus combined-score bookkeeping."""

    ranked: RankedList
    factors: Optional[dict[str, combine.ScoreFactors]] = None
    discarded: Optional[combine.DiscardSummary] = None


class SearchEngine:
    def __init__(
        self,
        corpus: Corpus,
        index: Optional[IndexedCorpus] = None,
        model: Optional[recommend.AssociationModel] = None,
        max_nodes: int = centrality.DEFAULT_MAX_NODES,
    ):
        self.corpus = corpus
        self.index = index if index is not None else search.build_index(corpus)
        self.model = model
        self.max_nodes = max_nodes

    @classmethod
    def from_corpus_file(
        cls,
        corpus_path,
        index_path=None,
        model_path=None,
        train_model: bool = False,
        max_nodes: int = centrality.DEFAULT_MAX_NODES,
    ) -> "SearchEngine":
        corpus = ingest(corpus_path)
        index = search.load_index(index_path) if index_path else None
        model = recommend.load_model(model_path) if model_path else None
        if model is None and train_model and corpus.n_docs:
            model = recommend.train(corpus)
        return cls(corpus, index=index, model=model, max_nodes=max_nodes)

    def _require_model(self) -> recommend.AssociationModel:
        if self.model is None:
            raise ValueError("no association model available; train or load one first")
        return self.model

    def parse_query(
        self, text: str, expand_k: int = 0, expansion_terms: tuple[str, ...] = ()
    ) -> Query:
        """Parse and optionally expand: explicit terms first, then the top-k
        recommendations when expand_k > 0."""
        query = Query.parse(text)
        terms = list(expansion_terms)
        if expand_k > 0:
            recs = recommend.recommend(self._require_model(), query, expand_k)
            terms.extend(r.term for r in recs)
        if terms:
            query = query.with_expansion(tuple(dict.fromkeys(terms)))
        return query

    def search(
        self,
        text: str,
        ranking: str = "tfidf",
        chain_spec: Optional[str] = None,
        expand_k: int = 0,
        k: int = 10,
        expansion_terms: tuple[str, ...] = (),
    ) -> EngineResult:
        """Run one ranking mode over the full result set.

        The returned ranking is untruncated; callers take the top-k they need.
        """
        if ranking not in RANKINGS:
            raise ValueError(f"unknown ranking {ranking!r}")
        if k < 1:
            raise ValueError("k must be >= 1")
        if ranking == "chain" and not chain_spec:
            raise ValueError("ranking 'chain' requires a chain spec")
        query = self.parse_query(text, expand_k, expansion_terms)
        full = max(self.index.n_docs, 1)

        if ranking == "chain":
            chain = combine.parse_chain(chain_spec)
            ranked = combine.run_chain(
                query, chain, self.index, self.corpus, model=self.model, max_nodes=self.max_nodes
            )
            return EngineResult(ranked=ranked)
        if ranking == "combined":
            result = combine.combined_rerank(
                query, self.index, self.corpus, max_nodes=self.max_nodes
            )
            return EngineResult(
                ranked=result.ranked, factors=result.factors, discarded=result.discarded
            )

        base = search.search_tfidf(self.index, query, k=full)
        if ranking == "tfidf":
            return EngineResult(ranked=base)
        if ranking == "brad":
            counts = bradford.journal_counts(base, self.corpus)
            return EngineResult(ranked=bradford.bradfordize(base, counts, self.corpus))
        graph = centrality.build_graph(base, self.corpus, max_nodes=self.max_nodes)
        cmap = centrality.betweenness(graph)
        return EngineResult(ranked=centrality.author_rerank(base, cmap, self.corpus))

    def recommend_terms(self, text: str, k: int = 10) -> list[recommend.Recommendation]:
        return recommend.recommend(self._require_model(), Query.parse(text), k)

    def zones(self, text: str, expand_k: int = 0) -> tuple[bradford.JournalRanking, Optional[bradford.BradfordPartition]]:
        base = self.search(text, ranking="tfidf", expand_k=expand_k).ranked
        ranking = bradford.journal_counts(base, self.corpus)
        partition = bradford.bradford_zones(ranking) if ranking else None
        return ranking, partition

    def centrality_map(self, text: str, expand_k: int = 0) -> dict[str, float]:
        base = self.search(text, ranking="tfidf", expand_k=expand_k).ranked
        graph = centrality.build_graph(base, self.corpus, max_nodes=self.max_nodes)
        return centrality.betweenness(graph)

    def coauthor_graph(self, text: str, expand_k: int = 0) -> centrality.CoauthorGraph:
        base = self.search(text, ranking="tfidf", expand_k=expand_k).ranked
        return centrality.build_graph(base, self.corpus, max_nodes=self.max_nodes)
