"""HTTP endpoints exposing the ranking services over a shared read-only engine.

All state is loaded at startup and never mutated by a request; re-indexing
means restarting the process.
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import FastAPI, HTTPException, Query as QueryParam
from fastapi.staticfiles import StaticFiles

from . import __version__, corpus as corpus_mod
from .centrality import GraphTooLargeError
from .engine import SearchEngine
from .schemas import (
    AuthorCentrality,
    CentralityResponse,
    CorpusStatsResponse,
    DiscardInfo,
    HealthResponse,
    JournalCount,
    Provenance,
    RecommendResponse,
    RecommendationItem,
    ResultEntry,
    ResultFactors,
    SearchRequest,
    SearchResponse,
    ZonesResponse,
)

CENTRALITY_LIMIT = 50


def create_app(engine: SearchEngine, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="scirank", version=__version__)

    provenance = Provenance(
        corpus_id=engine.corpus.corpus_id,
        model_id=engine.model.corpus_id if engine.model is not None else None,
        engine_version=__version__,
    )

    def run(request: SearchRequest) -> SearchResponse:
        try:
            result = engine.search(
                request.query,
                ranking=request.ranking,
                chain_spec=request.chain,
                expand_k=request.expand,
                k=request.k,
                expansion_terms=tuple(request.expansion_terms),
            )
        except GraphTooLargeError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        ranked = result.ranked
        entries = []
        for rank, (doc_id, score) in enumerate(ranked.entries[: request.k], start=1):
            record = engine.corpus.get(doc_id)
            factors = None
            if result.factors is not None and doc_id in result.factors:
                f = result.factors[doc_id]
                factors = ResultFactors(
                    tfidf_norm=f.tfidf_norm,
                    journal_weight=f.journal_weight,
                    author_weight=f.author_weight,
                )
            entries.append(
                ResultEntry(
                    rank=rank,
                    doc_id=doc_id,
                    score=score,
                    title=record.title,
                    journal=record.journal_key,
                    authors=list(record.authors),
                    factors=factors,
                )
            )
        discarded = None
        if result.discarded is not None:
            discarded = DiscardInfo(
                total=result.discarded.total,
                zero_journal=result.discarded.zero_journal,
                zero_author=result.discarded.zero_author,
            )
        return SearchResponse(
            ranking_label=ranked.label,
            query=request.query,
            terms=list(ranked.query.terms),
            expansion_terms=list(ranked.query.expansion_terms),
            total=len(ranked.entries),
            entries=entries,
            discarded=discarded,
            provenance=provenance,
        )

    @app.post("/v1/search", response_model=SearchResponse)
    def search_endpoint(request: SearchRequest) -> SearchResponse:
        return run(request)

    @app.get("/v1/terms/recommend", response_model=RecommendResponse)
    def recommend_endpoint(
        q: str = QueryParam(min_length=1), k: int = QueryParam(default=10, ge=1)
    ) -> RecommendResponse:
        try:
            recommendations = engine.recommend_terms(q, k)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return RecommendResponse(
            query=q,
            recommendations=[
                RecommendationItem(term=r.term, strength=r.strength, low_confidence=r.low_confidence)
                for r in recommendations
            ],
            provenance=provenance,
        )

    @app.get("/v1/journals/zones", response_model=ZonesResponse)
    def zones_endpoint(q: str = QueryParam(min_length=1)) -> ZonesResponse:
        ranking, partition = engine.zones(q)
        if partition is None:
            return ZonesResponse(query=q, core=[], zone2=[], zone3=[], articles_per_zone=[0, 0, 0])
        def rows(keys):
            return [JournalCount(journal=key, count=ranking.count(key)) for key in keys]
        return ZonesResponse(
            query=q,
            core=rows(partition.core),
            zone2=rows(partition.zone2),
            zone3=rows(partition.zone3),
            articles_per_zone=list(partition.articles_per_zone),
        )

    @app.get("/v1/authors/centrality", response_model=CentralityResponse)
    def centrality_endpoint(q: str = QueryParam(min_length=1)) -> CentralityResponse:
        try:
            cmap = engine.centrality_map(q)
        except GraphTooLargeError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        top = sorted(cmap.items(), key=lambda item: (-item[1], item[0]))[:CENTRALITY_LIMIT]
        return CentralityResponse(
            query=q,
            authors=[AuthorCentrality(author=a, betweenness=v) for a, v in top],
            n_authors=len(cmap),
        )

    @app.get("/v1/corpus/stats", response_model=CorpusStatsResponse)
    def stats_endpoint() -> CorpusStatsResponse:
        s = corpus_mod.stats(engine.corpus)
        return CorpusStatsResponse(
            corpus_id=engine.corpus.corpus_id,
            n_docs=s.n_docs,
            n_distinct_journals=s.n_distinct_journals,
            n_distinct_authors=s.n_distinct_authors,
            n_distinct_controlled_terms=s.n_distinct_controlled_terms,
        )

    @app.get("/v1/health", response_model=HealthResponse)
    def health_endpoint() -> HealthResponse:
        return HealthResponse()

    if ui_dir:
        if not os.path.isdir(ui_dir):
            raise ValueError(f"ui directory not found: {ui_dir}")
        # mounted last so the API routes above keep precedence
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
