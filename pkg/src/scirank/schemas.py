"""Pydantic request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .combine import parse_chain


class SearchRequest(BaseModel):
    query: str = Field(min_length=1)
    ranking: Literal["tfidf", "brad", "auth", "combined", "chain"] = "tfidf"
    chain: Optional[str] = None
    expand: int = Field(default=0, ge=0, description="number of recommended expansion terms")
    expansion_terms: list[str] = Field(default_factory=list, description="explicitly selected expansion terms")
    k: int = Field(default=10, ge=1, description="result limit")

    @field_validator("expansion_terms")
    @classmethod
    def _terms_non_empty(cls, value: list[str]) -> list[str]:
        if any(not t.strip() for t in value):
            raise ValueError("expansion terms must be non-empty")
        return value

    @field_validator("chain")
    @classmethod
    def _chain_parses(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_chain(value)  # ValueError -> 422 naming this field
        return value

    @model_validator(mode="after")
    def _chain_required(self) -> "SearchRequest":
        if self.ranking == "chain" and not self.chain:
            raise ValueError("ranking 'chain' requires a chain spec")
        return self


class ResultFactors(BaseModel):
    tfidf_norm: float
    journal_weight: float
    author_weight: float


class ResultEntry(BaseModel):
    rank: int
    doc_id: str
    score: float
    title: str
    journal: Optional[str] = None
    authors: list[str] = []
    factors: Optional[ResultFactors] = None


class DiscardInfo(BaseModel):
    total: int
    zero_journal: int
    zero_author: int


class Provenance(BaseModel):
    corpus_id: str
    model_id: Optional[str] = None
    engine_version: str


class SearchResponse(BaseModel):
    ranking_label: str
    query: str
    terms: list[str]
    expansion_terms: list[str]
    total: int
    entries: list[ResultEntry]
    discarded: Optional[DiscardInfo] = None
    provenance: Provenance


class RecommendationItem(BaseModel):
    term: str
    strength: float
    low_confidence: bool


class RecommendResponse(BaseModel):
    query: str
    recommendations: list[RecommendationItem]
    provenance: Provenance


class JournalCount(BaseModel):
    journal: str
    count: int


class ZonesResponse(BaseModel):
    query: str
    core: list[JournalCount]
    zone2: list[JournalCount]
    zone3: list[JournalCount]
    articles_per_zone: list[int]


class AuthorCentrality(BaseModel):
    author: str
    betweenness: float


class CentralityResponse(BaseModel):
    query: str
    authors: list[AuthorCentrality]
    n_authors: int


class CorpusStatsResponse(BaseModel):
    corpus_id: str
    n_docs: int
    n_distinct_journals: int
    n_distinct_authors: int
    n_distinct_controlled_terms: int


class HealthResponse(BaseModel):
    status: str = "ok"
