"""Service composition: sequential filter chains and the combined score.

A chain starts from the tf-idf result set (expanded first when it contains a
term-recommendation step) and narrows it step by step: journal steps keep the
core zone, the top-m journals or one named journal; author steps keep the
documents of the most central authors. The combined score multiplies the
normalized tf-idf score with the journal and author weighting factors; a zero
factor discards the document.

Chain spec syntax (CLI and HTTP): comma-separated steps, e.g.
``str:4,brad:core,auth:1``. Journal and author steps also accept an explicit
entity filter: ``brad:j=<journal_key>``, ``auth:a=<author name>``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from . import bradford, centrality
from .corpus import BibRecord, Corpus
from .recommend import AssociationModel, expand
from .search import CHAIN, COMBINED, IndexedCorpus, Query, RankedList, normalize, search_tfidf


@dataclass(frozen=True)
class StrStep:
    k: int  # number of expansion terms; 0 keeps the query unchanged

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("str step requires k >= 0")


@dataclass(frozen=True)
class BradStep:
    mode: str = "core"  # "core", "top" or "journal"
    m: int = 0
    journal: str = ""

    def __post_init__(self):
        if self.mode not in ("core", "top", "journal"):
            raise ValueError(f"unknown brad mode {self.mode!r}")
        if self.mode == "top" and self.m < 1:
            raise ValueError("brad step requires a positive journal count")
        if self.mode == "journal" and not self.journal:
            raise ValueError("brad step requires a journal key")


@dataclass(frozen=True)
class AuthStep:
    mode: str = "top"  # "top" or "author"
    a: int = 1
    author: str = ""

    def __post_init__(self):
        if self.mode not in ("top", "author"):
            raise ValueError(f"unknown auth mode {self.mode!r}")
        if self.mode == "top" and self.a < 1:
            raise ValueError("auth step requires a positive author count")
        if self.mode == "author" and not self.author:
            raise ValueError("auth step requires an author name")


ChainStep = Union[StrStep, BradStep, AuthStep]


@dataclass(frozen=True)
class FilterChain:
    steps: tuple[ChainStep, ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a filter chain needs at least one step")


def parse_chain(spec: str) -> FilterChain:
    """Parse a comma-separated chain spec; raises ValueError naming the bad step."""
    steps: list[ChainStep] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty step in chain spec {spec!r}")
        name, _, arg = part.partition(":")
        name = name.strip().lower()
        arg = arg.strip()
        try:
            if name == "str":
                steps.append(StrStep(int(arg) if arg else 0))
            elif name == "brad":
                if not arg or arg == "core":
                    steps.append(BradStep(mode="core"))
                elif arg.startswith("j="):
                    steps.append(BradStep(mode="journal", journal=arg[2:].strip()))
                else:
                    steps.append(BradStep(mode="top", m=int(arg)))
            elif name == "auth":
                if not arg:
                    steps.append(AuthStep(mode="top", a=1))
                elif arg.startswith("a="):
                    steps.append(AuthStep(mode="author", author=arg[2:].strip()))
                else:
                    steps.append(AuthStep(mode="top", a=int(arg)))
            else:
                raise ValueError(f"unknown step {name!r}")
        except ValueError as exc:
            raise ValueError(f"invalid chain step {part!r}: {exc}") from exc
    return FilterChain(tuple(steps))


def chain_to_spec(chain: FilterChain) -> str:
    parts = []
    for step in chain.steps:
        if isinstance(step, StrStep):
            parts.append(f"str:{step.k}")
        elif isinstance(step, BradStep):
            if step.mode == "core":
                parts.append("brad:core")
            elif step.mode == "top":
                parts.append(f"brad:{step.m}")
            else:
                parts.append(f"brad:j={step.journal}")
        else:
            parts.append(f"auth:{step.a}" if step.mode == "top" else f"auth:a={step.author}")
    return ",".join(parts)


def _filtered(result: RankedList, keep: set[str]) -> RankedList:
    entries = tuple(e for e in result.entries if e[0] in keep)
    return replace(result, entries=entries)


def _apply_brad(result: RankedList, step: BradStep, corpus: Corpus) -> RankedList:
    ranking = bradford.journal_counts(result, corpus)
    if not ranking:
        return replace(result, entries=())
    if step.mode == "core":
        selected = set(bradford.bradford_zones(ranking).core)
    elif step.mode == "top":
        selected = {key for key, _ in ranking.entries[: step.m]}
    else:
        selected = {step.journal}
    keep = {
        doc_id for doc_id, _ in result.entries if corpus.get(doc_id).journal_key in selected
    }
    return bradford.bradfordize(_filtered(result, keep), ranking, corpus)


def _max_betweenness_author(record: BibRecord, cmap: dict[str, float]) -> Optional[str]:
    mapped = [a for a in record.authors if a in cmap]
    if not mapped:
        return None
    return min(mapped, key=lambda a: (-cmap[a], a))


def _apply_auth(result: RankedList, step: AuthStep, corpus: Corpus, max_nodes: int) -> RankedList:
    graph = centrality.build_graph(result, corpus, max_nodes=max_nodes)
    cmap = centrality.betweenness(graph)
    if step.mode == "top":
        ranked_authors = sorted(cmap, key=lambda a: (-cmap[a], a))
        selected = set(ranked_authors[: step.a])
        keep = {
            doc_id
            for doc_id, _ in result.entries
            if _max_betweenness_author(corpus.get(doc_id), cmap) in selected
        }
    else:
        keep = {doc_id for doc_id, _ in result.entries if step.author in corpus.get(doc_id).authors}
    return centrality.author_rerank(_filtered(result, keep), cmap, corpus)


def run_chain(
    query: Query,
    chain: FilterChain,
    index: IndexedCorpus,
    corpus: Corpus,
    model: Optional[AssociationModel] = None,
    max_nodes: int = centrality.DEFAULT_MAX_NODES,
) -> RankedList:
    """Apply a filter chain to a query and return the full surviving set.

    Term-recommendation steps expand the query before the base search wherever
    they appear in the chain (the largest k wins); journal and author steps
    then filter and re-order the current set in chain order. Any step may
    empty the set.
    """
    expansion_k = max((s.k for s in chain.steps if isinstance(s, StrStep)), default=0)
    if expansion_k > 0:
        if model is None:
            raise ValueError("chain contains a term-recommendation step but no model was given")
        query = expand(query, model, expansion_k)
    current = search_tfidf(index, query, k=max(index.n_docs, 1))
    for step in chain.steps:
        if isinstance(step, StrStep):
            continue
        if isinstance(step, BradStep):
            current = _apply_brad(current, step, corpus)
        else:
            current = _apply_auth(current, step, corpus, max_nodes)
    return replace(current, label=CHAIN)


@dataclass(frozen=True)
class ScoreFactors:
    tfidf_norm: float
    journal_weight: float
    author_weight: float

    @property
    def product(self) -> float:
        return self.tfidf_norm * self.journal_weight * self.author_weight


@dataclass(frozen=True)
class DiscardSummary:
    """Documents dropped by the zero-factor rule, with per-factor counts."""

    total: int = 0
    zero_journal: int = 0
    zero_author: int = 0


@dataclass(frozen=True)
class CombinedResult:
    ranked: RankedList
    factors: dict[str, ScoreFactors]
    discarded: DiscardSummary


def combined_score(
    record: BibRecord,
    tfidf_norm: float,
    ranking: bradford.JournalRanking,
    cmap: dict[str, float],
) -> float:
    """score = tfidf_norm * W_j * W_a; exact product of the three factors."""
    return (
        tfidf_norm
        * bradford.journal_weight(record, ranking)
        * centrality.author_weight(record, cmap)
    )


def combined_rerank(
    query: Query,
    index: IndexedCorpus,
    corpus: Corpus,
    model: Optional[AssociationModel] = None,
    expand_k: int = 0,
    max_nodes: int = centrality.DEFAULT_MAX_NODES,
) -> CombinedResult:
    """Score the full tf-idf result set by tfidf_norm * W_j * W_a.

    The journal ranking and the centrality map are derived from the complete
    result set, not a truncation. Zero-score documents are discarded and
    tallied per factor.
    """
    if expand_k > 0:
        if model is None:
            raise ValueError("expansion requested but no model was given")
        query = expand(query, model, expand_k)
    base = search_tfidf(index, query, k=max(index.n_docs, 1))
    norm = normalize(base)
    ranking = bradford.journal_counts(base, corpus)
    graph = centrality.build_graph(base, corpus, max_nodes=max_nodes)
    cmap = centrality.betweenness(graph)

    kept: list[tuple[str, float]] = []
    factors: dict[str, ScoreFactors] = {}
    total = zero_journal = zero_author = 0
    for doc_id, tfidf_norm in norm.entries:
        record = corpus.get(doc_id)
        f = ScoreFactors(
            tfidf_norm=tfidf_norm,
            journal_weight=bradford.journal_weight(record, ranking),
            author_weight=centrality.author_weight(record, cmap),
        )
        if f.product > 0.0:
            kept.append((doc_id, f.product))
            factors[doc_id] = f
        else:
            total += 1
            if f.journal_weight == 0.0:
                zero_journal += 1
            if f.author_weight == 0.0:
                zero_author += 1
    kept.sort(key=lambda e: (-e[1], e[0]))
    ranked = RankedList(query=query, entries=tuple(kept), label=COMBINED)
    return CombinedResult(
        ranked=ranked,
        factors=factors,
        discarded=DiscardSummary(total=total, zero_journal=zero_journal, zero_author=zero_author),
    )
