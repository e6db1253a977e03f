"""Inverted index and the tf-idf baseline ranking.

Scoring: score(d) = sum over matching terms t of (1 + ln tf(t,d)) * ln(N / df(t)).
Plain query tokens match the free-text field (title + abstract), expansion
terms match whole controlled descriptors. OR semantics; zero-score documents
are excluded. Ties break by ascending doc_id.
"""

from __future__ import annotations

import math
import pickle
import re
from collections import Counter
from dataclasses import dataclass, replace

from .corpus import Corpus

TFIDF = "TFIDF"
STR = "STR"
BRAD = "BRAD"
AUTH = "AUTH"
COMBINED = "COMBINED"
CHAIN = "CHAIN"

RANKING_LABELS = (TFIDF, STR, BRAD, AUTH, COMBINED, CHAIN)

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

INDEX_MAGIC = b"SCIRANK1"


def tokenize(text: str) -> list[str]:
    """Lowercase, split on any non-alphanumeric, drop tokens shorter than 2."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2]


def normalize_term(term: str) -> str:
    """Canonical form for controlled descriptors and expansion terms."""
    return " ".join(term.lower().split())


@dataclass(frozen=True)
class Query:
    raw: str
    terms: tuple[str, ...]
    expansion_terms: tuple[str, ...] = ()

    @classmethod
    def parse(cls, raw: str) -> "Query":
        return cls(raw=raw, terms=tuple(tokenize(raw)))

    def with_expansion(self, terms: tuple[str, ...]) -> "Query":
        # keep expansion disjoint from the original tokens
        kept = tuple(t for t in terms if t not in self.terms)
        return replace(self, expansion_terms=kept)


@dataclass(frozen=True)
class RankedList:
    """Ordered (doc_id, score) result set; scores descending, doc_ids unique."""

    query: Query
    entries: tuple[tuple[str, float], ...]
    label: str = TFIDF

    def __post_init__(self):
        if self.label not in RANKING_LABELS:
            raise ValueError(f"unknown ranking label {self.label!r}")
        seen = set()
        prev = math.inf
        for doc_id, score in self.entries:
            if doc_id in seen:
                raise ValueError(f"duplicate doc_id {doc_id!r} in ranked list")
            seen.add(doc_id)
            if score > prev:
                raise ValueError("entries must be sorted by score descending")
            prev = score

    def doc_ids(self) -> list[str]:
        return [doc_id for doc_id, _ in self.entries]

    def top(self, k: int) -> "RankedList":
        return replace(self, entries=self.entries[:k])

    def __len__(self) -> int:
        return len(self.entries)


class IndexedCorpus:
    """Per-field inverted index over an immutable corpus.

    Fields: ``freetext`` holds title+abstract tokens, ``controlled`` holds
    whole (normalized) descriptors, ``author`` and ``journal`` hold exact
    author strings and journal keys.
    """

    FIELDS = ("freetext", "controlled", "author", "journal")

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.postings: dict[str, dict[str, dict[str, int]]] = {f: {} for f in self.FIELDS}
        for record in corpus:
            self._add("freetext", record.doc_id, tokenize(record.free_text))
            self._add("controlled", record.doc_id, [normalize_term(t) for t in record.controlled_terms])
            self._add("author", record.doc_id, list(record.authors))
            if record.journal_key is not None:
                self._add("journal", record.doc_id, [record.journal_key])

    def _add(self, fld: str, doc_id: str, terms: list[str]) -> None:
        for term, freq in Counter(terms).items():
            self.postings[fld].setdefault(term, {})[doc_id] = freq

    @property
    def n_docs(self) -> int:
        return self.corpus.n_docs

    def df(self, term: str, fld: str = "freetext") -> int:
        return len(self.postings[fld].get(term, ()))

    def lookup(self, term: str, fld: str = "freetext") -> dict[str, int]:
        return self.postings[fld].get(term, {})


def build_index(corpus: Corpus) -> IndexedCorpus:
    return IndexedCorpus(corpus)


def search_tfidf(index: IndexedCorpus, query: Query, k: int) -> RankedList:
    """Top-k tf-idf search with OR semantics over terms and expansion terms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = index.n_docs
    scores: dict[str, float] = {}
    fields = [(t, "freetext") for t in dict.fromkeys(query.terms)]
    fields += [(t, "controlled") for t in dict.fromkeys(normalize_term(e) for e in query.expansion_terms)]
    for term, fld in fields:
        postings = index.lookup(term, fld)
        if not postings:
            continue
        idf = math.log(n / len(postings))
        for doc_id, freq in postings.items():
            scores[doc_id] = scores.get(doc_id, 0.0) + (1.0 + math.log(freq)) * idf
    entries = sorted(
        ((doc_id, score) for doc_id, score in scores.items() if score > 0.0),
        key=lambda e: (-e[1], e[0]),
    )
    label = STR if query.expansion_terms else TFIDF
    return RankedList(query=query, entries=tuple(entries[:k]), label=label)


def normalize(ranked: RankedList) -> RankedList:
    """Map scores onto [0,1] by dividing by the maximum; order unchanged."""
    if not ranked.entries:
        return ranked
    top = max(score for _, score in ranked.entries)
    if top <= 0.0:
        return ranked
    entries = tuple((doc_id, score / top) for doc_id, score in ranked.entries)
    return replace(ranked, entries=entries)


def save_index(index: IndexedCorpus, path) -> None:
    """Persist an index as an opaque versioned blob."""
    with open(path, "wb") as fh:
        fh.write(INDEX_MAGIC)
        pickle.dump({"corpus": index.corpus, "postings": index.postings}, fh)


def load_index(path) -> IndexedCorpus:
    with open(path, "rb") as fh:
        magic = fh.read(len(INDEX_MAGIC))
        if magic != INDEX_MAGIC:
            raise ValueError(f"not a scirank index file: {path}")
        payload = pickle.load(fh)
    index = IndexedCorpus.__new__(IndexedCorpus)
    index.corpus = payload["corpus"]
    index.postings = payload["postings"]
    return index
