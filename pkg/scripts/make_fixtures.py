#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixtures (corpus, queries, judgments, runs).

The corpus is engineered so that each ranking service has something to show:
per topic there are well-indexed "core" documents in high-yield journals by
collaborating authors, keyword-stuffed decoys that climb the tf-idf ranking,
and fringe documents only reachable through expansion terms. Three topics get
deliberately noisy ratings so the agreement filter has work to do.

Deterministic; run from the repository root:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from scirank import corpus as corpus_mod  # noqa: E402
from scirank import evaluation  # noqa: E402
from scirank.corpus import BibRecord, Journal  # noqa: E402
from scirank.engine import SearchEngine  # noqa: E402

FIXTURES = ROOT / "fixtures"

TOPICS = [
    ("unemployment", ["labor market policy", "employment promotion"]),
    ("financial crisis", ["stock market", "economic problems"]),
    ("migration", ["migration policy", "social integration"]),
    ("education", ["educational inequality", "school system"]),
    ("poverty", ["social welfare", "income distribution"]),
    ("globalization", ["world trade", "division of labor"]),
    ("climate", ["environmental policy", "sustainable development"]),
    ("democracy", ["political participation", "civil society"]),
    ("health", ["health care system", "medical sociology"]),
    ("religion", ["secularization", "religious communities"]),
]

# topics whose raters are made to disagree (dropped by the kappa filter)
NOISY_TOPICS = {"democracy", "health", "religion"}

FIRST = ["Anna", "Jonas", "Miriam", "Felix", "Clara", "David", "Hanna", "Leon",
         "Sofia", "Paul", "Ida", "Emil", "Greta", "Oskar", "Lena", "Bruno"]
LAST = ["Becker", "Weber", "Hoffmann", "Vogel", "Krüger", "Seidel", "Brandt",
        "Lorenz", "Winter", "Albrecht", "Mertens", "Janssen", "Petersen"]

FILLER = [
    "empirical findings from a regional survey",
    "a longitudinal study of structural change",
    "comparative evidence across member states",
    "methodological notes on panel data",
    "secondary analysis of household records",
    "qualitative interviews and field notes",
]

ASPECTS = ["empirical", "longitudinal", "comparative", "methodological", "regional", "qualitative"]

RATERS = ["r1", "r2", "r3", "r4", "r5"]

# 5-rater splits used on the noisy topics; every row has pairwise agreement 0.4
NOISY_PATTERNS = [
    (1, 0, 1, 0, 0),
    (0, 1, 0, 1, 1),
    (1, 1, 0, 0, 0),
    (0, 0, 1, 1, 1),
]


def author_name(i: int) -> str:
    return f"{FIRST[i % len(FIRST)]} {LAST[(i * 7 + i // len(FIRST)) % len(LAST)]}-{i:03d}"


def build_topic_docs(topic_no: int, query: str, descriptors: list[str]) -> list[BibRecord]:
    base = topic_no * 40  # distinct author pool per topic
    hub = author_name(base)
    leaves = [author_name(base + 1 + i) for i in range(6)]
    outer = [author_name(base + 10 + i) for i in range(6)]
    decoy_authors = [author_name(base + 20 + i) for i in range(5)]

    title_word = query[0].upper() + query[1:]
    j_core = Journal(f"Journal of {title_word} Studies", issn=f"{1000 + topic_no}-{2000 + topic_no}")
    j_mid = Journal(f"{title_word} Quarterly", issn=f"{3000 + topic_no}-{4000 + topic_no}")
    j_small = Journal(f"{title_word} Working Papers")  # name-keyed, no ISSN
    j_misc = Journal("Miscellaneous Review")

    docs = []
    prefix = f"t{topic_no:02d}"

    # 12 core documents: descriptor-indexed, skewed over three journals,
    # written inside one collaboration cluster (hub + bridges + outer ring)
    for i in range(12):
        if i < 6:
            authors = (hub, leaves[i])
            journal = j_core
        else:
            authors = (leaves[i - 6], outer[i - 6])
            journal = j_mid if i < 10 else j_small
        docs.append(
            BibRecord(
                doc_id=f"{prefix}-core-{i:02d}",
                title=f"{title_word} and {ASPECTS[i % len(ASPECTS)]} perspectives",
                abstract=f"This article studies {query} using {FILLER[i % len(FILLER)]}.",
                controlled_terms=tuple(descriptors),
                authors=authors,
                journal=journal,
                year=1995 + (i * 3 + topic_no) % 15,
            )
        )

    # 5 decoys: keyword-stuffed, unindexed, single-authored, poorly sourced
    for i in range(5):
        stuffed = f"{title_word} report: {query} statistics on {query}"
        docs.append(
            BibRecord(
                doc_id=f"{prefix}-decoy-{i:02d}",
                title=stuffed,
                abstract=f"Notes on {query}; tables about {query}.",
                controlled_terms=(),
                authors=(decoy_authors[i],),
                journal=j_misc if i < 3 else None,
                year=1995 + (i * 5 + topic_no) % 15,
            )
        )

    # 3 fringe documents: descriptor-indexed but the query term never occurs,
    # so only an expanded query reaches them
    for i in range(3):
        docs.append(
            BibRecord(
                doc_id=f"{prefix}-fringe-{i:02d}",
                title=f"Indexed observations, series {topic_no}.{i}",
                abstract=f"A descriptor-led review drawing on {FILLER[(i + 2) % len(FILLER)]}.",
                controlled_terms=tuple(descriptors),
                authors=(outer[i], outer[i + 3]),
                journal=j_small if i == 0 else None,
                year=1995 + (i * 4 + topic_no) % 15,
            )
        )
    return docs


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "runs").mkdir(exist_ok=True)

    records = []
    for topic_no, (query, descriptors) in enumerate(TOPICS, start=1):
        records.extend(build_topic_docs(topic_no, query, descriptors))
    corpus_path = FIXTURES / "corpus200.jsonl"
    corpus_mod.serialize(records, corpus_path)
    print(f"wrote {corpus_path} ({len(records)} docs)")

    queries = [query for query, _ in TOPICS]
    (FIXTURES / "queries.txt").write_text("\n".join(queries) + "\n", encoding="utf-8")

    # four runs over the bundled corpus
    engine = SearchEngine.from_corpus_file(corpus_path, train_model=True)
    runs: dict[str, dict] = {"tfidf": {}, "str": {}, "brad": {}, "auth": {}}
    for query in queries:
        runs["tfidf"][query] = engine.search(query, ranking="tfidf").ranked.top(10)
        runs["str"][query] = engine.search(query, ranking="tfidf", expand_k=4).ranked.top(10)
        runs["brad"][query] = engine.search(query, ranking="brad").ranked.top(10)
        runs["auth"][query] = engine.search(query, ranking="auth").ranked.top(10)
    for service, run in runs.items():
        path = FIXTURES / "runs" / f"{service}.tsv"
        evaluation.save_run(path, run)
        print(f"wrote {path}")

    # judgments over the union of top-10 documents; relevance = carries one of
    # the topic's descriptors; three topics get alternating disagreement rows
    by_id = {r.doc_id: r for r in records}
    lines = []
    for query, descriptors in TOPICS:
        judged = sorted({doc_id for run in runs.values() for doc_id in run[query].doc_ids()})
        wanted = set(descriptors)
        for d_no, doc_id in enumerate(judged):
            relevant = bool(wanted & set(by_id[doc_id].controlled_terms))
            if query in NOISY_TOPICS:
                ratings = NOISY_PATTERNS[d_no % len(NOISY_PATTERNS)]
            else:
                ratings = tuple(int(relevant) for _ in RATERS)
            for rater, rating in zip(RATERS, ratings):
                lines.append(f"{query}\t{doc_id}\t{rater}\t{rating}")
    (FIXTURES / "judgments.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURES / 'judgments.tsv'} ({len(lines)} ratings)")


if __name__ == "__main__":
    main()
