"""Release gate: one test per acceptance criterion, at its stated tolerance.

A summary line per criterion is printed at the end of the pytest run (see
conftest.pytest_terminal_summary).
"""

import random
import time
from collections import Counter

import pytest

from scirank import bradford, centrality, combine, evaluation, recommend, search
from scirank.corpus import BibRecord, Corpus, Journal
from scirank.search import Query, RankedList, search_tfidf, tokenize
from oracles import (
    bruteforce_betweenness,
    bruteforce_tfidf,
    fleiss_direct,
    llr_direct,
)


def graph_from(nodes, edges):
    adjacency = {v: set() for v in nodes}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    return centrality.CoauthorGraph(
        nodes=frozenset(nodes),
        adjacency={v: frozenset(n) for v, n in adjacency.items()},
        query=Query.parse("q"),
    )


def test_betweenness_oracle_equivalence():
    """>= 100 random graphs with <= 7 nodes match the enumeration oracle (1e-9, < 10 s)."""
    rng = random.Random(2024)
    started = time.perf_counter()
    checked = 0
    for _ in range(120):
        n = rng.randint(1, 7)
        nodes = [f"n{i}" for i in range(n)]
        density = rng.choice([0.2, 0.4, 0.6, 0.9])
        edges = [
            (a, b)
            for i, a in enumerate(nodes)
            for b in nodes[i + 1:]
            if rng.random() < density
        ]
        got = centrality.betweenness(graph_from(nodes, edges))
        want = bruteforce_betweenness(nodes, edges)
        for v in nodes:
            assert got[v] == pytest.approx(want[v], abs=1e-9)
        checked += 1
    elapsed = time.perf_counter() - started
    assert checked >= 100
    assert elapsed < 10.0, f"betweenness check took {elapsed:.1f}s"


def test_combined_score_audit(corpus200, engine200, queries200):
    """COMBINED scores equal independently recomputed factor products (1e-12)."""
    assert corpus200.n_docs == 200
    assert len(queries200) == 10
    audited_docs = 0
    audited_discards = 0
    for raw in queries200:
        query = Query.parse(raw)
        result = combine.combined_rerank(query, engine200.index, corpus200)

        # independent pipeline: corpus-scan scores, tally, enumerated paths
        scores = bruteforce_tfidf(corpus200, query)
        top = max(scores.values())
        norm = {d: s / top for d, s in scores.items()}
        counts = Counter()
        for d in scores:
            key = corpus200.get(d).journal_key
            if key:
                counts[key] += 1
        j_max = max(counts.values()) if counts else 0
        nodes, edges = set(), set()
        for d in scores:
            byline = corpus200.get(d).authors
            nodes.update(byline)
            for i, a in enumerate(byline):
                for b in byline[i + 1:]:
                    edges.add(tuple(sorted((a, b))))
        cmap = bruteforce_betweenness(nodes, edges)
        a_max = max(cmap.values()) if cmap else 0.0

        def factor_triple(doc_id):
            record = corpus200.get(doc_id)
            w_j = counts.get(record.journal_key, 0) / j_max if j_max and record.journal_key else 0.0
            best = max((cmap.get(a, 0.0) for a in record.authors), default=0.0)
            w_a = best / a_max if a_max else 0.0
            return norm[doc_id], w_j, w_a

        kept = dict(result.ranked.entries)
        for doc_id, score in kept.items():
            tfidf_norm, w_j, w_a = factor_triple(doc_id)
            assert score == pytest.approx(tfidf_norm * w_j * w_a, abs=1e-12)
            audited_docs += 1
        discarded = set(scores) - set(kept)
        assert len(discarded) == result.discarded.total
        for doc_id in discarded:
            triple = factor_triple(doc_id)
            assert min(triple) == 0.0, f"{doc_id} was discarded without a zero factor"
            audited_discards += 1
    assert audited_docs > 0 and audited_discards > 0


def test_bradfordizing_properties():
    """Permutation, contiguity, stability and zone balance over 1000 random sets (< 5 s)."""
    rng = random.Random(7)
    started = time.perf_counter()
    for _ in range(1000):
        n = rng.randint(1, 40)
        journal_pool = [f"J{i}" for i in range(rng.randint(1, 8))] + [None]
        docs = tuple(
            BibRecord(
                f"d{i}", f"t{i}",
                journal=Journal(j) if (j := rng.choice(journal_pool)) else None,
            )
            for i in range(n)
        )
        corpus = Corpus(docs)
        ids = [f"d{i}" for i in range(n)]
        rng.shuffle(ids)
        result = RankedList(Query.parse("q"), tuple((d, float(n - i)) for i, d in enumerate(ids)))
        ranking = bradford.journal_counts(result, corpus)
        out = bradford.bradfordize(result, ranking, corpus)

        assert sorted(out.doc_ids()) == sorted(ids)  # permutation
        position = {d: i for i, d in enumerate(result.doc_ids())}
        groups: list[tuple[str, list[str]]] = []
        for doc_id in out.doc_ids():
            key = corpus.get(doc_id).journal_key
            if not groups or groups[-1][0] != key:
                groups.append((key, [doc_id]))
            else:
                groups[-1][1].append(doc_id)
        keyed = [k for k, _ in groups if k is not None]
        assert len(keyed) == len(set(keyed))  # journal contiguity
        for _, members in groups:
            order = [position[d] for d in members]
            assert order == sorted(order)  # within-journal stability

        if ranking:
            partition = bradford.bradford_zones(ranking)
            total = sum(c for _, c in ranking.entries)
            for articles in partition.articles_per_zone:
                if articles:
                    assert abs(articles - total / 3) < ranking.j_max + 1e-9
            flattened = list(partition.core) + list(partition.zone2) + list(partition.zone3)
            assert flattened == [k for k, _ in ranking.entries]
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"bradfordizing property check took {elapsed:.1f}s"


def test_expansion_superset(corpus200, engine200):
    """Expanded queries retrieve a superset for 50 random queries, strictly more at least once."""
    rng = random.Random(99)
    vocabulary = sorted(engine200.index.postings["freetext"])
    n = corpus200.n_docs
    strictly_larger = 0
    for _ in range(50):
        raw = " ".join(rng.sample(vocabulary, rng.randint(1, 2)))
        query = Query.parse(raw)
        base = set(search_tfidf(engine200.index, query, n).doc_ids())
        expanded_query = recommend.expand(query, engine200.model, 4)
        expanded = set(search_tfidf(engine200.index, expanded_query, n).doc_ids())
        assert base <= expanded, f"expansion lost documents for {raw!r}"
        if expanded_query.expansion_terms and len(expanded) > len(base):
            strictly_larger += 1
    assert strictly_larger >= 1


def test_llr_correctness(corpus200):
    """Model strengths match the direct contingency formula on a 100-doc fixture (1e-9)."""
    fixture = Corpus(corpus200.records[:100], corpus_id="first100")
    model = recommend.train(fixture)
    assert len(model) > 0

    # direct scan, independent of the trained counting path
    doc_tokens = [set(tokenize(r.free_text)) for r in fixture]
    doc_terms = [{search.normalize_term(t) for t in r.controlled_terms} for r in fixture]
    n = fixture.n_docs
    for assoc in model:
        k11 = k12 = k21 = k22 = 0
        for tokens, terms in zip(doc_tokens, doc_terms):
            has_free = assoc.free_term in tokens
            has_ctrl = assoc.controlled_term in terms
            if has_free and has_ctrl:
                k11 += 1
            elif has_free:
                k12 += 1
            elif has_ctrl:
                k21 += 1
            else:
                k22 += 1
        assert k11 + k12 + k21 + k22 == n
        assert assoc.evidence == k11
        want = max(llr_direct(k11, k12, k21, k22), 0.0)
        assert assoc.strength == pytest.approx(want, abs=1e-9)

    # independence tables (cells exactly proportional to the marginals) score zero
    for total in (4, 16, 30, 40):
        for df_free in range(1, total):
            for df_ctrl in range(1, total):
                if (df_free * df_ctrl) % total:
                    continue
                k11 = df_free * df_ctrl // total
                k12 = df_free - k11
                k21 = df_ctrl - k11
                k22 = total - df_free - df_ctrl + k11
                assert recommend.log_likelihood_ratio(k11, k12, k21, k22) == pytest.approx(
                    0.0, abs=1e-9
                )


def test_fleiss_kappa_criterion():
    """Exact 1 on perfect agreement, -2/7 on the worked table, oracle match, >= rule."""
    assert evaluation.fleiss_kappa([(4, 0), (0, 4), (4, 0)], 4) == 1.0
    assert evaluation.fleiss_kappa([(2, 1), (2, 1), (3, 0)], 3) == pytest.approx(-2 / 7, abs=1e-9)

    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(2, 10)
        rows = []
        for _ in range(rng.randint(1, 15)):
            rel = rng.randint(0, n)
            rows.append((rel, n - rel))
        assert evaluation.fleiss_kappa(rows, n) == pytest.approx(
            fleiss_direct(rows, n), abs=1e-9
        )

    judgments = evaluation.JudgmentSet({
        "agreeing": {"d0": [1, 1, 1, 1, 1], "d1": [0, 0, 0, 0, 0]},
        "split": {"d0": [1, 0, 1, 0, 0], "d1": [0, 1, 0, 1, 1]},
    })
    kept, dropped = evaluation.drop_topics(judgments, threshold=0.40)
    assert [t for t, _ in kept] == ["agreeing"]
    assert [t for t, _ in dropped] == ["split"]
    # the boundary itself is kept: kappa >= threshold
    boundary = judgments.kappa("split")
    kept, dropped = evaluation.drop_topics(judgments, threshold=boundary)
    assert {t for t, _ in kept} == {"agreeing", "split"}


def test_eval_pipeline_shape(fixtures_dir):
    """Four bundled runs produce the full report; STR and AUTH beat the text baseline."""
    judgments = evaluation.load_judgments(fixtures_dir / "judgments.tsv")
    runs = evaluation.load_runs(fixtures_dir / "runs")
    assert set(runs) == {"tfidf", "str", "brad", "auth"}
    report = evaluation.evaluate_runs(runs, judgments, k=10)

    assert set(report.mean_precision) == {"tfidf", "str", "brad", "auth"}
    assert all(len(row) == 4 for row in report.overlap_matrix.values())
    assert len(report.overlap_matrix) == 4
    assert set(report.topic_kappa) == set(report.kept_topics) | set(report.dropped_topics)
    assert report.dropped_topics  # the agreement filter actually fired

    assert report.mean_precision["str"] >= report.mean_precision["tfidf"]
    assert report.mean_precision["auth"] >= report.mean_precision["tfidf"]

    text = evaluation.render_report(report)
    for section in ("precision@10", "overlap", "kappa"):
        assert section in text


def test_http_round_trip(corpus200, engine200, queries200):
    """Every ranking mode matches the in-process result at 6-decimal precision (< 5 s startup)."""
    from fastapi.testclient import TestClient

    from scirank.service import create_app

    started = time.perf_counter()
    app = create_app(engine200)
    with TestClient(app) as client:
        assert client.get("/v1/health").status_code == 200
        first_response = time.perf_counter() - started
        assert first_response < 5.0, f"first response took {first_response:.1f}s"

        cases = [
            {"query": "unemployment", "ranking": "tfidf", "k": 10},
            {"query": "unemployment", "ranking": "tfidf", "expand": 4, "k": 10},
            {"query": "financial crisis", "ranking": "brad", "k": 10},
            {"query": "education", "ranking": "auth", "k": 10},
            {"query": "poverty", "ranking": "combined", "k": 10},
            {"query": "migration", "ranking": "chain", "chain": "str:4,brad:core,auth:1", "k": 10},
        ]
        for case in cases:
            body = client.post("/v1/search", json=case).json()
            expected = engine200.search(
                case["query"],
                ranking=case["ranking"],
                chain_spec=case.get("chain"),
                expand_k=case.get("expand", 0),
                k=case["k"],
            )
            want = [(d, f"{s:.6f}") for d, s in expected.ranked.entries[: case["k"]]]
            got = [(e["doc_id"], f"{e['score']:.6f}") for e in body["entries"]]
            assert got == want, f"mismatch for {case}"
            assert body["ranking_label"] == expected.ranked.label


def test_monotone_chain_shrinkage(corpus200, engine200, queries200):
    """20 random journal/author chains only ever shrink the result set."""
    rng = random.Random(31)
    for _ in range(20):
        steps = []
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                steps.append(rng.choice(["brad:core", f"brad:{rng.randint(1, 4)}"]))
            else:
                steps.append(f"auth:{rng.randint(1, 5)}")
        query = rng.choice(queries200)
        previous = set(
            search_tfidf(engine200.index, Query.parse(query), corpus200.n_docs).doc_ids()
        )
        for prefix_len in range(1, len(steps) + 1):
            spec = ",".join(steps[:prefix_len])
            current = set(
                combine.run_chain(
                    Query.parse(query), combine.parse_chain(spec), engine200.index, corpus200
                ).doc_ids()
            )
            assert current <= previous, f"chain {spec!r} grew the set for {query!r}"
            previous = current
