import json

import pytest
from fastapi.testclient import TestClient

from scirank import corpus as corpus_mod
from scirank.service import create_app


@pytest.fixture(scope="module")
def client(engine200):
    app = create_app(engine200)
    with TestClient(app) as client:
        yield client


def test_health(client):
    response = client.get("/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_corpus_stats_matches_inprocess(client, corpus200):
    body = client.get("/v1/corpus/stats").json()
    s = corpus_mod.stats(corpus200)
    assert body["n_docs"] == s.n_docs
    assert body["n_distinct_journals"] == s.n_distinct_journals
    assert body["n_distinct_authors"] == s.n_distinct_authors
    assert body["n_distinct_controlled_terms"] == s.n_distinct_controlled_terms
    assert body["corpus_id"] == corpus200.corpus_id


def _score_lines(entries):
    return [(e["doc_id"], f"{e['score']:.6f}") for e in entries]


def test_search_tfidf_equals_inprocess(client, engine200):
    response = client.post("/v1/search", json={"query": "unemployment", "ranking": "tfidf", "k": 10})
    assert response.status_code == 200
    body = response.json()
    assert body["ranking_label"] == "TFIDF"
    expected = engine200.search("unemployment", ranking="tfidf", k=10).ranked.top(10)
    assert _score_lines(body["entries"]) == [(d, f"{s:.6f}") for d, s in expected.entries]
    assert body["provenance"]["corpus_id"] == engine200.corpus.corpus_id


def test_search_chain_equals_inprocess(client, engine200):
    request = {"query": "unemployment", "ranking": "chain", "chain": "brad:core,auth:1", "k": 10}
    body = client.post("/v1/search", json=request).json()
    assert body["ranking_label"] == "CHAIN"
    expected = engine200.search("unemployment", ranking="chain", chain_spec="brad:core,auth:1")
    want = [(d, f"{s:.6f}") for d, s in expected.ranked.entries[:10]]
    assert _score_lines(body["entries"]) == want


def test_search_combined_carries_factors(client):
    body = client.post("/v1/search", json={"query": "education", "ranking": "combined", "k": 10}).json()
    assert body["ranking_label"] == "COMBINED"
    assert body["discarded"] is not None and body["discarded"]["total"] > 0
    for entry in body["entries"]:
        f = entry["factors"]
        assert f is not None
        product = f["tfidf_norm"] * f["journal_weight"] * f["author_weight"]
        assert abs(product - entry["score"]) < 1e-12


def test_search_expansion_labelled_str(client):
    body = client.post("/v1/search", json={"query": "unemployment", "expand": 4, "k": 10}).json()
    assert body["ranking_label"] == "STR"
    assert body["expansion_terms"]


def test_search_explicit_expansion_terms(client, engine200):
    request = {"query": "unemployment", "expansion_terms": ["labor market policy"], "k": 10}
    body = client.post("/v1/search", json=request).json()
    assert body["expansion_terms"] == ["labor market policy"]
    assert body["ranking_label"] == "STR"
    expected = engine200.search(
        "unemployment", expansion_terms=("labor market policy",), k=10
    ).ranked.top(10)
    assert _score_lines(body["entries"]) == [(d, f"{s:.6f}") for d, s in expected.entries]


def test_search_explicit_terms_merge_with_expand(client, engine200):
    request = {"query": "unemployment", "expansion_terms": ["social welfare"], "expand": 2, "k": 5}
    body = client.post("/v1/search", json=request).json()
    assert body["expansion_terms"][0] == "social welfare"
    assert len(body["expansion_terms"]) >= 2  # recommendations appended after selections


def test_search_blank_expansion_term_rejected(client):
    response = client.post("/v1/search", json={"query": "x", "expansion_terms": ["  "]})
    assert response.status_code == 422


def test_malformed_chain_names_field(client):
    response = client.post(
        "/v1/search", json={"query": "x", "ranking": "chain", "chain": "brad:x"}
    )
    assert response.status_code == 422
    assert "chain" in json.dumps(response.json())


def test_chain_ranking_requires_chain(client):
    response = client.post("/v1/search", json={"query": "x", "ranking": "chain"})
    assert response.status_code == 422
    assert "chain" in json.dumps(response.json())


def test_k_must_be_positive(client):
    response = client.post("/v1/search", json={"query": "x", "k": 0})
    assert response.status_code == 422
    assert "k" in json.dumps(response.json())


def test_unknown_ranking_rejected(client):
    response = client.post("/v1/search", json={"query": "x", "ranking": "pagerank"})
    assert response.status_code == 422


def test_recommend_endpoint(client, engine200):
    body = client.get("/v1/terms/recommend", params={"q": "financial crisis", "k": 4}).json()
    expected = engine200.recommend_terms("financial crisis", 4)
    assert [(r["term"], f"{r['strength']:.6f}") for r in body["recommendations"]] == [
        (r.term, f"{r.strength:.6f}") for r in expected
    ]


def test_zones_endpoint(client, engine200):
    body = client.get("/v1/journals/zones", params={"q": "unemployment"}).json()
    ranking, partition = engine200.zones("unemployment")
    assert [row["journal"] for row in body["core"]] == list(partition.core)
    assert [row["journal"] for row in body["zone2"]] == list(partition.zone2)
    assert [row["journal"] for row in body["zone3"]] == list(partition.zone3)
    assert body["articles_per_zone"] == list(partition.articles_per_zone)


def test_centrality_endpoint(client, engine200):
    body = client.get("/v1/authors/centrality", params={"q": "unemployment"}).json()
    cmap = engine200.centrality_map("unemployment")
    top = sorted(cmap.items(), key=lambda item: (-item[1], item[0]))[:50]
    assert [(a["author"], f"{a['betweenness']:.6f}") for a in body["authors"]] == [
        (name, f"{value:.6f}") for name, value in top
    ]
    assert body["n_authors"] == len(cmap)


def test_ui_mount_serves_static_files(tmp_path, engine200):
    (tmp_path / "index.html").write_text("<html><body>ui</body></html>", encoding="utf-8")
    app = create_app(engine200, ui_dir=str(tmp_path))
    with TestClient(app) as ui_client:
        assert ui_client.get("/v1/health").status_code == 200  # API keeps precedence
        response = ui_client.get("/")
        assert response.status_code == 200
        assert "ui" in response.text


def test_ui_mount_rejects_missing_dir(engine200):
    with pytest.raises(ValueError, match="ui directory"):
        create_app(engine200, ui_dir="/no/such/dir")


def test_interleaved_requests_are_stateless(client):
    first = client.post("/v1/search", json={"query": "poverty", "ranking": "combined"}).json()
    for query in ["education", "migration", "climate"]:
        client.post("/v1/search", json={"query": query, "ranking": "auth"})
        client.get("/v1/terms/recommend", params={"q": query})
    second = client.post("/v1/search", json={"query": "poverty", "ranking": "combined"}).json()
    assert first == second
