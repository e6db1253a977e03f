"""Command-line client for ingestion, indexing, training, search and serving."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import evaluation, recommend, search
from .engine import RANKINGS, SearchEngine


def _engine_from_args(args, need_model: bool = False) -> SearchEngine:
    engine = SearchEngine.from_corpus_file(
        args.corpus,
        index_path=getattr(args, "index", None),
        model_path=getattr(args, "model", None),
        max_nodes=getattr(args, "max_nodes", 5000),
    )
    if engine.model is None and need_model:
        print(f"training term model on {engine.corpus.corpus_id}", file=sys.stderr)
        engine.model = recommend.train(engine.corpus)
    return engine


def cmd_ingest(args) -> int:
    corpus = corpus_mod.ingest(args.corpus)
    s = corpus_mod.stats(corpus)
    print(
        f"{corpus.corpus_id}: {s.n_docs} docs, {s.n_distinct_journals} journals, "
        f"{s.n_distinct_authors} authors, {s.n_distinct_controlled_terms} controlled terms"
    )
    if args.out:
        corpus_mod.serialize(corpus, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_index(args) -> int:
    corpus = corpus_mod.ingest(args.corpus)
    index = search.build_index(corpus)
    search.save_index(index, args.index)
    print(f"indexed {index.n_docs} docs -> {args.index}")
    return 0


def cmd_train_str(args) -> int:
    corpus = corpus_mod.ingest(args.corpus)
    model = recommend.train(corpus)
    recommend.save_model(model, args.out)
    print(f"trained {len(model)} associations -> {args.out}")
    return 0


def cmd_search(args) -> int:
    need_model = args.expand > 0 or (args.chain is not None and "str" in args.chain)
    engine = _engine_from_args(args, need_model=need_model)
    result = engine.search(
        args.query, ranking=args.rank, chain_spec=args.chain, expand_k=args.expand, k=args.k
    )
    for rank, (doc_id, score) in enumerate(result.ranked.entries[: args.k], start=1):
        print(f"{rank}\t{doc_id}\t{score:.6f}")
    if not result.ranked.entries and result.discarded and result.discarded.total:
        d = result.discarded
        if d.zero_author == d.total:
            reason = "W_a = 0"
        elif d.zero_journal == d.total:
            reason = "W_j = 0"
        else:
            reason = "zero factors"
        print(f"all documents discarded ({reason})", file=sys.stderr)
    return 0


def cmd_zones(args) -> int:
    engine = _engine_from_args(args)
    ranking, partition = engine.zones(args.query)
    if partition is None:
        return 0
    for zone_name, keys in partition.zones():
        for key in keys:
            print(f"{zone_name}\t{key}\t{ranking.count(key)}")
    return 0


def cmd_graph(args) -> int:
    engine = _engine_from_args(args)
    graph = engine.coauthor_graph(args.query)
    cmap = engine.centrality_map(args.query)
    edge_lines = [f"{a}\t{b}" for a, b in graph.edges]
    node_lines = [f"{a}\t{cmap[a]:.6f}" for a in sorted(cmap)]
    if args.edges:
        Path(args.edges).write_text("\n".join(edge_lines) + ("\n" if edge_lines else ""), encoding="utf-8")
    if args.nodes:
        Path(args.nodes).write_text("\n".join(node_lines) + ("\n" if node_lines else ""), encoding="utf-8")
    if not args.edges and not args.nodes:
        print("\n".join(edge_lines))
        print()
        print("\n".join(node_lines))
    return 0


def cmd_eval(args) -> int:
    judgments = evaluation.load_judgments(args.judgments)
    runs = evaluation.load_runs(args.runs)
    report = evaluation.evaluate_runs(runs, judgments, k=args.k, threshold=args.threshold)
    text = evaluation.render_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    if args.json:
        Path(args.json).write_text(evaluation.report_to_json(report), encoding="utf-8")
        print(f"wrote {args.json}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    engine = _engine_from_args(args, need_model=True)
    app = create_app(engine, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scirank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus(p, index_opt=True, model_opt=True):
        p.add_argument("--corpus", required=True, help="line-delimited corpus file")
        if index_opt:
            p.add_argument("--index", help="prebuilt index file")
        if model_opt:
            p.add_argument("--model", help="trained term-association model (TSV)")
        p.add_argument("--max-nodes", type=int, default=5000, help="co-author graph ceiling")

    p = sub.add_parser("ingest", help="read and validate a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", help="write the normalized corpus here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("index", help="build and persist the inverted index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--index", required=True, help="output index file")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("train-str", help="train the term-association model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="output model file (TSV)")
    p.set_defaults(func=cmd_train_str)

    p = sub.add_parser("search", help="rank documents for a query")
    add_corpus(p)
    p.add_argument("query")
    p.add_argument("--rank", choices=RANKINGS, default="tfidf")
    p.add_argument("--chain", help="chain spec, e.g. str:4,brad:core,auth:1")
    p.add_argument("--expand", type=int, default=0, help="number of expansion terms")
    p.add_argument("--k", type=int, default=10, help="result limit")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("zones", help="journal zone report for a query")
    add_corpus(p)
    p.add_argument("query")
    p.set_defaults(func=cmd_zones)

    p = sub.add_parser("graph", help="export the co-author graph for a query")
    add_corpus(p)
    p.add_argument("query")
    p.add_argument("--edges", help="write the edge list here")
    p.add_argument("--nodes", help="write author betweenness values here")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("eval", help="score runs against judgments")
    p.add_argument("--judgments", required=True, help="TSV: topic, doc_id, rater_id, 0|1")
    p.add_argument("--runs", required=True, help="directory of <service>.tsv run files")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--threshold", type=float, default=evaluation.DEFAULT_KAPPA_THRESHOLD)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--json", help="also write a machine-readable report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP service")
    add_corpus(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--ui", help="directory with the built frontend to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except Exception as exc:  # one-line reason, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
