"""Evaluation harness: precision@k, top-k overlap and Fleiss' kappa.

Judgments are binary (relevant / not relevant) per topic, document and rater.
Topics whose inter-rater agreement falls below a kappa threshold are dropped
before precision is reported. Precision is macro-averaged over kept topics;
a document counts as relevant when a strict majority of raters marked it so.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .search import RANKING_LABELS, Query, RankedList, TFIDF

DEFAULT_KAPPA_THRESHOLD = 0.40


def precision_at_k(ranked: RankedList, relevant: set[str], k: int) -> float:
    """|top-k intersect relevant| / min(k, list length); 0 for an empty list."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not ranked.entries:
        return 0.0
    top = ranked.doc_ids()[:k]
    return sum(1 for doc_id in top if doc_id in relevant) / min(k, len(ranked.entries))


def overlap(a: RankedList, b: RankedList, k: int) -> int:
    """Number of doc_ids shared by the two top-k prefixes."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return len(set(a.doc_ids()[:k]) & set(b.doc_ids()[:k]))


def fleiss_kappa(rows: Sequence[Sequence[int]], n_raters: int) -> float:
    """Fleiss' kappa for per-subject category counts with a fixed rater count.

    Returns exactly 1.0 under perfect agreement (guards the 0/0 case when the
    expected agreement is also 1).
    """
    if n_raters < 2:
        raise ValueError("fleiss_kappa requires at least 2 raters")
    if not rows:
        raise ValueError("fleiss_kappa requires at least one subject")
    n_subjects = len(rows)
    n_categories = len(rows[0])
    for i, row in enumerate(rows):
        if sum(row) != n_raters:
            raise ValueError(f"subject {i}: ratings sum to {sum(row)}, expected {n_raters}")
    p_subject = [
        (sum(c * c for c in row) - n_raters) / (n_raters * (n_raters - 1)) for row in rows
    ]
    p_bar = sum(p_subject) / n_subjects
    if p_bar == 1.0:
        return 1.0
    totals = [sum(row[j] for row in rows) for j in range(n_categories)]
    grand = n_subjects * n_raters
    p_expected = sum((t / grand) ** 2 for t in totals)
    return (p_bar - p_expected) / (1.0 - p_expected)


class JudgmentSet:
    """Binary ratings per (topic, doc_id), one per rater.

    Within a topic every judged document must carry the same number of
    ratings.
    """

    def __init__(self, ratings: dict[str, dict[str, list[int]]]):
        self.ratings = ratings
        self.n_raters: dict[str, int] = {}
        for topic, docs in ratings.items():
            counts = {len(r) for r in docs.values()}
            if len(counts) > 1:
                raise ValueError(f"topic {topic!r}: inconsistent rating counts {sorted(counts)}")
            self.n_raters[topic] = counts.pop() if counts else 0

    @property
    def topics(self) -> list[str]:
        return sorted(self.ratings)

    def table(self, topic: str) -> list[tuple[int, int]]:
        """Per-document (relevant, not relevant) counts, doc_id order."""
        docs = self.ratings[topic]
        n = self.n_raters[topic]
        return [(sum(docs[d]), n - sum(docs[d])) for d in sorted(docs)]

    def kappa(self, topic: str) -> float:
        return fleiss_kappa(self.table(topic), self.n_raters[topic])

    def relevant_docs(self, topic: str) -> set[str]:
        """Documents a strict majority of raters marked relevant."""
        docs = self.ratings.get(topic, {})
        n = self.n_raters.get(topic, 0)
        return {d for d, r in docs.items() if 2 * sum(r) > n}


def load_judgments(path) -> JudgmentSet:
    """Read TSV lines: topic, doc_id, rater_id, 0|1."""
    ratings: dict[str, dict[str, list[int]]] = {}
    seen: set[tuple[str, str, str]] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"line {line_no}: expected 4 tab-separated fields")
            topic, doc_id, rater_id, rating = parts
            if rating not in ("0", "1"):
                raise ValueError(f"line {line_no}: rating must be 0 or 1")
            key = (topic, doc_id, rater_id)
            if key in seen:
                raise ValueError(f"line {line_no}: duplicate rating for {key}")
            seen.add(key)
            ratings.setdefault(topic, {}).setdefault(doc_id, []).append(int(rating))
    return JudgmentSet(ratings)


def drop_topics(
    judgments: JudgmentSet, threshold: float = DEFAULT_KAPPA_THRESHOLD
) -> tuple[list[tuple[str, float]], list[tuple[str, float]]]:
    """Split topics into (kept, dropped) by kappa; kappa >= threshold is kept."""
    kept, dropped = [], []
    for topic in judgments.topics:
        kappa = judgments.kappa(topic)
        (kept if kappa >= threshold else dropped).append((topic, kappa))
    return kept, dropped


# ---------------------------------------------------------------------------
# run files and the report


def save_run(path, run: dict[str, RankedList]) -> None:
    """Write one service's rankings: topic, rank, doc_id, score per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for topic in sorted(run):
            for rank, (doc_id, score) in enumerate(run[topic].entries, start=1):
                fh.write(f"{topic}\t{rank}\t{doc_id}\t{score:.6f}\n")


def load_run(path) -> dict[str, RankedList]:
    label = Path(path).stem.upper()
    if label not in RANKING_LABELS:
        label = TFIDF
    per_topic: dict[str, list[tuple[str, float]]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"line {line_no}: expected 4 tab-separated fields")
            topic, _, doc_id, score = parts
            per_topic.setdefault(topic, []).append((doc_id, float(score)))
    return {
        topic: RankedList(query=Query.parse(topic), entries=tuple(entries), label=label)
        for topic, entries in per_topic.items()
    }


def load_runs(directory) -> dict[str, dict[str, RankedList]]:
    """Load every ``<service>.tsv`` run file in a directory."""
    runs = {}
    for name in sorted(os.listdir(directory)):
        if name.endswith(".tsv"):
            runs[name[:-4]] = load_run(Path(directory) / name)
    if not runs:
        raise ValueError(f"no .tsv run files found in {directory}")
    return runs


@dataclass
class EvalReport:
    k: int
    threshold: float
    services: list[str]
    kept_topics: list[str]
    dropped_topics: list[str]
    topic_kappa: dict[str, float]
    precision: dict[str, dict[str, float]] = field(default_factory=dict)
    mean_precision: dict[str, float] = field(default_factory=dict)
    overlap_matrix: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "kappa_threshold": self.threshold,
            "averaging": "macro",
            "relevance_rule": "strict rater majority",
            "services": self.services,
            "kept_topics": self.kept_topics,
            "dropped_topics": self.dropped_topics,
            "topic_kappa": self.topic_kappa,
            "precision": self.precision,
            "mean_precision": self.mean_precision,
            "overlap_matrix": self.overlap_matrix,
        }


def evaluate_runs(
    runs: dict[str, dict[str, RankedList]],
    judgments: JudgmentSet,
    k: int = 10,
    threshold: float = DEFAULT_KAPPA_THRESHOLD,
) -> EvalReport:
    """Precision@k per service, pairwise top-k overlap and per-topic kappa."""
    services = sorted(runs)
    kept, dropped = drop_topics(judgments, threshold)
    kept_topics = [t for t, _ in kept]
    report = EvalReport(
        k=k,
        threshold=threshold,
        services=services,
        kept_topics=kept_topics,
        dropped_topics=[t for t, _ in dropped],
        topic_kappa={t: kappa for t, kappa in kept + dropped},
    )
    for service in services:
        per_topic = {}
        for topic in kept_topics:
            ranked = runs[service].get(topic)
            relevant = judgments.relevant_docs(topic)
            per_topic[topic] = precision_at_k(ranked, relevant, k) if ranked else 0.0
        report.precision[service] = per_topic
        report.mean_precision[service] = (
            sum(per_topic.values()) / len(per_topic) if per_topic else 0.0
        )
    for a in services:
        report.overlap_matrix[a] = {}
        for b in services:
            total = 0
            for topic in kept_topics:
                ra, rb = runs[a].get(topic), runs[b].get(topic)
                if ra is not None and rb is not None:
                    total += overlap(ra, rb, k)
            report.overlap_matrix[a][b] = total
    return report


def render_report(report: EvalReport) -> str:
    """Human-readable report: precision table, overlap matrix, kappa list."""
    lines = []
    lines.append(f"precision@{report.k} (macro average over kept topics; relevant = strict rater majority)")
    for service in report.services:
        lines.append(f"  {service:<10} {report.mean_precision[service]:.4f}")
    lines.append("")
    lines.append("per-topic precision")
    header = "  topic".ljust(26) + "".join(s.ljust(10) for s in report.services)
    lines.append(header)
    for topic in report.kept_topics:
        row = f"  {topic:<24}" + "".join(
            f"{report.precision[s][topic]:<10.4f}" for s in report.services
        )
        lines.append(row)
    lines.append("")
    lines.append(f"pairwise top-{report.k} overlap (summed over kept topics)")
    lines.append("  ".ljust(12) + "".join(s.ljust(10) for s in report.services))
    for a in report.services:
        lines.append(
            f"  {a:<10}" + "".join(str(report.overlap_matrix[a][b]).ljust(10) for b in report.services)
        )
    lines.append("")
    lines.append(f"inter-rater agreement (Fleiss' kappa, threshold {report.threshold:.2f})")
    for topic in sorted(report.topic_kappa):
        status = "kept" if topic in report.kept_topics else "dropped"
        lines.append(f"  {topic:<24}{report.topic_kappa[topic]:>8.4f}  {status}")
    return "\n".join(lines) + "\n"


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)
