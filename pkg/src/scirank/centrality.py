"""Author-centrality re-ranking over on-the-fly co-authorship networks.

The network is built from the result set only: nodes are authors of result
documents, an undirected unweighted edge links two authors sharing at least
one result document. Betweenness is exact and unnormalized, each unordered
node pair counted once. Documents are weighted by the highest betweenness
among their authors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .corpus import BibRecord, Corpus
from .search import AUTH, Query, RankedList

DEFAULT_MAX_NODES = 5000


class GraphTooLargeError(RuntimeError):
    """Co-authorship network exceeds the configured node ceiling."""

    def __init__(self, n_nodes: int, max_nodes: int):
        super().__init__(f"graph too large: {n_nodes} authors exceed the ceiling of {max_nodes}")
        self.n_nodes = n_nodes
        self.max_nodes = max_nodes


@dataclass(frozen=True)
class CoauthorGraph:
    nodes: frozenset[str]
    adjacency: dict[str, frozenset[str]] = field(compare=False)
    query: Query = field(compare=False, default=None)

    def neighbors(self, author: str) -> frozenset[str]:
        return self.adjacency.get(author, frozenset())

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def edges(self) -> list[tuple[str, str]]:
        """Unordered edges as sorted pairs, lexicographic order."""
        return sorted(
            (a, b) for a in self.nodes for b in self.adjacency.get(a, ()) if a < b
        )


def build_graph(
    result: RankedList, corpus: Corpus, max_nodes: int = DEFAULT_MAX_NODES
) -> CoauthorGraph:
    """Co-authorship network of a result set; collaboration multiplicity is ignored."""
    nodes: set[str] = set()
    adjacency: dict[str, set[str]] = {}
    for doc_id, _ in result.entries:
        authors = corpus.get(doc_id).authors
        for author in authors:
            nodes.add(author)
            adjacency.setdefault(author, set())
        for i, a in enumerate(authors):
            for b in authors[i + 1:]:
                if a == b:
                    continue
                adjacency[a].add(b)
                adjacency[b].add(a)
    if len(nodes) > max_nodes:
        raise GraphTooLargeError(len(nodes), max_nodes)
    return CoauthorGraph(
        nodes=frozenset(nodes),
        adjacency={a: frozenset(n) for a, n in adjacency.items()},
        query=result.query,
    )


def betweenness(graph: CoauthorGraph) -> dict[str, float]:
    """Exact betweenness per author (Brandes' accumulation), unnormalized.

    Sources are processed in ascending node order so the summation order, and
    therefore the floating-point result, is deterministic.
    """
    order = sorted(graph.nodes)
    centrality = {v: 0.0 for v in order}
    for source in order:
        # single-source shortest paths by BFS
        sigma = {v: 0 for v in order}
        dist = {v: -1 for v in order}
        predecessors: dict[str, list[str]] = {v: [] for v in order}
        sigma[source] = 1
        dist[source] = 0
        stack: list[str] = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in sorted(graph.neighbors(v)):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)
        # dependency back-propagation in reverse BFS order
        delta = {v: 0.0 for v in order}
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                centrality[w] += delta[w]
    # each unordered pair was seen from both endpoints
    return {v: value / 2.0 for v, value in centrality.items()}


def doc_weight(record: BibRecord, cmap: dict[str, float]) -> float:
    """Highest betweenness over the document's authors, 0 when none is mapped."""
    values = [cmap[a] for a in record.authors if a in cmap]
    return max(values) if values else 0.0


def author_rerank(result: RankedList, cmap: dict[str, float], corpus: Corpus) -> RankedList:
    """Sort documents by doc_weight descending, stable on the incoming order."""
    weighted = [(doc_id, doc_weight(corpus.get(doc_id), cmap)) for doc_id in result.doc_ids()]
    weighted.sort(key=lambda item: -item[1])  # stable
    return RankedList(query=result.query, entries=tuple(weighted), label=AUTH)


def author_weight(record: BibRecord, cmap: dict[str, float]) -> float:
    """W_a = doc_weight / max centrality; 0 when the maximum is 0."""
    if not cmap:
        return 0.0
    a_max = max(cmap.values())
    if a_max <= 0.0:
        return 0.0
    return doc_weight(record, cmap) / a_max
