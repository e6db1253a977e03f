"""Bradfordizing: journal-frequency re-ranking, zone partition and W_j.

Journals are ranked by the number of result-set articles they contribute.
Re-ranking pulls documents of high-yield journals to the top; the zone
partition splits the ranking into core / zone2 / zone3 of roughly one third
of the articles each.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import BibRecord, Corpus
from .search import BRAD, Query, RankedList


@dataclass(frozen=True)
class JournalRanking:
    """(journal_key, article_count) pairs, by count descending then key ascending."""

    entries: tuple[tuple[str, int], ...]
    query: Query

    def __post_init__(self):
        object.__setattr__(self, "_counts", dict(self.entries))

    @property
    def j_max(self) -> int:
        return self.entries[0][1] if self.entries else 0

    def count(self, journal_key: str | None) -> int:
        if journal_key is None:
            return 0
        return self._counts.get(journal_key, 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)


@dataclass(frozen=True)
class BradfordPartition:
    core: tuple[str, ...]
    zone2: tuple[str, ...]
    zone3: tuple[str, ...]
    articles_per_zone: tuple[int, int, int]

    def zones(self):
        return (("core", self.core), ("zone2", self.zone2), ("zone3", self.zone3))


def journal_counts(result: RankedList, corpus: Corpus) -> JournalRanking:
    """Tally result documents per journal key; journal-less documents are skipped."""
    counts: Counter = Counter()
    for doc_id, _ in result.entries:
        key = corpus.get(doc_id).journal_key
        if key is not None:
            counts[key] += 1
    entries = tuple(sorted(counts.items(), key=lambda item: (-item[1], item[0])))
    return JournalRanking(entries=entries, query=result.query)


def bradfordize(result: RankedList, ranking: JournalRanking, corpus: Corpus) -> RankedList:
    """Re-order a result set by journal article counts.

    Primary key: article count descending; equal counts order by journal key;
    within one journal the incoming order is preserved; journal-less documents
    go last. Output scores are the journal counts.
    """
    def sort_key(item):
        _, doc_id = item
        key = corpus.get(doc_id).journal_key
        count = ranking.count(key)
        # journal-less docs (and docs of unranked journals) sort after keyed ones
        return (-count, key is None, key or "")

    indexed = list(enumerate(result.doc_ids()))
    indexed.sort(key=sort_key)  # stable: preserves incoming order inside a journal
    entries = tuple(
        (doc_id, float(ranking.count(corpus.get(doc_id).journal_key))) for _, doc_id in indexed
    )
    return RankedList(query=result.query, entries=entries, label=BRAD)


def bradford_zones(ranking: JournalRanking) -> BradfordPartition:
    """Greedy cumulative-thirds partition of a journal ranking.

    Core is the minimal prefix holding at least a third of the articles, zone2
    the next minimal segment reaching two thirds, zone3 the remainder.
    """
    if not ranking:
        raise ValueError("cannot partition an empty journal ranking")
    total = sum(count for _, count in ranking.entries)
    zones: list[list[str]] = [[], [], []]
    zone_articles = [0, 0, 0]
    cumulative = 0
    zone = 0
    for key, count in ranking.entries:
        zones[zone].append(key)
        zone_articles[zone] += count
        cumulative += count
        # integer comparison of cumulative >= total/3 and >= 2*total/3
        if zone == 0 and 3 * cumulative >= total:
            zone = 1
        elif zone == 1 and 3 * cumulative >= 2 * total:
            zone = 2
    return BradfordPartition(
        core=tuple(zones[0]),
        zone2=tuple(zones[1]),
        zone3=tuple(zones[2]),
        articles_per_zone=tuple(zone_articles),
    )


def journal_weight(record: BibRecord, ranking: JournalRanking) -> float:
    """W_j = article_count(journal of d) / J_max, 0 without a ranked journal."""
    count = ranking.count(record.journal_key)
    if count == 0 or ranking.j_max == 0:
        return 0.0
    return count / ranking.j_max
