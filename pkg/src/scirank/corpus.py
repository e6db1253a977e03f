"""Bibliographic record model, corpus ingestion and validation.

A corpus is read from a UTF-8 file with one JSON object per line. Recognized
keys: ``id``, ``title``, ``abstract``, ``controlled_terms``, ``authors``,
``journal`` (``{"name": ..., "issn": ...}``) and ``year``. Absent optional
keys mean "missing".
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

_RECORD_KEYS = {"id", "title", "abstract", "controlled_terms", "authors", "journal", "year"}


class IngestError(ValueError):
    """A corpus file could not be parsed into valid records."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class DuplicateDocIdError(IngestError):
    """Two records in one corpus share a doc_id."""

    def __init__(self, doc_id: str, line: Optional[int] = None):
        message = f"duplicate doc_id {doc_id!r}"
        if line is not None:
            message += f" on line {line}"
        super().__init__(message, line)
        self.doc_id = doc_id


@dataclass(frozen=True)
class Journal:
    name: str
    issn: Optional[str] = None

    @property
    def key(self) -> str:
        """Identity key: ISSN when present, else the exact journal name."""
        return self.issn if self.issn else self.name


@dataclass(frozen=True)
class BibRecord:
    """One bibliographic document: free text, controlled terms, authors, journal."""

    doc_id: str
    title: str
    abstract: str = ""
    controlled_terms: tuple[str, ...] = ()
    authors: tuple[str, ...] = ()
    journal: Optional[Journal] = None
    year: Optional[int] = None

    @property
    def journal_key(self) -> Optional[str]:
        return self.journal.key if self.journal is not None else None

    @property
    def free_text(self) -> str:
        return f"{self.title} {self.abstract}" if self.abstract else self.title


@dataclass(frozen=True)
class Violation:
    """One failed record invariant; ``field`` names the offending field."""

    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


def validate(record: BibRecord) -> list[Violation]:
    """Check a record against its invariants. Empty list means valid."""
    violations = []
    if not record.doc_id or not record.doc_id.strip():
        violations.append(Violation("doc_id", "must be non-empty"))
    if not record.title or not record.title.strip():
        violations.append(Violation("title", "must be non-empty"))
    seen = set()
    for name in record.authors:
        if not name or name != name.strip() or not name.strip():
            violations.append(Violation("authors", f"author name {name!r} must be a non-empty trimmed string"))
        elif name in seen:
            violations.append(Violation("authors", f"duplicate author {name!r}"))
        else:
            seen.add(name)
    return violations


@dataclass(frozen=True)
class Corpus:
    """Immutable record collection with unique doc_ids, safe for concurrent reads."""

    records: tuple[BibRecord, ...]
    corpus_id: str = "in-memory"
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        by_id = {}
        for record in self.records:
            if record.doc_id in by_id:
                raise DuplicateDocIdError(record.doc_id)
            by_id[record.doc_id] = record
        object.__setattr__(self, "_by_id", by_id)

    @property
    def n_docs(self) -> int:
        return len(self.records)

    def get(self, doc_id: str) -> BibRecord:
        return self._by_id[doc_id]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class CorpusStats:
    n_docs: int
    n_distinct_journals: int
    n_distinct_authors: int
    n_distinct_controlled_terms: int


def stats(corpus: Corpus) -> CorpusStats:
    """Summary counts over a corpus, by exact string identity."""
    journals = {r.journal_key for r in corpus if r.journal_key is not None}
    authors = {a for r in corpus for a in r.authors}
    terms = {t for r in corpus for t in r.controlled_terms}
    return CorpusStats(corpus.n_docs, len(journals), len(authors), len(terms))


def _parse_record(obj: dict, line_no: int) -> BibRecord:
    if not isinstance(obj, dict):
        raise IngestError(f"line {line_no}: record must be an object", line_no)
    unknown = set(obj) - _RECORD_KEYS
    if unknown:
        raise IngestError(f"line {line_no}: unknown keys {sorted(unknown)}", line_no)
    if "id" not in obj or "title" not in obj:
        raise IngestError(f"line {line_no}: 'id' and 'title' are required", line_no)

    try:
        doc_id = str(obj["id"]).strip()
        title = str(obj["title"]).strip()
        abstract = str(obj.get("abstract") or "").strip()
        controlled = tuple(str(t).strip() for t in obj.get("controlled_terms") or ())
        authors = tuple(str(a).strip() for a in obj.get("authors") or ())
        journal = None
        if obj.get("journal") is not None:
            j = obj["journal"]
            if not isinstance(j, dict) or "name" not in j:
                raise IngestError(f"line {line_no}: journal must be an object with 'name'", line_no)
            issn = j.get("issn")
            journal = Journal(str(j["name"]).strip(), str(issn).strip() if issn else None)
        year = int(obj["year"]) if obj.get("year") is not None else None
    except IngestError:
        raise
    except (TypeError, ValueError) as exc:
        raise IngestError(f"line {line_no}: {exc}", line_no) from exc

    if any(not t for t in controlled):
        raise IngestError(f"line {line_no}: empty controlled term", line_no)

    record = BibRecord(doc_id, title, abstract, controlled, authors, journal, year)
    violations = validate(record)
    if violations:
        raise IngestError(f"line {line_no}: invalid record ({'; '.join(map(str, violations))})", line_no)
    return record


def ingest(path: str | os.PathLike) -> Corpus:
    """Read a line-delimited corpus file. Ingestion order is preserved.

    Raises OSError if the file is unreadable, IngestError on a malformed line
    and DuplicateDocIdError when a doc_id repeats.
    """
    records = []
    seen: dict[str, int] = {}
    digest = hashlib.sha1()
    with open(path, "rb") as fh:
        for line_no, raw in enumerate(fh, start=1):
            digest.update(raw)
            line = raw.decode("utf-8").strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {line_no}: invalid JSON ({exc.msg})", line_no) from exc
            record = _parse_record(obj, line_no)
            if record.doc_id in seen:
                raise DuplicateDocIdError(record.doc_id, line_no)
            seen[record.doc_id] = line_no
            records.append(record)
    stem = os.path.splitext(os.path.basename(path))[0]
    return Corpus(tuple(records), corpus_id=f"{stem}-{digest.hexdigest()[:8]}")


def record_to_dict(record: BibRecord) -> dict:
    obj: dict = {"id": record.doc_id, "title": record.title}
    if record.abstract:
        obj["abstract"] = record.abstract
    if record.controlled_terms:
        obj["controlled_terms"] = list(record.controlled_terms)
    if record.authors:
        obj["authors"] = list(record.authors)
    if record.journal is not None:
        j: dict = {"name": record.journal.name}
        if record.journal.issn:
            j["issn"] = record.journal.issn
        obj["journal"] = j
    if record.year is not None:
        obj["year"] = record.year
    return obj


def serialize(corpus: Corpus | Iterable[BibRecord], path: str | os.PathLike) -> None:
    """Write records back to the line-delimited format; round-trips with ingest."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in corpus:
            fh.write(json.dumps(record_to_dict(record), ensure_ascii=False) + "\n")
