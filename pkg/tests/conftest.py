import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scirank.corpus import BibRecord, Corpus, Journal
from scirank.engine import SearchEngine

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus200() -> Corpus:
    from scirank.corpus import ingest

    return ingest(FIXTURES / "corpus200.jsonl")


@pytest.fixture(scope="session")
def engine200(corpus200) -> SearchEngine:
    from scirank.recommend import train

    engine = SearchEngine(corpus200)
    engine.model = train(corpus200)
    return engine


@pytest.fixture(scope="session")
def queries200() -> list[str]:
    lines = (FIXTURES / "queries.txt").read_text(encoding="utf-8").splitlines()
    return [line for line in lines if line.strip()]


def make_record(doc_id, title="Some title", abstract="", terms=(), authors=(), journal=None, year=None):
    if isinstance(journal, str):
        journal = Journal(journal)
    return BibRecord(doc_id, title, abstract, tuple(terms), tuple(authors), journal, year)


@pytest.fixture
def small_corpus() -> Corpus:
    docs = (
        make_record("d1", "Unemployment and labor markets", "long term unemployment studies",
                    ["Labor Market Policy"], ["A. Smith", "B. Jones"], Journal("J Soc", "1111-1111")),
        make_record("d2", "Financial crisis effects", "stock market crash evidence",
                    ["Stock Market", "Economic Problems"], ["B. Jones", "C. Wu"], Journal("J Econ")),
        make_record("d3", "Unemployment policy review", "",
                    ["Labor Market Policy"], ["A. Smith"], Journal("J Soc", "1111-1111")),
        make_record("d4", "Sports economy survey", "player transfer markets",
                    [], ["D. Li"], None),
    )
    return Corpus(docs)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if "test_acceptance" in report.nodeid and report.when == "call":
                name = report.nodeid.split("::")[-1]
                lines.append((name, status.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{name}: {status}")
