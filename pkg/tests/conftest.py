from importlib import resources

import pytest

import acceptance_log
from dgpoisson import build_uea, parse_document

CORPUS = sorted(p.name for p in resources.files("dgpoisson").joinpath("corpus").iterdir() if p.name.endswith(".dgp"))
SYMMETRIC = ["abelian_1.dgp", "abelian_2.dgp", "abelian_3.dgp", "heisenberg.dgp", "sl2.dgp", "graded_ef.dgp"]


def corpus_text(name: str) -> str:
    return resources.files("dgpoisson").joinpath("corpus", name).read_text(encoding="utf-8")


_docs: dict = {}
_ueas: dict = {}


def load_doc(name: str):
    if name not in _docs:
        _docs[name] = parse_document(corpus_text(name))
    return _docs[name]


def load_uea(name: str):
    if name not in _ueas:
        doc = load_doc(name)
        _ueas[name] = build_uea(doc.presentation, doc.hopf)
    return _ueas[name]


@pytest.fixture
def B():
    return load_doc("restricted_B.dgp").hopf


@pytest.fixture
def heis():
    return load_doc("heisenberg.dgp").hopf


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
