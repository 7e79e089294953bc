import sys
from functools import lru_cache
from pathlib import Path

import pytest

from lgms.polyspec import ExponentMatrix, model_from_dict, parse_document
from lgms.symmetry import resolve_group
from lgms.tables import BigradedTable

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
sys.path.insert(0, str(Path(__file__).resolve().parent))

ACCEPTANCE_LINES = []


def fermat(n, exponent=None):
    e = exponent or 2 * n
    return ExponentMatrix.of([[e if i == j else 0 for j in range(n)] for i in range(n)])


def table(d):
    return BigradedTable({k: v for k, v in d.items() if v})


@lru_cache(maxsize=None)
def corpus_models():
    """(name, matrix, group) for every single-model corpus file."""
    out = []
    for path in sorted(CORPUS.glob("*.toml")):
        doc = parse_document(path.read_text())
        if doc.get("kind") == "product":
            continue
        spec = model_from_dict(doc, path.stem)
        out.append((path.stem, spec.matrix, resolve_group(spec.matrix, spec.group,
                                                          spec.generators)))
    return tuple(out)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def inhomog():
    return ExponentMatrix.of([[4, 0, 1], [1, 0, 7], [0, 6, 0]])
