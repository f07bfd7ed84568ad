import pathlib

import pytest

from amwidth import files, zoo
from amwidth.matroid import Matroid

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus_dir():
    assert CORPUS.is_dir(), "run scripts/build_corpus.py first"
    return CORPUS


@pytest.fixture(scope="session")
def corpus_decompositions(corpus_dir):
    out = {}
    for path in sorted((corpus_dir / "decompositions").glob("*.json")):
        out[path.stem] = files.load_decomposition(path)
    assert len(out) >= 15
    return out


@pytest.fixture(scope="session")
def corpus_formulas(corpus_dir):
    out = {}
    for path in sorted((corpus_dir / "formulas").glob("*.mso")):
        out[path.stem] = path.read_text().strip()
    assert len(out) >= 10
    return out


@pytest.fixture
def k3():
    return zoo.triangle(1, 2, 3)


@pytest.fixture
def k4():
    return zoo.k4_graphic()


@pytest.fixture
def u24():
    return Matroid.uniform(2, [1, 2, 3, 4])


@pytest.fixture
def fano():
    return zoo.fano()
