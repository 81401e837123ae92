import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.setrecursionlimit(30000)

import pytest

from grip.model import Bounds, Model
from grip.precision import Decider
from grip.typecheck import Checker

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def checker():
    return Checker()


@pytest.fixture(scope="session")
def model():
    return Model(Bounds())


@pytest.fixture(scope="session")
def decider(checker, model):
    return Decider(checker=checker, model=model)


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
