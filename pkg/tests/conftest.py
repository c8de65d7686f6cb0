import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from boundaryk.cli import CORPUS, corpus_text  # noqa: E402
from boundaryk.spaces import parse_space_file  # noqa: E402


def load(name):
    return parse_space_file(corpus_text(name))


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in CORPUS}


@pytest.fixture
def genus2(corpus):
    return corpus["genus2"]


@pytest.fixture
def hs3(corpus):
    return corpus["hs3"]
