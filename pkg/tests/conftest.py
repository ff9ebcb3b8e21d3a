import pathlib

import pytest

from homsuper.corpus import corpus

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO_ROOT / "corpus"


@pytest.fixture(scope="session")
def algebras():
    return corpus()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


def pytest_generate_tests(metafunc):
    if "corpus_name" in metafunc.fixturenames:
        metafunc.parametrize("corpus_name", sorted(corpus()))
