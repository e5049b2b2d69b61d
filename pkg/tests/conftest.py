import pathlib

import pytest

from defsort.syntax import parse_source

CORPUS = pathlib.Path(__file__).parent / "corpus"


@pytest.fixture
def corpus_dir():
    return CORPUS


def read_corpus(name):
    return (CORPUS / name).read_text()


def parse_corpus(name):
    path = CORPUS / name
    return parse_source(path.read_text(), file=str(path))


def single_module(name):
    mods = parse_corpus(name)
    assert len(mods) == 1
    return mods[0]
