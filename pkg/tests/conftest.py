"""Shared fixtures: the example corpus, decoded once per session."""

import pytest

from hgx.io import corpus_documents, decode_bialgebroid, write_corpus

MODEL_NAMES = ("z2", "z3", "z2z2", "env_qxq", "env_ut2")
GROUP_MODELS = ("z2", "z3", "z2z2")


@pytest.fixture(scope="session")
def docs():
    return dict(corpus_documents())


@pytest.fixture(scope="session")
def models(docs):
    return {name: decode_bialgebroid(docs[name]) for name in MODEL_NAMES}


@pytest.fixture(scope="session")
def z2(models):
    return models["z2"]


@pytest.fixture(scope="session")
def z3(models):
    return models["z3"]


@pytest.fixture(scope="session")
def z2z2(models):
    return models["z2z2"]


@pytest.fixture(scope="session")
def env_qxq(models):
    return models["env_qxq"]


@pytest.fixture(scope="session")
def env_ut2(models):
    return models["env_ut2"]


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    write_corpus(str(d))
    return d
