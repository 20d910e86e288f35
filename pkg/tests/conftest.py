from __future__ import annotations

import pytest

from ontokit.corpus import load_corpus
from ontokit.reasoner import compute_closure, realize


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_closure(corpus):
    closure, diags = compute_closure(corpus)
    assert closure is not None, diags
    return closure


@pytest.fixture(scope="session")
def corpus_realization(corpus, corpus_closure):
    return realize(corpus, corpus_closure)
