import pytest

from partialpi.corpus import builtin_corpus


@pytest.fixture(scope="session")
def corpus():
    """One shared corpus so per-group caches persist across the whole run."""
    return builtin_corpus()


@pytest.fixture(scope="session")
def groups(corpus):
    return {name: corpus.group(name) for name in corpus.names()}
