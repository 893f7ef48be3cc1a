import pytest

from hoopforge import godel_chain, lukasiewicz_chain, standard_corpus, trivial_hoop


@pytest.fixture(scope="session")
def L3():
    return lukasiewicz_chain(3)


@pytest.fixture(scope="session")
def G3():
    return godel_chain(3)


@pytest.fixture(scope="session")
def C2():
    return lukasiewicz_chain(2)


@pytest.fixture(scope="session")
def terminal():
    return trivial_hoop()


@pytest.fixture(scope="session")
def corpus4():
    """All hoops of order <= 4 up to isomorphism (no bottom designated)."""
    return standard_corpus(4)


@pytest.fixture(scope="session")
def corpus5():
    return standard_corpus(5)
