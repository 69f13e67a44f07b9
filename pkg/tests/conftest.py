import pytest

from kacc.alphabet import double, make_set


@pytest.fixture
def discrete_ab():
    return make_set(["a", "b"])


@pytest.fixture
def discrete_abc():
    return make_set(["a", "b", "c"])


@pytest.fixture
def commuting_ab():
    return make_set(["a", "b"], "pairs", [("a", "b")])


@pytest.fixture
def pairs_abc():
    return make_set(["a", "b", "c"], "pairs", [("a", "b")])


@pytest.fixture
def doubled_ab():
    return double(make_set(["a", "b"]))
