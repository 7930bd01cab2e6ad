import pytest

from chainiso.families import Family, FamilySlice, enumerate_family
from chainiso.ptransform import make


@pytest.fixture
def alpha():
    return make(10, [(1, 3), (2, 4), (4, 6), (7, 9), (8, 10)])


@pytest.fixture
def beta():
    return make(10, [(2, 10), (4, 8), (7, 5), (8, 4)])


_cache = {}


def elements(family, n, height=None):
    key = (Family.parse(family), n, height)
    if key not in _cache:
        _cache[key] = list(enumerate_family(FamilySlice(key[0], n, height)))
    return _cache[key]
