import random
from fractions import Fraction

import pytest

from sblinks.errors import SmallE
from sblinks.genus_bounds import CoverParams, covgen_from_min_degree, covgen_lower_bound


def test_examples():
    e, b = covgen_lower_bound(2, 6, 2)
    assert e == 3 and b == Fraction(5, 2)
    e, b = covgen_lower_bound(3, 4, 3)
    assert e == 4 and b == 3
    with pytest.raises(SmallE):
        covgen_lower_bound(2, 3, 2)


def test_min_degree_bound():
    assert covgen_from_min_degree(4) == 3
    assert covgen_from_min_degree(0) == 1
    # the projective-bundle shape with d = 10, n = 2 gives a = d - n = 8... bound 5
    assert covgen_from_min_degree(10 - 2) == 5
    with pytest.raises(ValueError):
        covgen_from_min_degree(-1)


def test_consistency_identity():
    rng = random.Random(2024)
    checked = 0
    while checked < 100:
        m = rng.randint(2, 6)
        d = rng.randint(1, 9)
        n = rng.randint(2, 6)
        e = (m - 1) * d - n - 1
        if e < 1:
            continue
        e2, b = covgen_lower_bound(m, d, n)
        assert e2 == e
        assert b == covgen_from_min_degree(e)
        checked += 1


def test_cover_params_validation():
    with pytest.raises(ValueError):
        CoverParams(1, 6, 2)
    with pytest.raises(ValueError):
        CoverParams(2, 0, 2)
    with pytest.raises(ValueError):
        CoverParams(2, 6, 1)
