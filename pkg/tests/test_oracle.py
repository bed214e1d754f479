from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebcone.cone import slice_polytope, validate_good_cone
from reebcone.oracle import (facet_measures, oracle_scalar, oracle_volume, triangulate,
                             truncated_cone_volume)
from reebcone.verify import random_reeb_vector

from conftest import CONES

O2, O3 = CONES["orthant2"], CONES["orthant3"]


def test_truncated_volumes():
    assert truncated_cone_volume(O2, (1, 1)) == Fraction(1, 8)
    assert truncated_cone_volume(O3, (1, 1, 1)) == Fraction(1, 48)
    assert truncated_cone_volume(O2, (1, 2)) == Fraction(1, 16)


def test_facet_measures():
    assert Counter(facet_measures(O2, (1, 2))) == Counter([Fraction(1, 2), Fraction(1, 4)])
    assert facet_measures(O3, (1, 1, 1)) == (Fraction(1, 8),) * 3


def test_oracle_functionals():
    assert oracle_volume(O2, (1, 1)).q == 2
    assert oracle_volume(O3, (1, 1, 1)).q == 1
    assert oracle_volume(O2, (1, 2)).q == 1
    assert oracle_scalar(O2, (1, 1)).q == 16
    assert oracle_scalar(O3, (1, 1, 1)).q == 24
    assert oracle_scalar(O2, (1, 2)).q == 12
    assert oracle_volume(O3, (1, 1, 1)).pi_power == 3


def test_conifold_square():
    # the slice at b = (3, 3/2, 3/2) is a square; four simplices from any pulling
    C = CONES["conifold"]
    b = (3, Fraction(3, 2), Fraction(3, 2))
    slc = slice_polytope(C, b)
    assert len(slc.vertices) == 4
    assert len(triangulate(C, slc)) == 2
    assert oracle_volume(C, b).q == Fraction(16, 27)


def test_non_primitive_facet_label():
    # the doubled normal counts its facet with weight 1/2
    with pytest.warns(Warning):
        C = validate_good_cone([(2, 0), (0, 1)])
    fm = facet_measures(C, (1, 1))
    assert fm[0] == facet_measures(O2, (1, 1))[0] / 2


@pytest.mark.parametrize("name", sorted(CONES))
def test_triangulation_independent(name, rng):
    C = CONES[name]
    for _ in range(3):
        b = random_reeb_vector(C, rng)
        assert truncated_cone_volume(C, b, pull=min) == truncated_cone_volume(C, b, pull=max)
        assert facet_measures(C, b, pull=min) == facet_measures(C, b, pull=max)


@pytest.mark.parametrize("name", sorted(CONES))
def test_positive(name, rng):
    C = CONES[name]
    b = random_reeb_vector(C, rng)
    assert truncated_cone_volume(C, b) > 0
    assert all(m > 0 for m in facet_measures(C, b))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(CONES)), st.fractions(Fraction(1, 5), 5), st.integers(0, 10 ** 6))
def test_scaling(name, t, seed):
    import random
    C = CONES[name]
    b = random_reeb_vector(C, random.Random(seed))
    tb = tuple(t * x for x in b)
    n = C.n
    assert truncated_cone_volume(C, tb) == truncated_cone_volume(C, b) / t ** (n + 1)
    assert facet_measures(C, tb) == tuple(m / t ** n for m in facet_measures(C, b))
