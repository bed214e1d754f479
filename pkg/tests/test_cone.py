from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebcone import _exact as ex
from reebcone.cone import (default_slicing_field, reeb_cone_contains, slice_polytope,
                           validate_good_cone, vertex_weights)
from reebcone.errors import (InvalidCone, NonPrimitiveNormalWarning, NotGood, NotSimple,
                             NotStronglyConvex)

from conftest import CONES, q

ORTHANT2 = [(1, 0), (0, 1)]
ORTHANT3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
CONIFOLD = [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)]


def test_orthant_is_valid():
    c = validate_good_cone(ORTHANT2, 2)
    assert c.rank == 2 and c.labels == (1, 1)
    assert set(c.rays) == {(1, 0), (0, 1)}


def test_non_primitive_normal_is_a_label():
    with pytest.warns(NonPrimitiveNormalWarning, match="m=2"):
        c = validate_good_cone([(2, 0), (0, 1)], 2)
    assert c.labels == (2, 1)
    assert c.primitive_normals == ((1, 0), (0, 1))


def test_conifold_is_valid():
    c = validate_good_cone(CONIFOLD, 3)
    assert len(c.rays) == 4
    # adjacent primitive normals form part of a Z-basis
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        assert ex.lattice_index([CONIFOLD[a], CONIFOLD[b]]) == 1


def test_rejections():
    with pytest.raises(NotStronglyConvex):
        validate_good_cone([(1, 0), (-1, 0)], 2)
    with pytest.raises(InvalidCone):
        validate_good_cone([(1, 0)], 2)
    with pytest.raises(InvalidCone):
        validate_good_cone([(1,)], 1)
    with pytest.raises(InvalidCone):
        validate_good_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 3)   # redundant normal
    # 2x2 minors of (1,0,0), (1,2,2) have gcd 2: the edge they cut out is not good
    with pytest.raises(NotGood) as err:
        validate_good_cone([(1, 0, 0), (0, 1, 0), (1, 2, 2)], 3)
    assert err.value.index == 2 and err.value.face == (0, 2)


def test_non_simple_slice_rejected():
    # cone over a square pyramid; the apex ray lies on the four side facets
    normals = [(1, 0, 0, 0), (0, 1, 0, 0), (-1, 0, 1, 0), (0, -1, 1, 0), (-2, -2, 0, 1)]
    c = validate_good_cone(normals, 4)
    with pytest.raises(NotSimple) as err:
        slice_polytope(c, default_slicing_field(c))
    assert err.value.nfacets == 4


def test_reeb_cone_membership():
    c = validate_good_cone(ORTHANT2)
    assert reeb_cone_contains(c, (1, 1))
    assert not reeb_cone_contains(c, (1, -1))
    assert not reeb_cone_contains(c, (1, 0))
    cf = validate_good_cone(CONIFOLD)
    assert reeb_cone_contains(cf, (3, 1, 1))
    assert not reeb_cone_contains(cf, (1, 1, 1))      # ray (1,-1,0) pairs to zero


def test_slice_examples():
    s = slice_polytope(validate_good_cone(ORTHANT2), (1, 1))
    assert set(s.vertices) == {q("1/2", 0), q(0, "1/2")}
    s = slice_polytope(validate_good_cone(ORTHANT3), (1, 1, 1))
    assert set(s.vertices) == {q("1/2", 0, 0), q(0, "1/2", 0), q(0, 0, "1/2")}
    s = slice_polytope(validate_good_cone(CONIFOLD), (1, "1/2", "1/2"))
    assert len(s.vertices) == 4 and len(s.edges) == 4


def _weights_at(normals, b_o, x):
    c = validate_good_cone(normals)
    s = slice_polytope(c, b_o)
    return vertex_weights(c, s, s.vertices.index(q(*x)))


def test_vertex_weight_examples():
    w = _weights_at(ORTHANT2, (1, 1), ("1/2", 0))
    assert w.kappa == (q(1, 0), q(-2, 2)) and w.d == 1
    w = _weights_at(ORTHANT3, (1, 1, 1), ("1/2", 0, 0))
    assert set(w.kappa[1:]) == {q(-2, 2, 0), q(-2, 0, 2)}
    assert w.kappa[0] == q(1, 0, 0) and w.d == 1


def test_weighted_orthant_orders():
    # weighted sphere slice: d is the weight of the coordinate axis
    c = validate_good_cone(ORTHANT3)
    s = slice_polytope(c, (1, 2, 3))
    ds = sorted(vertex_weights(c, s, v).d for v in range(3))
    assert ds == [1, 2, 3]


@pytest.mark.parametrize("name", sorted(CONES))
def test_vertex_invariants_on_catalog(name):
    c = CONES[name]
    b_o = default_slicing_field(c)
    s = slice_polytope(c, b_o)
    for v, x in enumerate(s.vertices):
        assert ex.dot(x, b_o) == Fraction(1, 2)
        w = vertex_weights(c, s, v)
        assert ex.dot(w.kappa[0], b_o) == 1
        assert all(ex.dot(k, b_o) == 0 for k in w.kappa[1:])
        assert w.d >= 1 and len(w.kappa) == c.rank


def test_rational_slicing_field_rejected_for_weights():
    c = validate_good_cone(CONIFOLD)
    s = slice_polytope(c, (1, "1/2", "1/2"))
    with pytest.raises(ValueError):
        vertex_weights(c, s, 0)


pos = st.fractions(min_value=Fraction(1, 50), max_value=50)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CONES)), st.lists(st.fractions(-20, 20), min_size=4, max_size=4), pos)
def test_membership_scale_invariant(name, b, t):
    c = CONES[name]
    b = tuple(b[: c.rank])
    assert reeb_cone_contains(c, b) == reeb_cone_contains(c, tuple(t * x for x in b))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(CONES)), st.lists(pos, min_size=4, max_size=4))
def test_slice_level_exact(name, lam):
    c = CONES[name]
    b = tuple(sum(l * u[i] for l, u in zip(lam, c.primitive_normals)) for i in range(c.rank))
    s = slice_polytope(c, b)
    assert all(ex.dot(x, b) == Fraction(1, 2) for x in s.vertices)
