import math
import random
from fractions import Fraction

import numpy as np
import pytest

from reebcone.catalog import merged_sphere_dataset
from reebcone.errors import NotTransversal
from reebcone.optimize import (boundary_distance, build_slice, critical_rays_2d, minimize,
                               probe_boundary, random_boundary_point, subcone_chord)

from conftest import CONES, DATASETS, q

O2, O3 = CONES["orthant2"], CONES["orthant3"]


def angle(u, v):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return 2 * math.asin(np.linalg.norm(u / np.linalg.norm(u) - v / np.linalg.norm(v)) / 2)


def test_build_slice_orthants():
    p = build_slice(O2)
    assert p.zeta == q(1, 1)
    assert set(p.vertices) == {q(1, 0), q(0, 1)}
    assert p.center == q(Fraction(1, 2), Fraction(1, 2))
    p3 = build_slice(O3, zeta=(1, 1, 1))
    assert set(p3.vertices) == {q(1, 0, 0), q(0, 1, 0), q(0, 0, 1)}


def test_build_slice_rejects():
    with pytest.raises(NotTransversal):
        build_slice(O2, zeta=(1, -1))
    with pytest.raises(ValueError):
        build_slice(O2, target="W")


def test_build_slice_from_dataset():
    # guards are the fiber weights; P is the segment between the two block axes
    p = build_slice(merged_sphere_dataset((1, 2)))
    assert set(p.vertices) == {q(1, 0), q(0, 1)}


def test_minimize_s3():
    r = minimize(build_slice(O2, starts=4))
    assert angle(r.argmin, (1, 1)) < 1e-8
    assert math.isclose(r.value, 128 * math.pi ** 2, rel_tol=1e-12)
    assert r.gradient_norm < 1e-10
    assert r.certificate == q(Fraction(1, 2), Fraction(1, 2))
    assert r.n_critical_rays == 1


def test_minimize_s5_diagonal():
    r = minimize(build_slice(O3, starts=6))
    assert angle(r.argmin, (1, 1, 1)) < 1e-8
    assert r.gradient_norm < 1e-10
    assert r.boundary_distance > 0
    assert r.certificate_rel_change <= 1e-6


def test_conifold_volume_minimum():
    r = minimize(build_slice(CONES["conifold"], zeta=(Fraction(1, 3), 0, 0), target="V", starts=4))
    assert math.isclose(r.value, 16 * math.pi ** 3 / 27, rel_tol=1e-10)
    assert max(abs(a - c) for a, c in zip(r.argmin, (3, 1.5, 1.5))) < 1e-8


def test_s3_h_and_v_share_minimizer():
    rh = minimize(build_slice(O2, starts=3, target="H"))
    rv = minimize(build_slice(O2, zeta=(1, 1), starts=3, target="V"))
    assert angle(rh.argmin, rv.argmin) < 1e-8


def test_h_and_h1_same_ray():
    C = CONES["Y2_1"]
    rh = minimize(build_slice(C, starts=4, target="H"))
    r1 = minimize(build_slice(C, starts=4, target="H1"))
    assert angle(rh.argmin, r1.argmin) < 1e-8


def test_deterministic():
    C = CONES["lens3_1"]
    a = minimize(build_slice(C, starts=5, seed=7)).to_dict()
    b = minimize(build_slice(C, starts=5, seed=7)).to_dict()
    assert a == b


def test_probe_s3():
    p = build_slice(O2)
    pr = probe_boundary(p, (1, 0), functionals=("V", "S", "H"))
    assert pr.passed
    assert all(pr.monotone.values())
    # V ~ 2 pi^2 / b2 and S ~ 8 pi^2 / b2: both grow tenfold per step
    last, prev = pr.rows[-1], pr.rows[-2]
    assert math.isclose(last["V"] / prev["V"], 10, rel_tol=1e-9)
    assert math.isclose(last["S"] / prev["S"], 10, rel_tol=1e-9)
    with pytest.raises(ValueError):
        probe_boundary(p, (Fraction(1, 2), Fraction(1, 2)))


@pytest.mark.parametrize("name", ["orthant3", "conifold", "Y3_2"])
def test_probe_random_facets(name):
    p = build_slice(CONES[name])
    rng = random.Random(name)
    for _ in range(3):
        t, start = random_boundary_point(p, rng)
        assert sum(1 for s in p.slack(t) if s == 0) == 1
        assert probe_boundary(p, t, base=start, functionals=("V", "S", "H")).passed


def test_boundary_distance():
    p = build_slice(O2)
    assert boundary_distance(p, p.center) > 0
    assert boundary_distance(p, (1, 0)) == 0


def test_census_s3():
    c = critical_rays_2d(DATASETS["orthant2"], (1, 0), (0, 1), grid=50)
    assert c.count == 1
    assert angle(c.roots[0]["b"], (1, 1)) < 1e-12


def test_census_s5_diagonal_span():
    c = critical_rays_2d(DATASETS["orthant3"], (1, 1, 1), (1, 1, 2), grid=40)
    assert c.count >= 1
    assert any(angle(r["b"], (1, 1, 1)) < 1e-12 for r in c.roots)
    widths = sorted(r["s"] for r in c.roots)
    assert all(b - a > 1e-12 for a, b in zip(widths, widths[1:]))


def test_census_degenerate_span():
    with pytest.raises(ValueError):
        critical_rays_2d(DATASETS["orthant3"], (1, 1, 1), (2, 2, 2))


def test_subcone_chord_s5():
    R1, R2 = subcone_chord(DATASETS["orthant3"], (1, 1, 1), (1, 1, 2))
    # the plane meets the closed cone along (0, 0, 1) and (1, 1, 0)
    rays = {tuple(x / max(r) for x in r) for r in (R1, R2)}
    assert rays == {q(0, 0, 1), q(1, 1, 0)}

