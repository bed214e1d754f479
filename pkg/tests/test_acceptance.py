"""Acceptance criteria 1 to 10, each printing a single PASS/FAIL line."""
import math
import random
import time
from fractions import Fraction

import numpy as np

from reebcone import _exact as ex
from reebcone.cone import reeb_cone_contains
from reebcone.errors import GridTooCoarse, VanishingWeight
from reebcone.localize import (boundary_leading_term, evaluate, is_generic, raw_functional,
                               volume)
from reebcone.optimize import (build_slice, critical_rays_2d, minimize, probe_boundary,
                               random_boundary_point)
from reebcone.oracle import oracle_volume
from reebcone.verify import (check_euler, check_gradient, check_homogeneity, check_oracle,
                             check_paths, random_reeb_vector)

from conftest import CONES, DATASETS, record

PI = math.pi


def angle(u, v):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return 2 * math.asin(np.linalg.norm(u / np.linalg.norm(u) - v / np.linalg.norm(v)) / 2)


def run_suite(check, samples, tag):
    failures = []
    for name in sorted(CONES):
        ok, detail = check(CONES[name], DATASETS[name], random.Random(f"{tag}:{name}"), samples)
        if not ok:
            failures.append(f"{name}: {detail}")
    return failures


def test_criterion_1_oracle_equivalence():
    ranks = {c.rank for c in CONES.values()}
    t0 = time.perf_counter()
    failures = run_suite(check_oracle, 20, "oracle")
    dt = time.perf_counter() - t0
    ok = not failures and len(CONES) >= 8 and ranks >= {2, 3, 4} and dt < 60
    detail = f"{len(CONES)} cones x 20 points, {dt:.1f}s" + (f"; {failures}" if failures else "")
    assert record(1, "oracle equivalence", ok, detail)


def test_criterion_2_homogeneity_and_euler():
    failures = run_suite(check_homogeneity, 50, "hom") + run_suite(check_euler, 50, "euler")
    assert record(2, "homogeneity and Euler", not failures,
                  f"{len(CONES)} cones x 50 points" + (f"; {failures}" if failures else ""))


def test_criterion_3_sphere_anchors():
    got = {
        1: tuple(evaluate(f, DATASETS["orthant2"], (1, 1)) for f in "VSH"),
        2: tuple(evaluate(f, DATASETS["orthant3"], (1, 1, 1)) for f in "VSH"),
    }
    want = {1: (2, 16, 128), 2: (1, 24, 13824)}
    ok = all(tuple(v.q for v, _ in got[n]) == want[n] for n in want)
    ok &= all(used for n in got for _, used in got[n])
    ok &= all(v.pi_power == n + 1 for n in got for v, _ in got[n])
    detail = "; ".join(f"n={n}: " + ", ".join(str(v) for v, _ in got[n]) for n in got)
    assert record(3, "sphere anchors", ok, detail)


def test_criterion_4_boundary_properness():
    names = sorted(CONES)
    per = {name: 100 // len(names) + (i < 100 % len(names)) for i, name in enumerate(names)}
    bad, rays, worst = [], 0, math.inf
    for name in names:
        D = DATASETS[name]
        problem = build_slice(CONES[name])
        rng = random.Random(f"boundary:{name}")
        center = {f: evaluate(f, D, problem.center)[0].q for f in "VSH"}
        for _ in range(per[name]):
            t, p = random_boundary_point(problem, rng)
            pr = probe_boundary(problem, t, base=p, functionals=("V", "S", "H"))
            last = pr.rows[-1]
            for f in "VSH":
                ratio = last[f] / (float(center[f]) * PI ** (D.n + 1))
                worst = min(worst, ratio)
                if not ratio > 1e6:
                    bad.append((name, f, t))
            d = tuple(y - x for x, y in zip(t, p))
            for f in "VSH":
                if boundary_leading_term(f, D, t, d).coefficient.q <= 0:
                    bad.append((name, f, "coefficient"))
            rays += 1
    assert record(4, "boundary properness", not bad and rays == 100,
                  f"{rays} rays, smallest final/center ratio {worst:.3g}, "
                  f"{len(bad)} failures")


def test_criterion_5_gradient_fidelity():
    t0 = time.perf_counter()
    failures = run_suite(check_gradient, 50, "grad")
    dt = time.perf_counter() - t0
    assert record(5, "gradient fidelity", not failures and dt < 30,
                  f"{len(CONES)} cones x 50 points, {dt:.1f}s" + (f"; {failures}" if failures else ""))


def test_criterion_6_minimization():
    bad, notes = [], []
    for name in sorted(CONES):
        r = minimize(build_slice(CONES[name]))
        if not r.boundary_distance > 0 or not r.gradient_norm <= 1e-10:
            bad.append(f"{name}: distance {r.boundary_distance}, |g| {r.gradient_norm}")
        if name in ("orthant2", "orthant3"):
            a = angle(r.argmin, (1,) * CONES[name].rank)
            notes.append(f"{name} angle {a:.1e} |g| {r.gradient_norm:.1e}")
            if not (a < 1e-8 and r.gradient_norm < 1e-10):
                bad.append(f"{name}: not diagonal")
    assert record(6, "minimization", not bad, "; ".join(notes + bad))


def golden(f, lo, hi, tol):
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def feasible(guards, fixed):
    """Open interval of the next coordinate keeping <g, b> > 0 for every guard."""
    lo, hi = -math.inf, math.inf
    for g in guards:
        const = sum(float(gi) * x for gi, x in zip(g, fixed))
        slope = float(g[len(fixed)])
        if slope > 0:
            lo = max(lo, -const / slope)
        elif slope < 0:
            hi = min(hi, -const / slope)
    pad = 1e-9 * (hi - lo)
    return lo + pad, hi - pad


def conifold_oracle_minimum():
    """Nested golden-section search of oracle_volume over b = (3, y, z)."""
    cone = CONES["conifold"]
    guards = [ex.vec(r) for r in cone.rays]
    # guards independent of z bound y; the rest bound z once y is fixed
    ylo, yhi = feasible([g for g in guards if g[2] == 0], (3,))

    def vol(b):
        return float(oracle_volume(cone, tuple(Fraction(x) for x in b)).q)

    def inner(y):
        lo, hi = feasible(guards, (3, y))
        return golden(lambda z: vol((3, y, z)), lo, hi, 1e-10)[1]

    return golden(inner, ylo, yhi, 1e-10)[1]


def test_criterion_7_conifold_cross_check():
    r = minimize(build_slice(CONES["conifold"], zeta=(Fraction(1, 3), 0, 0), target="V"))
    local = r.value / PI ** 3
    oracle = conifold_oracle_minimum()
    rel_oracle = abs(local - oracle) / oracle
    rel_closed = abs(local - 16 / 27) / (16 / 27)
    ok = rel_oracle <= 1e-8 and rel_closed <= 1e-6
    assert record(7, "conifold cross-check", ok,
                  f"V_min = {local:.15g} pi^3, oracle {oracle:.15g} pi^3 "
                  f"(rel {rel_oracle:.1e}), 16/27 rel {rel_closed:.1e}")


def test_criterion_8_critical_ray_isolation():
    bad, counts = [], {}
    for name in ("orthant3", "conifold"):
        cone, D = CONES[name], DATASETS[name]
        rng = random.Random(f"census:{name}")
        counts[name] = []
        for _ in range(5):
            b1, b2 = random_reeb_vector(cone, rng), random_reeb_vector(cone, rng)
            try:
                c = critical_rays_2d(D, b1, b2, grid=60)
            except GridTooCoarse as err:
                bad.append(f"{name}: {err}")
                continue
            counts[name].append(c.count)
            if c.count < 1 or any(r["width"] <= 0 and r["kind"] != "zero" for r in c.roots):
                bad.append(f"{name}: census {c.to_dict()}")
    s3 = critical_rays_2d(DATASETS["orthant2"], (1, 0), (0, 1), grid=60)
    if s3.count != 1:
        bad.append(f"orthant2 found {s3.count}")
    assert record(8, "critical-ray isolation", not bad,
                  f"counts {counts}, orthant2 {s3.count}" + (f"; {bad}" if bad else ""))


def nongeneric_points(name, rng, count):
    """Reeb vectors on weight hyperplanes <kappa_j, b> = 0 (j >= 1)."""
    cone, D = CONES[name], DATASETS[name]
    weights = sorted({w for z in D.components for w in z.weights[1:]})
    out = []
    while len(out) < count:
        w = weights[rng.randrange(len(weights))]
        b = random_reeb_vector(cone, rng)
        d = random_reeb_vector(cone, rng)
        if ex.dot(w, d) == 0:
            continue
        t = ex.dot(w, b) / ex.dot(w, d)
        b0 = tuple(x - t * y for x, y in zip(b, d))
        if reeb_cone_contains(cone, b0):
            out.append(b0)
    return out


def test_criterion_9_non_generic_handling():
    bad, checked, worst = [], 0, 0.0
    for name in sorted(CONES):
        D = DATASETS[name]
        rng = random.Random(f"nongeneric:{name}")
        for b0 in nongeneric_points(name, rng, 3):
            try:
                volume(D, b0)
                bad.append(f"{name}: no VanishingWeight at {b0}")
            except VanishingWeight:
                pass
            near = b0
            for k in range(40, 60):
                near = tuple(x + Fraction(j + 1, 10 ** k) for j, x in enumerate(b0))
                if is_generic(D, near):
                    break
            for f in "VSH":
                val, used = evaluate(f, D, b0)
                ref = float(raw_functional(f, D, near))
                rel = abs(float(val.q) - ref) / abs(ref)
                worst = max(worst, rel)
                if not used or math.isnan(float(val.q)) or rel > 1e-9:
                    bad.append(f"{name} {f} at {b0}: rel {rel:.1e}")
                checked += 1
    assert record(9, "non-generic handling", not bad,
                  f"{checked} limit evaluations, max relative gap {worst:.1e}"
                  + (f"; {bad}" if bad else ""))


def test_criterion_10_path_equality():
    failures = run_suite(check_paths, 20, "paths")
    assert record(10, "path equality", not failures,
                  f"{len(CONES)} cones x 20 points" + (f"; {failures}" if failures else ""))
