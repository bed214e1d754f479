"""Consistency suites run by ``reebcone verify`` and the acceptance tests."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import _exact as ex
from .errors import VanishingWeight
from .fixed_locus import dataset_from_cone
from .localize import (boundary_leading_term, evaluate, gradient, is_generic, mirror,
                       raw_functional, toric_vertex_sum, total_scalar, volume)
from .optimize import build_slice, probe_boundary, random_boundary_point
from .oracle import oracle_scalar, oracle_volume


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_reeb_vector(cone, rng, D=None, lo=1, hi=9):
    """Positive rational combination of the normals, generic for D if given."""
    while True:
        lam = [Fraction(rng.randint(lo, hi), rng.randint(1, 5)) for _ in cone.normals]
        b = tuple(sum(l * u[i] for l, u in zip(lam, cone.primitive_normals))
                  for i in range(cone.rank))
        if D is None or is_generic(D, b):
            return b


def check_oracle(cone, D, rng, samples):
    bad = []
    for _ in range(samples):
        b = random_reeb_vector(cone, rng, D)
        if volume(D, b) != oracle_volume(cone, b) or total_scalar(D, b) != oracle_scalar(cone, b):
            bad.append(b)
    return not bad, f"{samples - len(bad)}/{samples} exact matches"


def check_paths(cone, D, rng, samples):
    bad = 0
    for _ in range(samples):
        b = random_reeb_vector(cone, rng, D)
        v, s = toric_vertex_sum(cone, b)
        bad += v != volume(D, b) or s != total_scalar(D, b)
    return bad == 0, f"{samples - bad}/{samples} dataset/vertex-sum matches"


def check_homogeneity(cone, D, rng, samples):
    n = D.n
    bad = 0
    for _ in range(samples):
        b = random_reeb_vector(cone, rng, D)
        t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        tb = tuple(t * x for x in b)
        v, s, h = (raw_functional(f, D, b) for f in "VSH")
        tv, ts, th = (raw_functional(f, D, tb) for f in "VSH")
        bad += not (tv == v / t ** (n + 1) and ts == s / t ** n and th == h)
    return bad == 0, f"{samples - bad}/{samples} exact scalings"


def check_euler(cone, D, rng, samples):
    n = D.n
    bad = 0
    for _ in range(samples):
        b = random_reeb_vector(cone, rng, D)
        ok = True
        for f, deg in (("V", -(n + 1)), ("S", -n), ("H", 0)):
            g = gradient(f, D, b).q
            ok &= ex.dot(g, b) == deg * raw_functional(f, D, b)
        bad += not ok
    return bad == 0, f"{samples - bad}/{samples} exact Euler identities"


def gradient_fd_error(D, name, b, h=1e-6):
    """Norm-relative error between the exact gradient and central differences."""
    g = [float(x) * math.pi ** (D.n + 1) for x in gradient(name, D, b).q]
    bf = [float(x) for x in b]
    fd = []
    for i in range(len(bf)):
        up, dn = list(bf), list(bf)
        up[i] += h
        dn[i] -= h
        fd.append((mirror(name, D, up) - mirror(name, D, dn)) / (2 * h))
    num = math.sqrt(sum((a - c) ** 2 for a, c in zip(g, fd)))
    den = math.sqrt(sum(a * a for a in g))
    return num / den if den else num


def check_gradient(cone, D, rng, samples):
    worst = 0.0
    for _ in range(samples):
        b = random_reeb_vector(cone, rng, D)
        for f in ("V", "S", "H"):
            worst = max(worst, gradient_fd_error(D, f, b))
    return worst <= 1e-6, f"max relative error {worst:.2e}"


def check_boundary(cone, D, rng, samples):
    problem = build_slice(cone, target="H")
    bad = []
    for _ in range(samples):
        t, p = random_boundary_point(problem, rng)
        d = tuple(y - x for x, y in zip(t, p))
        for f in ("V", "S", "H"):
            lt = boundary_leading_term(f, D, t, d)
            if lt.coefficient.q <= 0 or lt.exponent < 1:
                bad.append((f, t))
        pr = probe_boundary(problem, t, base=problem.center, functionals=("V", "S", "H"))
        if not pr.passed:
            bad.append(("probe", t))
    return not bad, f"{samples - len(bad)}/{samples} boundary paths blow up with positive leading terms"


def check_anchors(entry, D):
    bad = []
    for a in entry.anchors:
        val, _ = evaluate(a.functional, D, a.b)
        if val.q != a.q:
            bad.append(f"{a.functional}{a.b}: {ex.fmt(val.q)} != {ex.fmt(a.q)}")
    return not bad, "; ".join(bad) or f"{len(entry.anchors)} anchors exact"


SUITES = {
    "oracle": check_oracle,
    "paths": check_paths,
    "homogeneity": check_homogeneity,
    "euler": check_euler,
    "gradient": check_gradient,
    "boundary": check_boundary,
}


def verify_cone(cone, samples=20, seed=0, entry=None, suites=None):
    D = dataset_from_cone(cone)
    out = []
    for name in sorted(suites or SUITES):
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            ok, detail = SUITES[name](cone, D, rng, samples)
        except (ValueError, ZeroDivisionError, VanishingWeight) as err:
            ok, detail = False, f"{type(err).__name__}: {err}"
        out.append(CheckResult(f"{cone.name or 'cone'}/{name}", ok, detail,
                               time.perf_counter() - t0))
    if entry is not None and entry.anchors:
        ok, detail = check_anchors(entry, D)
        out.append(CheckResult(f"{cone.name}/anchors", ok, detail))
    return out
