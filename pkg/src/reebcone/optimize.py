"""Minimization of the functionals over a transversal slice of the Reeb cone.

The slice is ``P = {b : <zeta, b> = 1, <g_i, b> >= 0}`` where the guards g_i
cut out the closed Reeb cone (rays of the moment cone in the toric case,
fiber weights kappa_0 for a general dataset).  Points of P are written
``b = c + B y`` with c the vertex average and B a rational basis of zeta^perp.

Descent runs in floating point but every value, gradient and Hessian is
computed exactly at the dyadic rational represented by the current float
iterate, so cancellations near weight hyperplanes cost nothing.  Converged
points are then polished by exact rational Newton steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.stats import qmc

from . import _exact as ex
from .cone import GoodCone, cone_rays
from .errors import (GridTooCoarse, NonConvergence, NotTransversal, ReebConeError,
                     VanishingWeight)
from .fixed_locus import dataset_from_cone
from .localize import (FUNCTIONALS, FunctionalValue, directional_derivative, evaluate,
                       evaluate_limit, gradient_any, raw_functional, value_grad_hess)

_POLISH_GRID = 2 ** 100   # iterates are rounded to this grid


@dataclass
class SliceProblem:
    dataset: object
    zeta: tuple
    guards: tuple
    vertices: tuple
    center: tuple
    basis: tuple
    target: str = "H"
    cone: GoodCone | None = None
    tol: float = 1e-10
    max_iter: int = 100
    starts: int = 16
    seed: int = 0

    @property
    def rank(self):
        return len(self.zeta)

    @property
    def pi_power(self):
        return self.dataset.n + 1

    def point(self, y):
        """b = c + B y, exact when y is rational."""
        b = list(self.center)
        for yi, col in zip(y, self.basis):
            for j, x in enumerate(col):
                b[j] = b[j] + yi * x
        return tuple(b)

    def slack(self, b):
        return [sum(gi * bi for gi, bi in zip(g, b)) for g in self.guards]


def build_slice(source, zeta=None, target="H", **options):
    """Slice problem for a cone (toric) or a LocalizationDataset.

    Default zeta: the sum of the ray generators of the moment cone, or the sum
    of the fiber weights kappa_0 of a dataset.
    """
    if target not in FUNCTIONALS:
        raise ValueError(f"target must be one of {FUNCTIONALS}")
    if isinstance(source, GoodCone):
        cone, D = source, dataset_from_cone(source)
        guards = tuple(ex.vec(r) for r in cone.rays)
    else:
        cone, D = None, source
        guards = tuple(dict.fromkeys(z.weights[0] for z in D.components))
    k = D.rank
    if zeta is None:
        zeta = tuple(sum(col, Fraction(0)) for col in zip(*guards))
    zeta = ex.vec(zeta)
    if len(zeta) != k or not any(zeta):
        raise ValueError(f"zeta must be a nonzero vector with {k} entries")
    try:
        rays, _ = cone_rays(guards, k)
    except ReebConeError as err:
        raise NotTransversal(f"the guarded cone is not pointed: {err}") from err
    vertices = []
    for r in rays:
        s = ex.dot(zeta, r)
        if s <= 0:
            raise NotTransversal(f"zeta = {[ex.fmt(x) for x in zeta]} is not positive "
                                 f"on the boundary ray {r}")
        vertices.append(tuple(x / s for x in r))
    center = tuple(sum(col, Fraction(0)) / len(vertices) for col in zip(*vertices))
    basis = tuple(ex.nullspace([zeta], k))
    return SliceProblem(dataset=D, zeta=zeta, guards=guards, vertices=tuple(vertices),
                        center=center, basis=basis, target=target, cone=cone, **options)


# ---------------------------------------------------------------- exact evaluation

def _value_exact(problem, b):
    try:
        return raw_functional(problem.target, problem.dataset, b)
    except VanishingWeight:
        return evaluate_limit(problem.target, problem.dataset, b).q


def _shifted(problem, b, eps, s):
    shift = problem.point([eps * Fraction(s + i) ** (i + 1) for i in range(len(problem.basis))])
    return tuple(x + y - c for x, y, c in zip(b, shift, problem.center))


def _vgh_exact(problem, b, exact_limits=False, eps=Fraction(1, 2 ** 60)):
    """(value, gradient, Hessian, perturbed) as exact rationals at b.

    On a weight hyperplane the value and gradient are exact limits when
    ``exact_limits`` is set; otherwise everything is taken at a point shifted
    by about ``eps`` within the slice and the result is flagged.
    """
    D, name = problem.dataset, problem.target
    try:
        v, g, h = value_grad_hess(name, D, b)
        return v, g, h, False
    except VanishingWeight:
        pass
    for s in range(1, 50):
        try:
            v2, g2, h = value_grad_hess(name, D, _shifted(problem, b, eps, s))
            break
        except VanishingWeight:
            continue
    else:
        raise ReebConeError("could not find a generic point near b")
    if not exact_limits:
        return v2, g2, h, True
    v = evaluate_limit(name, D, b).q
    g = gradient_any(name, D, b).q
    return v, g, h, False


def _reduce(problem, g, h):
    B = problem.basis
    gy = [ex.dot(col, g) for col in B]
    hy = [[sum(ci * hij * dj for ci, row in zip(c1, h) for hij, dj in zip(row, c2))
           for c2 in B] for c1 in B]
    return gy, hy


def projected_norm(zeta, g):
    """Euclidean norm of the projection of g onto zeta^perp."""
    g = np.array([float(x) for x in g])
    z = np.array([float(x) for x in zeta])
    return float(np.linalg.norm(g - (g @ z) / (z @ z) * z))


def boundary_distance(problem, b):
    """Distance from b to the boundary of P within the slice."""
    z = np.array([float(x) for x in problem.zeta])
    bf = np.array([float(x) for x in b])
    best = math.inf
    for g in problem.guards:
        gv = np.array([float(x) for x in g])
        pg = gv - (gv @ z) / (z @ z) * z
        nrm = np.linalg.norm(pg)
        if nrm > 0:
            best = min(best, float(gv @ bf) / nrm)
    return best


# ---------------------------------------------------------------- report

@dataclass
class MinimizerReport:
    target: str
    zeta: tuple
    argmin: tuple
    certificate: tuple
    value: float
    certificate_value: FunctionalValue
    certificate_rel_change: float
    gradient_norm: float
    boundary_distance: float
    critical_rays: list
    n_critical_rays: int
    converged_starts: int
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {
            "target": self.target,
            "zeta": [ex.fmt(x) for x in self.zeta],
            "argmin": list(self.argmin),
            "certificate": [ex.fmt(x) for x in self.certificate],
            "value": self.value,
            "certificate_value": str(self.certificate_value),
            "certificate_rel_change": self.certificate_rel_change,
            "gradient_norm": self.gradient_norm,
            "boundary_distance": self.boundary_distance,
            "n_critical_rays": self.n_critical_rays,
            "critical_rays": self.critical_rays,
            "converged_starts": self.converged_starts,
            "trace": self.trace,
        }


def start_points(problem):
    """Slice center followed by scrambled Halton points pushed into P.

    Halton coordinates are turned into barycentric weights (exponential
    spacings, i.e. uniform on the simplex of weights) over the vertices of P.
    """
    V = np.array([[float(x) for x in v] for v in problem.vertices])
    c = np.array([float(x) for x in problem.center])
    B = np.array([[float(x) for x in col] for col in problem.basis]).T
    pts = [np.zeros(len(problem.basis))]
    extra = problem.starts - 1
    if extra > 0:
        u = qmc.Halton(d=len(V), scramble=True, seed=problem.seed).random(extra)
        w = -np.log(np.clip(u, 1e-12, 1.0))
        w /= w.sum(axis=1, keepdims=True)
        for row in w:
            b = row @ V
            y, *_ = np.linalg.lstsq(B, b - c, rcond=None)
            pts.append(y)
    return pts


def _to_exact(y):
    return [Fraction(float(x)) for x in y]


def _descend(problem, y0):
    """Damped Newton with Armijo backtracking from y0 (float)."""
    y = np.array(y0, dtype=float)
    Bm = np.array([[float(x) for x in col] for col in problem.basis]).T
    G = np.array([[float(x) for x in g] for g in problem.guards])
    perturbed = False
    gy = np.zeros(len(y))
    hy = np.eye(len(y))
    v = math.nan
    it = 0
    for it in range(problem.max_iter):
        b = problem.point(_to_exact(y))
        v, g, h, p_flag = _vgh_exact(problem, b, exact_limits=(it == 0))
        perturbed |= p_flag
        gq, hq = _reduce(problem, g, h)
        v = float(v)
        gy = np.array([float(x) for x in gq])
        hy = np.array([[float(x) for x in row] for row in hq])
        if np.linalg.norm(gy) <= 1e-9 * max(1.0, abs(v)):
            return y, True, it, perturbed, hy
        try:
            np.linalg.cholesky(hy)
            p = -np.linalg.solve(hy, gy)
        except np.linalg.LinAlgError:
            p = -gy
        slope = float(gy @ p)
        if slope >= 0:
            p, slope = -gy, -float(gy @ gy)
        # fraction to the boundary
        bf = np.array([float(x) for x in b])
        s = G @ bf
        ds = G @ (Bm @ p)
        neg = ds < 0
        amax = min(1.0, float(np.min(-0.95 * s[neg] / ds[neg]))) if neg.any() else 1.0
        alpha = amax
        for _ in range(60):
            yn = y + alpha * p
            fn = float(_value_exact(problem, problem.point(_to_exact(yn))))
            if fn <= v + 1e-4 * alpha * slope:
                break
            alpha *= 0.5
        else:
            return y, False, it, perturbed, hy
        if np.linalg.norm(alpha * p) <= 1e-15 * max(1.0, np.linalg.norm(y)):
            y = yn
            return y, np.linalg.norm(gy) <= 1e-6 * max(1.0, abs(v)), it, perturbed, hy
        y = yn
    return y, False, it, perturbed, hy


def _round(q):
    return Fraction(round(q * _POLISH_GRID), _POLISH_GRID)


def _polish(problem, y, steps=8):
    """Exact Newton steps on rationals; returns (y, value, gradient, perturbed)."""
    y = _to_exact(y)
    perturbed = False
    fine = Fraction(1, 2 ** 110)
    b = problem.point(y)
    v, g, h, p_flag = _vgh_exact(problem, b, eps=fine)
    perturbed |= p_flag
    for _ in range(steps):
        gq, hq = _reduce(problem, g, h)
        if max((abs(x) for x in gq), default=0) < Fraction(1, 10 ** 30):
            break
        try:
            step = ex.solve(hq, gq)
        except ZeroDivisionError:
            break
        yn = [_round(a - s) for a, s in zip(y, step)]
        bn = problem.point(yn)
        if any(s <= 0 for s in problem.slack(bn)):
            break
        vn, gn, hn, p_flag = _vgh_exact(problem, bn, eps=fine)
        if projected_norm(problem.zeta, gn) > projected_norm(problem.zeta, g):
            break
        y, b, v, g, h = yn, bn, vn, gn, hn
        perturbed |= p_flag
    return y, b, v, g, perturbed


def _angle(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    # chord form stays accurate for tiny angles, unlike acos of the cosine
    chord = np.linalg.norm(u / np.linalg.norm(u) - v / np.linalg.norm(v))
    return 2 * math.asin(min(1.0, float(chord) / 2))


def minimize(problem):
    """Multi-start minimization of the target functional over the slice."""
    scale = math.pi ** problem.pi_power
    results, trace = [], []
    for i, y0 in enumerate(start_points(problem)):
        entry = {"start": i, "y0": [float(x) for x in y0]}
        try:
            y, ok, iters, perturbed, hy = _descend(problem, y0)
            yq, b, v, g, p2 = _polish(problem, y)
            gnorm = projected_norm(problem.zeta, g) * scale
            converged = gnorm <= problem.tol or (ok and gnorm <= problem.tol * max(1.0, abs(float(v)) * scale))
            try:
                is_min = bool(np.all(np.linalg.eigvalsh(hy) > 0))
            except np.linalg.LinAlgError:
                is_min = False
            entry.update(iterations=iters, converged=bool(converged), value=float(v) * scale,
                         gradient_norm=gnorm, b=[float(x) for x in b],
                         perturbed=bool(perturbed or p2), local_min=is_min)
            if converged:
                results.append((float(v), i, b, gnorm, is_min))
            else:
                entry["error"] = str(NonConvergence(f"start {i} did not converge"))
        except (ReebConeError, ZeroDivisionError, ArithmeticError) as err:
            entry.update(converged=False, error=f"{type(err).__name__}: {err}")
        trace.append(entry)
    if not results:
        raise NonConvergence("no start converged")
    rays = []
    for v, i, b, gnorm, is_min in sorted(results, key=lambda r: (r[0], r[1])):
        bf = [float(x) for x in b]
        if all(_angle(bf, r["b"]) >= 1e-6 for r in rays):
            rays.append({"b": bf, "value": v * scale, "start": i, "local_min": is_min})
    for r in rays:
        r["global_min"] = r is rays[0]
    v, i, b, gnorm, _ = min(results, key=lambda r: (r[0], r[1]))
    cert = tuple(Fraction(x).limit_denominator(10 ** 6) for x in b)
    cval, _ = evaluate(problem.target, problem.dataset, cert)
    rel = abs(float(cval.q) - float(v)) / max(abs(float(v)), 1e-300)
    return MinimizerReport(
        target=problem.target, zeta=problem.zeta, argmin=tuple(float(x) for x in b),
        certificate=cert, value=float(v) * scale, certificate_value=cval,
        certificate_rel_change=rel, gradient_norm=gnorm,
        boundary_distance=boundary_distance(problem, b), critical_rays=rays,
        n_critical_rays=len(rays), converged_starts=len(results), trace=trace)


# ---------------------------------------------------------------- boundary probes

@dataclass
class ProbeResult:
    target_point: tuple
    base_point: tuple
    functionals: tuple
    base_values: dict
    rows: list
    skipped: list
    ratios: dict
    monotone: dict
    passed: bool

    def to_dict(self):
        return {"target_point": [ex.fmt(x) for x in self.target_point],
                "base_point": [ex.fmt(x) for x in self.base_point],
                "base_values": self.base_values, "rows": self.rows,
                "skipped": self.skipped, "ratios": self.ratios,
                "monotone": self.monotone, "passed": self.passed}


def probe_boundary(problem, target_point, base=None, steps=12, functionals=None):
    """Evaluate along target + eps (base - target), eps = 10^-1 ... 10^-steps.

    ``passed`` is true when every functional ends above 10^6 times its value
    at the base point.
    """
    D = problem.dataset
    t = ex.vec(target_point)
    base = problem.center if base is None else ex.vec(base)
    slack = problem.slack(t)
    if any(s < 0 for s in slack) or all(s > 0 for s in slack):
        raise ValueError("target point must lie on the boundary of the slice polytope")
    names = tuple(functionals or (problem.target,))
    scale = math.pi ** problem.pi_power
    base_values = {f: float(evaluate(f, D, base)[0].q) * scale for f in names}
    rows, skipped = [], []
    for j in range(1, steps + 1):
        eps = Fraction(1, 10 ** j)
        b = tuple(x + eps * (y - x) for x, y in zip(t, base))
        row = {"eps": ex.fmt(eps)}
        try:
            for f in names:
                row[f] = float(evaluate(f, D, b)[0].q) * scale
        except ReebConeError as err:
            skipped.append({"eps": ex.fmt(eps), "error": str(err)})
            continue
        rows.append(row)
    ratios = {f: (rows[-1][f] / base_values[f] if rows and base_values[f] else math.nan)
              for f in names}
    monotone = {f: all(a[f] < b_[f] for a, b_ in zip(rows, rows[1:])) for f in names}
    passed = bool(rows) and all(r > 1e6 for r in ratios.values())
    return ProbeResult(t, base, names, base_values, rows, skipped, ratios, monotone, passed)


def random_boundary_point(problem, rng):
    """Exact point in the relative interior of a facet of P, hit by a seeded ray.

    Returns (boundary point, interior start point).  Rays that exit through a
    lower-dimensional face are redrawn.
    """
    V = problem.vertices
    while True:
        w = [Fraction(rng.randint(1, 20)) for _ in V]
        tot = sum(w)
        p = tuple(sum(wi * v[j] for wi, v in zip(w, V)) / tot for j in range(problem.rank))
        coeffs = [Fraction(rng.randint(-20, 20)) for _ in problem.basis]
        d = tuple(sum(c * col[j] for c, col in zip(coeffs, problem.basis))
                  for j in range(problem.rank))
        if not any(d):
            continue
        t = min(-ex.dot(g, p) / ex.dot(g, d) for g in problem.guards if ex.dot(g, d) < 0)
        b = tuple(x + t * y for x, y in zip(p, d))
        if sum(1 for s in problem.slack(b) if s == 0) == 1:
            return b, p


# ---------------------------------------------------------------- 2D census

@dataclass
class Census:
    endpoints: tuple
    count: int
    roots: list
    grid: int

    def to_dict(self):
        return {"endpoints": [[ex.fmt(x) for x in e] for e in self.endpoints],
                "count": self.count, "roots": self.roots, "grid": self.grid}


def subcone_chord(D, b1, b2, guards=None):
    """Boundary rays R1, R2 of the closed Reeb cone cut by span(b1, b2)."""
    b1, b2 = ex.vec(b1), ex.vec(b2)
    if ex.rank([b1, b2]) < 2:
        raise ValueError("b1 and b2 do not span a 2-plane")
    if guards is None:
        guards = tuple(dict.fromkeys(z.weights[0] for z in D.components))
    rows = [(ex.dot(g, b1), ex.dot(g, b2)) for g in guards]
    try:
        rays, _ = cone_rays(rows, 2)
    except ReebConeError as err:
        raise ValueError(f"span does not meet the Reeb cone in a 2D subcone: {err}") from err
    if len(rays) != 2:
        raise ValueError("span does not meet the Reeb cone in a 2D subcone")
    R = [tuple(a * x + c * y for x, y in zip(b1, b2)) for a, c in rays]
    return R[0], R[1]


def critical_rays_2d(D, b1, b2, grid=200, target="H", guards=None, bisections=60):
    """Critical rays of the target restricted to the 2D subcone spanned by b1, b2.

    The subcone is parameterized by b(s) = (1 - s) R1 + s R2 with R1, R2 its
    boundary rays; the exact derivative in s is sampled at s_i = (i+1)/(grid+1)
    and every sign change is refined by exact bisection.
    """
    R1, R2 = subcone_chord(D, b1, b2, guards)
    d = tuple(y - x for x, y in zip(R1, R2))

    def point(s):
        return tuple(x + s * y for x, y in zip(R1, d))

    def deriv(s):
        return directional_derivative(target, D, point(s), d)

    ss = [Fraction(i + 1, grid + 1) for i in range(grid)]
    vals = [deriv(s) for s in ss]
    brackets = []
    for s, v in zip(ss, vals):
        if v == 0:
            brackets.append((s, s, "zero"))
    for (s0, v0), (s1, v1) in zip(zip(ss, vals), zip(ss[1:], vals[1:])):
        if v0 != 0 and v1 != 0 and (v0 > 0) != (v1 > 0):
            lo, hi, flo = s0, s1, v0
            for _ in range(bisections):
                mid = (lo + hi) / 2
                fm = deriv(mid)
                if fm == 0:
                    lo = hi = mid
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            brackets.append((lo, hi, "min" if v0 < 0 else "max"))
    brackets.sort()
    for (a0, a1, _), (c0, c1, _) in zip(brackets, brackets[1:]):
        if c0 - a1 <= max(a1 - a0, c1 - c0):
            raise GridTooCoarse("two critical brackets merged after refinement")
    roots = []
    for lo, hi, kind in brackets:
        s = (lo + hi) / 2
        b = point(s)
        roots.append({"s": float(s), "width": float(hi - lo), "kind": kind,
                      "b": [float(x) for x in b]})
    return Census((R1, R2), len(roots), roots, grid)
