"""Volume, total transverse scalar curvature and Einstein-Hilbert functionals.

Every functional is a rational multiple of pi^(n+1).  The same evaluator
(:func:`raw_functional`) runs on exact rationals, on jets (gradients and
Hessians) and on truncated Laurent series (limits at Reeb vectors where a
weight pairing vanishes, and blow-up rates at the boundary of the cone).

With ``w_j = <kappa_j, b>`` and inverse Euler class ``e^-1 = prod_j w_j^-1
sum_s (E_j / w_j)^s``:

    V = (2 pi)^(n+1) / n!     * sum_Z d_Z^-1 int_Z e^-1
    S = 2 (2 pi)^(n+1) / (n-1)! * sum_Z d_Z^-1 int_Z (c1W + sum_{i>=1} w_i) e^-1
    H = S^(n+1) / V^n,   H1 = sign(S) |H|
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from . import _exact as ex
from .cone import slice_polytope
from .errors import (AmbiguousMinimizer, DirectionNotGeneric, PoleAtZero,
                     ReebConeError, VanishingWeight, ZeroVolume)
from .fixed_locus import (TruncatedClass, class_multiply, inverse_euler_from_pairings,
                          integrate, pairings)
from .series import InsufficientPrecision, Jet, Laurent, is_zero, sign

FUNCTIONALS = ("V", "S", "H", "H1")


@dataclass(frozen=True)
class FunctionalValue:
    q: Fraction
    pi_power: int

    @property
    def float(self):
        return float(self.q) * math.pi ** self.pi_power

    def __str__(self):
        return f"{ex.fmt(self.q)} * pi^{self.pi_power}"


@dataclass(frozen=True)
class GradientValue:
    q: tuple
    pi_power: int

    @property
    def float(self):
        return tuple(float(x) * math.pi ** self.pi_power for x in self.q)


def _check_functional(name):
    if name not in FUNCTIONALS:
        raise ValueError(f"functional must be one of {FUNCTIONALS}, got {name!r}")


def prefactors(n):
    """(c_V, c_S): the rational parts of (2pi)^(n+1)/n! and 2(2pi)^(n+1)/(n-1)!."""
    if n < 1:
        raise ReebConeError("functionals need n >= 1")
    return (Fraction(2 ** (n + 1), math.factorial(n)),
            Fraction(2 ** (n + 2), math.factorial(n - 1)))


def component_sums(D, b):
    """Unnormalized (sum for V, sum for S) in the scalar type of ``b``."""
    sv = ss = None
    for z in D.components:
        ws = pairings(z.weights, b)
        inv = inverse_euler_from_pairings(ws, z.m, z.name)
        v = integrate(inv, z.chern)
        numer = TruncatedClass.symbol("c1W", z.m, len(ws))
        wsum = None
        for w in ws[1:]:
            wsum = w if wsum is None else wsum + w
        if wsum is not None:
            numer = numer + TruncatedClass.scalar(wsum, z.m, len(ws))
        s = integrate(class_multiply(numer, inv), z.chern)
        if z.d != 1:
            v, s = v / z.d, s / z.d
        sv = v if sv is None else sv + v
        ss = s if ss is None else ss + s
    return sv, ss


def compose(name, n, qv, qs):
    """Combine V and S (as rational parts) into the requested functional."""
    if name == "V":
        return qv
    if name == "S":
        return qs
    if is_zero(qv):
        raise ZeroVolume("volume vanishes; H is undefined")
    h = qs ** (n + 1) / qv ** n
    if name == "H":
        return h
    s_sign = sign(qs)
    if s_sign == 0:
        return h * 0
    return h if s_sign * sign(h) > 0 else -h


def raw_functional(name, D, b):
    """Rational part of the functional at ``b`` in the scalar type of ``b``."""
    _check_functional(name)
    cv, cs = prefactors(D.n)
    sv, ss = component_sums(D, b)
    qv = sv * cv if name != "S" else None
    qs = ss * cs if name != "V" else None
    return compose(name, D.n, qv, qs)


def _exact_b(D, b):
    b = ex.vec(b)
    if len(b) != D.rank:
        raise ValueError(f"Reeb vector must have {D.rank} entries")
    return b


def _value(name, D, b):
    return FunctionalValue(raw_functional(name, D, _exact_b(D, b)), D.n + 1)


def volume(D, b):
    return _value("V", D, b)


def total_scalar(D, b):
    return _value("S", D, b)


def einstein_hilbert(D, b):
    return _value("H", D, b)


def h1(D, b):
    return _value("H1", D, b)


def functional(name, D, b):
    return _value(name, D, b)


def gradient(name, D, b):
    """Exact gradient at a generic ``b``; raises VanishingWeight otherwise."""
    b = _exact_b(D, b)
    jet = raw_functional(name, D, Jet.variables(b))
    return GradientValue(tuple(jet.grad), D.n + 1)


def value_grad_hess(name, D, b):
    """Value, gradient and Hessian (rational parts) at a generic ``b``.

    ``b`` may be exact or float; the result has the same scalar type.
    """
    jet = raw_functional(name, D, Jet.variables(tuple(b), order=2))
    return jet.val, jet.grad, jet.hess


def hessian(name, D, b):
    b = _exact_b(D, b)
    return value_grad_hess(name, D, b)[2]


# ---------------------------------------------------------------- limits

def _vanishing(D, b):
    out = []
    for z in D.components:
        for j, w in enumerate(pairings(z.weights, b)):
            if w == 0:
                out.append((z, j))
    return out


def is_generic(D, b):
    return not _vanishing(D, ex.vec(b))


def _check_direction(D, b0, d):
    for z, j in _vanishing(D, b0):
        if ex.dot(z.weights[j], d) == 0:
            raise DirectionNotGeneric(
                f"direction leaves weight {j} of component {z.name!r} identically zero")


def _laurent_sums(D, b0, d, extra=0):
    """V and S rational parts along b0 + t d as Laurent series in t."""
    npoles = len(_vanishing(D, b0))
    cv, cs = prefactors(D.n)
    prec = 4 + extra + 2 * npoles
    while True:
        line = [Laurent.line(x, y, prec + 2 * npoles) for x, y in zip(b0, d)]
        sv, ss = component_sums(D, line)
        sv, ss = sv * cv, ss * cs
        if sv.prec > extra and ss.prec > extra:
            return sv, ss
        prec *= 2
        if prec > 4096:
            raise InsufficientPrecision("could not resolve the limit")


def default_direction(D, b0):
    """First vector on the moment curve (1, s, s^2, ...) that is admissible at b0."""
    b0 = ex.vec(b0)
    for s in count(2):
        d = tuple(Fraction(s) ** i for i in range(D.rank))
        try:
            _check_direction(D, b0, d)
        except DirectionNotGeneric:
            continue
        return d


def _series(name, D, b0, d, extra=0):
    sv, ss = _laurent_sums(D, b0, d, extra)
    if name == "V":
        return sv
    if name == "S":
        return ss
    if sv.val > 0 or sv.is_zero():
        raise ZeroVolume("volume vanishes at the limit point")
    return compose(name, D.n, sv, ss)


def evaluate_limit(name, D, b0, d=None):
    """Exact value at ``b0`` as the limit t -> 0 of F(b0 + t d)."""
    _check_functional(name)
    b0 = _exact_b(D, b0)
    d = default_direction(D, b0) if d is None else _exact_b(D, d)
    _check_direction(D, b0, d)
    sv, ss = _laurent_sums(D, b0, d)
    for s in (sv, ss):
        if s.coeffs and s.val < 0:
            raise PoleAtZero("functional has a pole at the requested point")
    qv, qs = sv.coeff(0), ss.coeff(0)
    return FunctionalValue(compose(name, D.n, qv, qs), D.n + 1)


def evaluate(name, D, b):
    """Exact value; falls back to the limit evaluator at non-generic ``b``.

    Returns ``(value, used_limit)``.
    """
    try:
        return _value(name, D, b), False
    except VanishingWeight:
        return evaluate_limit(name, D, b), True


def directional_derivative(name, D, b0, d):
    """d/dt F(b0 + t d) at t = 0, exact, valid at non-generic b0 too."""
    _check_functional(name)
    b0, d = _exact_b(D, b0), _exact_b(D, d)
    if is_generic(D, b0):
        g = gradient(name, D, b0).q
        return ex.dot(g, d)
    try:
        _check_direction(D, b0, d)
    except DirectionNotGeneric:
        # the whole line stays on a weight hyperplane; F is still smooth there
        return ex.dot(gradient_any(name, D, b0).q, d)
    f = _series(name, D, b0, d, extra=1)
    if f.coeffs and f.val < 0:
        raise PoleAtZero("functional has a pole at the requested point")
    return f.coeff(1)


def gradient_any(name, D, b):
    """Exact gradient at any interior ``b``, generic or not."""
    b = _exact_b(D, b)
    if is_generic(D, b):
        return gradient(name, D, b)
    # distinct points on the moment curve are linearly independent
    dirs = []
    for s in count(2):
        d = tuple(Fraction(s) ** j for j in range(D.rank))
        try:
            _check_direction(D, b, d)
        except DirectionNotGeneric:
            continue
        dirs.append(d)
        if len(dirs) == D.rank:
            break
    rhs = [directional_derivative(name, D, b, d) for d in dirs]
    return GradientValue(ex.solve(dirs, rhs), D.n + 1)


@dataclass(frozen=True)
class LeadingTerm:
    component: str
    exponent: int
    coefficient: FunctionalValue

    def to_dict(self):
        return {"component": self.component, "exponent": self.exponent,
                "coefficient": str(self.coefficient)}


def boundary_leading_term(name, D, b_boundary, d):
    """Leading blow-up term of F(b_boundary + eps d) as eps -> 0+.

    Returns the component whose fiber weight <kappa_0, b> vanishes at
    ``b_boundary``, the order of the pole and its coefficient
    (``F ~ coefficient * eps^-exponent``).
    """
    _check_functional(name)
    b0, d = _exact_b(D, b_boundary), _exact_b(D, d)
    hits = [z for z in D.components if ex.dot(z.weights[0], b0) == 0]
    if len(hits) > 1:
        raise AmbiguousMinimizer(
            f"fiber weights of {[z.name for z in hits]} vanish together; refine the path")
    if not hits:
        raise ReebConeError("no fiber weight vanishes at the boundary point")
    if ex.dot(hits[0].weights[0], d) <= 0:
        raise ReebConeError("path does not enter the Reeb cone")
    _check_direction(D, b0, d)
    f = _series(name, D, b0, d)
    exp, coeff = f.leading()
    return LeadingTerm(hits[0].name, -exp, FunctionalValue(coeff, D.n + 1))


# ---------------------------------------------------------------- float mirror

def mirror(name, D, b):
    """Float value of the functional at a float vector.

    The float inputs are converted exactly to dyadic rationals and evaluated
    exactly, so the large cancellations between vertex terms near weight
    hyperplanes cost no accuracy.  Exactly non-generic points go through the
    limit evaluator.
    """
    bq = tuple(Fraction(float(x)) for x in b)
    try:
        q = raw_functional(name, D, bq)
    except VanishingWeight:
        q = evaluate_limit(name, D, bq).q
    return float(q) * math.pi ** (D.n + 1)


# ---------------------------------------------------------------- toric fast path

def toric_vertex_sum(cone, b, b_o=None):
    """(V, S) straight from the cone's vertex data, bypassing datasets.

    At each ray the fixed-point weights are the columns of N^-1 (doubled for
    i >= 1), N having rows b_o and the normals through the ray, and the orbifold
    order is |det N|.
    """
    from .cone import default_slicing_field
    b = ex.vec(b)
    b_o = default_slicing_field(cone) if b_o is None else ex.vec(ex.primitive(b_o))
    slc = slice_polytope(cone, b_o)
    n = cone.n
    cv, cs = prefactors(n)
    sv = ss = Fraction(0)
    for fs in slc.vertex_facets:
        N = [b_o] + [ex.vec(cone.normals[a]) for a in fs]
        d = abs(ex.det(N))
        y = ex.solve([list(col) for col in zip(*N)], b)
        w = [y[0]] + [2 * x for x in y[1:]]
        if any(x == 0 for x in w):
            raise VanishingWeight(None, w.index(0))
        prod = math.prod(w, start=Fraction(1))
        sv += 1 / (d * prod)
        ss += sum(w[1:]) / (d * prod)
    return FunctionalValue(cv * sv, n + 1), FunctionalValue(cs * ss, n + 1)
