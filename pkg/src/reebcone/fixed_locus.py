"""Localization datasets and the truncated Chern-class algebra.

A fixed component Z of half-dimension m carries weights kappa_0..kappa_r
(r = n - m), an orbifold order d and a table of intersection numbers
``int_Z c1(E_0)^s_0 ... c1(E_r)^s_r c1(W)^t`` with sum(s) + t = m.

Classes are polynomials in the formal symbols E_0..E_r, c1W truncated above
degree m.  Monomials are exponent tuples ``(s_0, ..., s_r, t)``; the
coefficients can be any scalar type the evaluators use (Fraction, float,
:class:`~reebcone.series.Jet`, :class:`~reebcone.series.Laurent`).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from . import _exact as ex
from .cone import slice_polytope, vertex_weights, default_slicing_field
from .errors import MixedTruncation, ReebConeError, VanishingWeight
from .series import is_zero


@dataclass(frozen=True)
class TruncatedClass:
    m: int
    nsym: int                      # number of E symbols; c1W is the last slot
    terms: dict = field(default_factory=dict)

    @classmethod
    def scalar(cls, c, m, nsym):
        return cls(m, nsym, {(0,) * (nsym + 1): c})

    @classmethod
    def symbol(cls, name, m, nsym, coeff=Fraction(1)):
        """The class ``coeff * name`` with name ``"E<j>"`` or ``"c1W"``."""
        e = [0] * (nsym + 1)
        e[_slot(name, nsym)] = 1
        return cls(m, nsym, {tuple(e): coeff} if m >= 1 else {})

    def degree_part(self, deg):
        return {e: c for e, c in self.terms.items() if sum(e) == deg}

    def __add__(self, other):
        _check(self, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedClass(self.m, self.nsym, out)

    def __mul__(self, other):
        if isinstance(other, TruncatedClass):
            return class_multiply(self, other)
        return TruncatedClass(self.m, self.nsym, {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedClass):
            return NotImplemented
        if (self.m, self.nsym) != (other.m, other.nsym):
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(e, 0) == other.terms.get(e, 0) for e in keys)

    def __hash__(self):
        return hash((self.m, self.nsym))

    def __repr__(self):
        names = [f"E{j}" for j in range(self.nsym)] + ["c1W"]
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{p}" if p > 1 else n for n, p in zip(names, e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"TruncatedClass(m={self.m}: {' + '.join(parts) or '0'})"


def _slot(name, nsym):
    if name == "c1W":
        return nsym
    if name.startswith("E") and name[1:].isdigit() and int(name[1:]) < nsym:
        return int(name[1:])
    raise ValueError(f"unknown Chern symbol {name!r}")


def _check(a, b):
    if a.m != b.m or a.nsym != b.nsym:
        raise MixedTruncation(f"cannot combine classes truncated at m={a.m} and m={b.m}")


def class_multiply(a, b):
    """Graded product, silently dropping monomials of degree > m."""
    _check(a, b)
    out = {}
    for (e1, c1), (e2, c2) in iproduct(a.terms.items(), b.terms.items()):
        e = tuple(x + y for x, y in zip(e1, e2))
        if sum(e) > a.m:
            continue
        c = c1 * c2
        out[e] = out[e] + c if e in out else c
    return TruncatedClass(a.m, a.nsym, {e: c for e, c in out.items() if not _is_exact_zero(c)})


def _is_exact_zero(c):
    return isinstance(c, (int, Fraction)) and c == 0


def pairings(weights, b):
    """<kappa_j, b> for each weight, in the scalar type of ``b``."""
    out = []
    for kap in weights:
        s = None
        for x, y in zip(kap, b):
            if x:
                s = y * x if s is None else s + y * x
        out.append(s if s is not None else b[0] * 0)
    return out


def inverse_euler(weights, b, m, component=None):
    """prod_j (1/w_j) sum_{s<=m} (E_j/w_j)^s truncated at degree m, w_j = <kappa_j, b>."""
    ws = pairings(weights, b)
    return inverse_euler_from_pairings(ws, m, component)


def inverse_euler_from_pairings(ws, m, component=None):
    nsym = len(ws)
    for j, w in enumerate(ws):
        if is_zero(w):
            raise VanishingWeight(component, j)
    inv = [1 / w for w in ws]
    if m == 0:
        c = inv[0]
        for x in inv[1:]:
            c = c * x
        return TruncatedClass.scalar(c, 0, nsym)
    # coefficient of E^s (no c1W) is prod_j inv_j^(1 + s_j)
    powers = [[x] for x in inv]
    for row in powers:
        for _ in range(m):
            row.append(row[-1] * row[0])
    terms = {}
    for s in _compositions(nsym, m):
        c = powers[0][s[0]]
        for j in range(1, nsym):
            c = c * powers[j][s[j]]
        terms[s + (0,)] = c
    return TruncatedClass(m, nsym, terms)


def _compositions(parts, max_total):
    """All exponent tuples of length ``parts`` with total <= max_total."""
    if parts == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in _compositions(parts - 1, max_total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class ChernTable:
    m: int
    nsym: int
    entries: dict                  # exponent tuple (s_0..s_r, t) -> Fraction

    def __post_init__(self):
        for e, v in self.entries.items():
            if len(e) != self.nsym + 1:
                raise ReebConeError(f"Chern exponent {e} has wrong length")
            if sum(e) != self.m:
                raise ReebConeError(f"Chern entry {e} is not of top degree {self.m}")
            if not isinstance(v, Fraction):
                raise ReebConeError("Chern integrals must be exact rationals")

    @classmethod
    def point(cls, nsym):
        return cls(0, nsym, {(0,) * (nsym + 1): Fraction(1)})


def integrate(cls, table):
    """Pair the top-degree part of ``cls`` with the intersection numbers.

    Monomials missing from the table integrate to zero.
    """
    if cls.m != table.m or cls.nsym != table.nsym:
        raise MixedTruncation("class and Chern table have different truncation")
    total = None
    for e, c in cls.terms.items():
        if sum(e) != cls.m:
            continue
        v = table.entries.get(e)
        if not v:
            continue
        total = c * v if total is None else total + c * v
    return Fraction(0) if total is None else total


@dataclass(frozen=True)
class FixedComponent:
    name: str
    m: int
    d: int
    weights: tuple
    chern: ChernTable


@dataclass(frozen=True)
class LocalizationDataset:
    rank: int
    n: int
    components: tuple

    def __post_init__(self):
        if self.rank > self.n + 1:
            raise ReebConeError(f"torus rank {self.rank} exceeds n+1 = {self.n + 1}")
        if not self.components:
            raise ReebConeError("a dataset needs at least one fixed component")
        for z in self.components:
            if not 0 <= z.m <= self.n:
                raise ReebConeError(f"component {z.name!r}: m={z.m} outside [0, n]")
            if z.d < 1:
                raise ReebConeError(f"component {z.name!r}: orbifold order must be >= 1")
            if len(z.weights) != self.n - z.m + 1:
                raise ReebConeError(
                    f"component {z.name!r} needs n-m+1 = {self.n - z.m + 1} weights, "
                    f"got {len(z.weights)}")
            if any(len(w) != self.rank for w in z.weights):
                raise ReebConeError(f"component {z.name!r}: weights must have {self.rank} entries")
            if z.chern.m != z.m or z.chern.nsym != len(z.weights):
                raise ReebConeError(f"component {z.name!r}: Chern table shape mismatch")
            if z.m == 0 and z.chern.entries != ChernTable.point(len(z.weights)).entries:
                raise ReebConeError(f"point component {z.name!r} must have table {{1: 1}}")

    @property
    def is_points(self):
        return all(z.m == 0 for z in self.components)

    def to_dict(self):
        comps = []
        for z in self.components:
            chern = []
            for e, v in sorted(z.chern.entries.items()):
                exps = {f"E{j}": p for j, p in enumerate(e[:-1]) if p}
                if e[-1]:
                    exps["c1W"] = e[-1]
                chern.append({"exponents": exps, "integral": ex.fmt(v)})
            comps.append({"name": z.name, "m": z.m, "d": z.d,
                          "weights": [[ex.fmt(x) for x in w] for w in z.weights],
                          "chern": chern})
        return {"rank": self.rank, "n": self.n, "components": comps}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def point_component(name, d, weights):
    weights = tuple(ex.vec(w) for w in weights)
    return FixedComponent(name, 0, int(d), weights, ChernTable.point(len(weights)))


def dataset_from_dict(data):
    try:
        rank, n = int(data["rank"]), int(data["n"])
        comps = []
        for i, c in enumerate(data["components"]):
            m, d = int(c["m"]), int(c["d"])
            weights = tuple(ex.parse_vector(w) if isinstance(w, str) else ex.vec(w)
                            for w in c["weights"])
            nsym = len(weights)
            entries = {}
            for row in c.get("chern", []):
                e = [0] * (nsym + 1)
                for key, p in row["exponents"].items():
                    e[_slot(key, nsym)] = int(p)
                v = ex.as_fraction(row["integral"])
                if v:
                    entries[tuple(e)] = v
            if m == 0 and not entries:
                entries = {(0,) * (nsym + 1): Fraction(1)}
            comps.append(FixedComponent(str(c.get("name", f"Z{i}")), m, d, weights,
                                        ChernTable(m, nsym, entries)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
        if isinstance(err, ReebConeError):
            raise
        raise ReebConeError(f"malformed dataset: {err}") from err
    return LocalizationDataset(rank, n, tuple(comps))


def dataset_from_json(text):
    return dataset_from_dict(json.loads(text))


def dataset_from_cone(cone, b_o=None):
    """One point component per vertex of the slice at level 1/2 of ``b_o``.

    ``b_o`` is replaced by its primitive integral multiple (the level-set slice
    scales, but the weights and orbifold orders are those of the circle
    generated by the primitive vector).
    """
    b_o = default_slicing_field(cone) if b_o is None else ex.vec(ex.primitive(b_o))
    slc = slice_polytope(cone, b_o)
    comps = []
    for v in range(len(slc.vertices)):
        vw = vertex_weights(cone, slc, v)
        comps.append(point_component(f"v{v}", vw.d, vw.kappa))
    return LocalizationDataset(cone.rank, cone.n, tuple(comps))
