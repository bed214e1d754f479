"""Built-in moment cones and a family of non-toric localization datasets."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cone import validate_good_cone
from .fixed_locus import ChernTable, FixedComponent, LocalizationDataset


@dataclass(frozen=True)
class Anchor:
    functional: str
    b: tuple
    q: Fraction
    provenance: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    normals: tuple
    provenance: str
    anchors: tuple = field(default=())

    @property
    def cone(self):
        return validate_good_cone(self.normals, name=self.name)


def _sphere_anchors(k):
    n = k - 1
    ones = (1,) * k
    # round S^(2n+1): V = 2 pi^(n+1)/n!, transverse scalar 4n(n+1)
    from math import factorial
    v = Fraction(2, factorial(n))
    s = 4 * n * (n + 1) * v
    tag = "round sphere closed form"
    return (Anchor("V", ones, v, tag), Anchor("S", ones, s, tag),
            Anchor("H", ones, s ** (n + 1) / v ** n, tag))


def _lens_anchors(p, q):
    b = (p, 1 - q)
    v = Fraction(2, p)
    tag = "round lens space: sphere values divided by p"
    return (Anchor("V", b, v, tag), Anchor("S", b, 8 * v, tag), Anchor("H", b, 64 * v, tag))


def _orthant(k):
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def ypq_normals(p, q):
    """Quadrilateral cone of the Y^{p,q} family (0 < q < p)."""
    if not 0 < q < p:
        raise ValueError("need 0 < q < p")
    return ((1, 0, 0), (1, 1, 0), (1, p, p), (1, p - q - 1, p - q))


_ENTRIES = [
    CatalogEntry("orthant2", _orthant(2), "C^2, link S^3", _sphere_anchors(2) + (
        Anchor("V", (1, 2), Fraction(1), "2 pi^2/(b1 b2)"),
        Anchor("S", (1, 2), Fraction(12), "8 pi^2 (b1+b2)/(b1 b2)"))),
    CatalogEntry("orthant3", _orthant(3), "C^3, link S^5", _sphere_anchors(3)),
    CatalogEntry("orthant4", _orthant(4), "C^4, link S^7", _sphere_anchors(4)),
    CatalogEntry("lens2_1", ((2, -1), (0, 1)), "C^2/Z_2, link L(2,1)", _lens_anchors(2, 1)),
    CatalogEntry("lens3_1", ((3, -1), (0, 1)), "C^2/Z_3, link L(3,1)", _lens_anchors(3, 1)),
    CatalogEntry("lens3_2", ((3, -2), (0, 1)), "C^2/Z_3, link L(3,2)", _lens_anchors(3, 2)),
    CatalogEntry("conifold", ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
                 "cone over the square, link T^{1,1}"),
    CatalogEntry("Y2_1", ypq_normals(2, 1), "Y^{2,1} quadrilateral"),
    CatalogEntry("Y3_1", ypq_normals(3, 1), "Y^{3,1} quadrilateral"),
    CatalogEntry("Y3_2", ypq_normals(3, 2), "Y^{3,2} quadrilateral"),
]

CATALOG = {e.name: e for e in _ENTRIES}


def get(name):
    if name.startswith("Y") and name not in CATALOG and "_" in name:
        p, q = (int(x) for x in name[1:].split("_"))
        return CatalogEntry(name, ypq_normals(p, q), f"Y^{{{p},{q}}} quadrilateral")
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None


def cones():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return {name: e.cone for name, e in CATALOG.items()}


def merged_sphere_dataset(blocks):
    """S^(2n+1) under the subtorus that rotates each block of coordinates together.

    ``blocks`` lists block sizes (summing to n+1).  Block beta gives a fixed
    CP^(s-1) with fiber weight e_beta and normal weights 2(e_gamma - e_beta),
    repeated s_gamma times.  On CP^m with hyperplane class h: E_0 = h/2, every
    normal E_i = -h and c1(W) = (n+1) h.
    """
    k = len(blocks)
    n = sum(blocks) - 1
    if k < 2 or any(s < 1 for s in blocks):
        raise ValueError("need at least two nonempty blocks")

    def e(i):
        return tuple(Fraction(int(i == j)) for j in range(k))

    comps = []
    for beta, size in enumerate(blocks):
        m = size - 1
        weights = [e(beta)]
        for gamma, other in enumerate(blocks):
            if gamma != beta:
                w = tuple(2 * (x - y) for x, y in zip(e(gamma), e(beta)))
                weights += [w] * other
        nsym = len(weights)
        entries = {}
        for exps in product(range(m + 1), repeat=nsym + 1):
            if sum(exps) != m:
                continue
            val = Fraction(1, 2) ** exps[0] * Fraction(-1) ** sum(exps[1:-1])
            entries[exps] = val * Fraction(n + 1) ** exps[-1]
        comps.append(FixedComponent(f"block{beta}", m, 1, tuple(weights),
                                    ChernTable(m, nsym, entries)))
    return LocalizationDataset(k, n, tuple(comps))
