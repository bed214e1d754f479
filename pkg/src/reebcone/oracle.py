"""Independent exact geometry: volumes and facet measures of truncated cones.

``R_b = {y in C* : <y, b> <= 1/2}`` is the cone over the slice polytope
``Delta_b`` with apex at the origin.  The slice is triangulated by recursive
pulling (cone a chosen vertex over a triangulation of every facet not
containing it), so no convex-hull machinery is needed beyond the facet
incidences already known from the cone.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import _exact as ex
from .cone import slice_polytope
from .localize import FunctionalValue


def _face_rank(slc, face):
    return ex.rank([slc.vertices[i] for i in face])


def _subfacets(cone, slc, face, rk):
    """Facets of a face (frozensets of vertex ids), via cone facet incidence."""
    out = set()
    for fr in cone.facet_rays:
        g = face & fr
        if g != face and len(g) >= rk - 1 and _face_rank(slc, g) == rk - 1:
            out.add(g)
    return out


def triangulate(cone, slc, face=None, pull=min):
    """Simplices (tuples of vertex ids) triangulating a face of the slice.

    ``pull`` picks the apex vertex of each face; different choices give
    different triangulations of the same polytope.
    """
    if face is None:
        face = frozenset(range(len(slc.vertices)))
    rk = _face_rank(slc, face)
    if len(face) == rk:
        return [tuple(sorted(face))]
    p = pull(face)
    out = []
    for g in _subfacets(cone, slc, face, rk):
        if p in g:
            continue
        for s in triangulate(cone, slc, g, pull):
            out.append(tuple(sorted(s + (p,))))
    return out


def truncated_cone_volume(cone, b, pull=min):
    """Exact Euclidean volume of ``{y in C* : <y, b> <= 1/2}``."""
    slc = slice_polytope(cone, b)
    k = cone.rank
    total = Fraction(0)
    for s in triangulate(cone, slc, pull=pull):
        total += abs(ex.det([slc.vertices[i] for i in s]))
    return total / math.factorial(k)


def facet_measures(cone, b, pull=min):
    """Lattice-normalized n-volume of each facet ``R_b cap {<y, u_a> = 0}``.

    The sublattice ``Z^k cap u^perp`` (u primitive) has covolume |u|, so the
    normalized volume of the simplex on 0, v_1..v_n is
    ``|det(v_1..v_n, u)| / (n! |u|^2)``.  A facet with label m counts 1/m.
    """
    slc = slice_polytope(cone, b)
    n = cone.n
    out = []
    for a, fr in enumerate(cone.facet_rays):
        u = cone.primitive_normals[a]
        uu = sum(x * x for x in u)
        acc = Fraction(0)
        for s in triangulate(cone, slc, fr, pull=pull):
            acc += abs(ex.det([slc.vertices[i] for i in s] + [ex.vec(u)]))
        out.append(acc / (math.factorial(n) * uu * cone.labels[a]))
    return tuple(out)


def oracle_volume(cone, b):
    n = cone.n
    c = (n + 1) * 2 ** (n + 2)
    return FunctionalValue(c * truncated_cone_volume(cone, b), n + 1)


def oracle_scalar(cone, b):
    n = cone.n
    c = n * 2 ** (n + 3)
    return FunctionalValue(c * sum(facet_measures(cone, b)), n + 1)
