"""Good rational polyhedral moment cones and their slices.

A moment cone is given by inward facet normals ``u_a``::

    C* = {x : <x, u_a> >= 0 for all a}

and the Reeb cone is the interior of its dual, i.e. the open cone spanned by
the normals. Everything in this module is exact integer/rational arithmetic.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import _exact as ex
from .errors import (DegenerateEdge, InvalidCone, NonPrimitiveNormalWarning,
                     NotGood, NotInReebCone, NotSimple, NotStronglyConvex)


def cone_rays(rows, k):
    """Extreme rays of ``{x in Q^k : <h, x> >= 0 for h in rows}``.

    Returns ``(rays, incidence)`` where ``rays`` are primitive integer vectors
    and ``incidence[i]`` is the frozenset of row indices vanishing on ray i.
    Raises NotStronglyConvex when the cone contains a line.
    """
    rows = [ex.vec(h) for h in rows]
    if ex.rank(rows) < k:
        raise NotStronglyConvex("the cone contains a line (normals do not span)")
    found = {}
    for sub in combinations(range(len(rows)), k - 1):
        sel = [rows[i] for i in sub]
        if ex.rank(sel) != k - 1:
            continue
        (r,) = ex.nullspace(sel, k)
        vals = [ex.dot(h, r) for h in rows]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            r = tuple(-x for x in r)
        else:
            continue
        p = ex.primitive(r)
        if p not in found:
            found[p] = frozenset(i for i, h in enumerate(rows) if ex.dot(h, p) == 0)
    rays = sorted(found)
    return tuple(rays), tuple(found[r] for r in rays)


@dataclass(frozen=True)
class GoodCone:
    """Validated moment cone. Build with :func:`validate_good_cone`."""

    rank: int
    normals: tuple
    name: str = ""
    rays: tuple = field(default=(), repr=False)
    ray_facets: tuple = field(default=(), repr=False)

    @property
    def n(self):
        return self.rank - 1

    @cached_property
    def labels(self):
        """Orbifold label m_a of each normal (its integer content)."""
        return tuple(ex.content(u) for u in self.normals)

    @cached_property
    def primitive_normals(self):
        return tuple(tuple(x // m for x in u) for u, m in zip(self.normals, self.labels))

    @cached_property
    def facet_rays(self):
        """For each facet a, the frozenset of ray indices lying on it."""
        return tuple(frozenset(i for i, fs in enumerate(self.ray_facets) if a in fs)
                     for a in range(len(self.normals)))

    def to_dict(self):
        return {"name": self.name, "rank": self.rank,
                "normals": [list(u) for u in self.normals]}


def _faces(cone):
    """All proper nonzero faces, as frozensets of ray indices."""
    full = frozenset(range(len(cone.rays)))
    faces = set(fs for fs in cone.facet_rays)
    frontier = set(faces)
    while frontier:
        new = set()
        for f in frontier:
            for g in cone.facet_rays:
                h = f & g
                if h and h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    faces.discard(full)
    return sorted(faces, key=lambda f: (len(f), sorted(f)))


def validate_good_cone(normals, k=None, name=""):
    """Validate integer facet normals and return a :class:`GoodCone`.

    Non-primitive normals are accepted with a :class:`NonPrimitiveNormalWarning`;
    their content is kept as an orbifold label and goodness is checked on the
    primitive parts.
    """
    normals = tuple(tuple(int(x) for x in u) for u in normals)
    if k is None:
        k = len(normals[0]) if normals else 0
    if k < 2:
        raise InvalidCone("torus rank k must be at least 2")
    if any(len(u) != k for u in normals):
        raise InvalidCone(f"every normal must have {k} entries")
    if len(normals) < k:
        raise InvalidCone(f"need at least k={k} normals, got {len(normals)}")
    if any(not any(u) for u in normals):
        raise InvalidCone("zero normal")
    prim = [tuple(x // ex.content(u) for x in u) for u in normals]
    if len(set(prim)) != len(prim):
        raise InvalidCone("repeated facet normal")
    for a, u in enumerate(normals):
        m = ex.content(u)
        if m > 1:
            warnings.warn(f"normal {a} = {u} is not primitive; recorded as orbifold label m={m}",
                          NonPrimitiveNormalWarning, stacklevel=2)

    rays, inc = cone_rays(prim, k)
    if not rays or ex.rank(rays) < k:
        raise InvalidCone("the cone has empty interior")
    cone = GoodCone(rank=k, normals=normals, name=name, rays=rays, ray_facets=inc)
    for a, fr in enumerate(cone.facet_rays):
        if not fr or ex.rank([rays[i] for i in fr]) != k - 1:
            raise InvalidCone(f"normal {a} = {normals[a]} does not define a facet")
    for face in _faces(cone):
        facets = sorted(a for a, fr in enumerate(cone.facet_rays) if face <= fr)
        idx = ex.lattice_index([prim[a] for a in facets])
        if idx != 1:
            raise NotGood(facets, idx)
    return cone


def reeb_cone_contains(cone, b):
    """True iff <x, b> > 0 on C* minus the origin, decided on the ray generators."""
    b = ex.vec(b)
    return all(ex.dot(r, b) > 0 for r in cone.rays)


def default_slicing_field(cone):
    """Primitive integral vector along the sum of the primitive normals."""
    s = [sum(col) for col in zip(*cone.primitive_normals)]
    return tuple(Fraction(x) for x in ex.primitive(s))


@dataclass(frozen=True)
class SlicePolytope:
    """``C* cap {<x, b_o> = 1/2}`` with its vertex/facet combinatorics.

    ``neighbors[v][a]`` is the vertex joined to ``v`` by the edge leaving facet
    ``a`` (``a`` ranges over ``vertex_facets[v]``); ``edges`` lists
    ``(v, w, primitive direction from v to w)`` for v < w.
    """

    b_o: tuple
    vertices: tuple
    vertex_facets: tuple
    neighbors: tuple
    edges: tuple

    @property
    def dim(self):
        return len(self.b_o) - 1


def slice_polytope(cone, b_o):
    b_o = ex.vec(b_o)
    if len(b_o) != cone.rank:
        raise ValueError(f"b_o must have {cone.rank} entries")
    if not reeb_cone_contains(cone, b_o):
        raise NotInReebCone(f"{[ex.fmt(x) for x in b_o]} is not in the open Reeb cone")
    k = cone.rank
    half = Fraction(1, 2)
    vertices, vfacets = [], []
    for i, (r, fs) in enumerate(zip(cone.rays, cone.ray_facets)):
        if len(fs) != k - 1:
            raise NotSimple(i, len(fs))
        s = half / ex.dot(r, b_o)
        vertices.append(tuple(s * x for x in r))
        vfacets.append(tuple(sorted(fs)))
    neighbors, edges = [], []
    for v, fs in enumerate(vfacets):
        nb = {}
        for a in fs:
            rest = set(fs) - {a}
            others = [w for w, gs in enumerate(vfacets) if w != v and rest <= set(gs)]
            if len(others) != 1:
                raise DegenerateEdge(f"edge of vertex {v} leaving facet {a} is not unique")
            w = others[0]
            nb[a] = w
            if v < w:
                d = tuple(y - x for x, y in zip(vertices[v], vertices[w]))
                edges.append((v, w, ex.primitive(d)))
        neighbors.append(nb)
    return SlicePolytope(b_o=b_o, vertices=tuple(vertices), vertex_facets=tuple(vfacets),
                         neighbors=tuple(neighbors), edges=tuple(edges))


@dataclass(frozen=True)
class VertexWeights:
    vertex: int
    d: int
    kappa: tuple
    facets: tuple   # facet a_i dual to kappa_i, i >= 1


def vertex_weights(cone, slc, vertex):
    """Fixed-point weights at a slice vertex.

    kappa_0 = 2 x_v; for i >= 1, kappa_i = 2 e_i where e_i runs along the slice
    edge leaving facet a_i, scaled so that <e_i, u_{a_i}> = 1 (for a unimodular
    vertex this is the primitive edge vector). d_v is the index of the lattice
    spanned by b_o and the normals through the vertex.
    """
    b_o = slc.b_o
    if any(x.denominator != 1 for x in b_o) or ex.content(b_o) != 1:
        raise ValueError("vertex weights need a primitive integral slicing field b_o")
    fs = slc.vertex_facets[vertex]
    if len(fs) != cone.rank - 1:
        raise NotSimple(vertex, len(fs))
    x_v = slc.vertices[vertex]
    kappa = [tuple(2 * x for x in x_v)]
    for a in fs:
        w = slc.neighbors[vertex][a]
        e = tuple(y - x for x, y in zip(x_v, slc.vertices[w]))
        s = ex.dot(e, cone.normals[a])
        if s == 0:
            raise DegenerateEdge(f"edge from vertex {vertex} is parallel to facet {a}")
        kappa.append(tuple(2 * x / s for x in e))
    d = ex.lattice_index([tuple(int(x) for x in b_o)] + [cone.normals[a] for a in fs])
    return VertexWeights(vertex=vertex, d=d, kappa=tuple(kappa), facets=fs)
