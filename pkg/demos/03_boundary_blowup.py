"""Approaching the edge of the Reeb cone.

Near a facet of the slice one fiber weight <kappa_0, b> goes to zero and
every functional blows up.  The leading Laurent term is exact.
"""
import random

from reebcone import boundary_leading_term, build_slice, catalog, dataset_from_cone
from reebcone.optimize import probe_boundary, random_boundary_point

cone = catalog.get("Y2_1").cone
D = dataset_from_cone(cone)
problem = build_slice(cone)

target, start = random_boundary_point(problem, random.Random(3))
print("boundary point:", [str(x) for x in target])

direction = tuple(y - x for x, y in zip(target, start))
for name in "VSH":
    lt = boundary_leading_term(name, D, target, direction)
    print(f"{name} ~ ({lt.coefficient}) * eps^-{lt.exponent}   via {lt.component}")

probe = probe_boundary(problem, target, base=start, steps=8, functionals=("V", "H"))
for row in probe.rows:
    print(f"eps = {row['eps']:>10}   V = {row['V']:.4e}   H = {row['H']:.4e}")
print("blow-up confirmed:", probe.passed)
