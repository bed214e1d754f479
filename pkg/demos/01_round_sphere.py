"""Exact functionals on the three-sphere and its round point.

The moment cone of C^2 is the positive quadrant.  Localization gives
V = 2 pi^2/(b1 b2) and S = 8 pi^2 (b1 + b2)/(b1 b2), which we recover exactly.
At b = (1, 1) two vertex terms have poles that cancel, so the direct
formula refuses and the limit evaluator takes over.
"""
from fractions import Fraction

from reebcone import catalog, dataset_from_cone, evaluate, oracle_scalar, oracle_volume
from reebcone.errors import VanishingWeight
from reebcone.localize import total_scalar, volume

cone = catalog.get("orthant2").cone
D = dataset_from_cone(cone)

for b in [(1, 2), (2, 3), (Fraction(1, 3), 5)]:
    v, s = volume(D, b), total_scalar(D, b)
    # the triangulation oracle knows nothing about fixed points
    assert v == oracle_volume(cone, b) and s == oracle_scalar(cone, b)
    print(f"b = {b}:  V = {v}   S = {s}")

try:
    volume(D, (1, 1))
except VanishingWeight as err:
    print("direct evaluation at (1, 1):", err)

for name in "VSH":
    value, used_limit = evaluate(name, D, (1, 1))
    print(f"{name}(1, 1) = {value}  (limit: {used_limit})")
