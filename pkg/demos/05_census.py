"""Counting critical rays of H inside planar slices of the Reeb cone.

Restrict H to the 2D subcone cut out by a plane.  Its directional derivative
is evaluated exactly on a grid and each sign change is bisected.
"""
import random

from reebcone import catalog, dataset_from_cone
from reebcone.optimize import critical_rays_2d
from reebcone.verify import random_reeb_vector

cone = catalog.get("Y3_1").cone
D = dataset_from_cone(cone)
rng = random.Random(11)

for _ in range(4):
    b1, b2 = random_reeb_vector(cone, rng), random_reeb_vector(cone, rng)
    census = critical_rays_2d(D, b1, b2, grid=40)
    rays = ", ".join(f"[{', '.join(f'{x:.6f}' for x in r['b'])}] ({r['kind']})"
                     for r in census.roots)
    print(f"span {[str(x) for x in b1]} / {[str(x) for x in b2]}: {census.count} -> {rays}")
