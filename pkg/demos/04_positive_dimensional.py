"""Fixed loci that are not points.

Let a two-torus act on S^5 by rotating the first coordinate alone and the last
two together.  The fixed set is a point plus a projective line.  Its
localization dataset must reproduce the toric sphere restricted to Reeb
vectors of the form (b1, b2, b2).
"""
from fractions import Fraction

from reebcone import catalog, dataset_from_cone, evaluate
from reebcone.catalog import merged_sphere_dataset

D = merged_sphere_dataset((1, 2))
for z in D.components:
    print(f"{z.name}: dimension {2 * z.m}, weights {[[str(x) for x in w] for w in z.weights]}")

toric = dataset_from_cone(catalog.get("orthant3").cone)
for b1, b2 in [(1, 1), (2, 3), (Fraction(5, 2), Fraction(1, 7))]:
    merged = evaluate("H", D, (b1, b2))[0]
    full = evaluate("H", toric, (b1, b2, b2))[0]
    print(f"H({b1}, {b2}) = {merged}   toric: {full}")
    assert merged == full
