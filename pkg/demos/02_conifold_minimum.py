"""Volume minimization on the conifold cone.

Fixing the first coordinate of b at 3 leaves a two-parameter family.  The
minimum of V sits at b = (3, 3/2, 3/2) with value 16 pi^3/27.  The scale-free
functional H has its own minimizer on the default slice.
"""
from fractions import Fraction

from reebcone import build_slice, catalog, minimize

cone = catalog.get("conifold").cone

report = minimize(build_slice(cone, zeta=(Fraction(1, 3), 0, 0), target="V"))
print("V minimizer:", [round(x, 12) for x in report.argmin])
print("certificate:", [str(x) for x in report.certificate], "->", report.certificate_value)
print("gradient norm on the slice:", f"{report.gradient_norm:.2e}")

report = minimize(build_slice(cone, target="H"))
print("H minimizer:", [round(x, 12) for x in report.argmin], f"value {report.value:.10g}")
print("distinct critical rays found:", report.n_critical_rays)
