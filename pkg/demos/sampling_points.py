"""
Deterministic low-discrepancy sampling of a parameter box
=========================================================

Builds Halton point sets on two boxes and shows the nesting property
that the study harness relies on: the first N points of a longer run
are bitwise identical to a run of length N.
"""
import numpy as np

from rbfuq import ParameterDomain, halton_points, radical_inverse

# the raw van der Corput digits in base 2 before any box mapping
print("radical inverses, base 2:", [radical_inverse(i, 2) for i in range(1, 9)])
print("radical inverses, base 3:", [radical_inverse(i, 3) for i in range(1, 9)])

# a unit box in 3 parameters; one coprime base per dimension
unit = ParameterDomain.unit(3)
pts = halton_points(unit, 8).points
print("\nfirst 8 points on [0,1]^3:")
for row in pts:
    print("  ", np.round(row, 4))

# prefixes are exact: extending a study reuses every earlier sample
longer = halton_points(unit, 100).points
print("\nprefix of 100-point run equals 8-point run:", np.array_equal(longer[:8], pts))

# the same sequence mapped affinely onto a centered box
box = ParameterDomain.symmetric(np.sqrt(3.0), 2)
mapped = halton_points(box, 4).points
print("\nfirst 4 points on [-sqrt(3), sqrt(3)]^2:")
for row in mapped:
    print("  ", np.round(row, 4))

# discrepancy in action: running means of a product integrand
f = lambda y: np.prod(np.abs(4.0 * y - 2.0), axis=1)
big = halton_points(unit, 4096).points
vals = f(big)
for n in (64, 256, 1024, 4096):
    print(f"mean of |4y-2| product over first {n:4d} points: {vals[:n].mean():.6f}  (exact 1)")
