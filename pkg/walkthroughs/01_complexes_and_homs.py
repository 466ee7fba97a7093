"""Complexes, cones, shifts and graded Hom dimensions.

Builds a two-term complex by hand, takes a cone and a shift, and reads the
Poincare polynomial of a derived Hom.  Run: python walkthroughs/01_complexes_and_homs.py
"""

from mttlab import BoundedComplex, ChainMap, RatMatrix, cone, homology_dims, poincare, shift
from mttlab.cxcore import validate

# Q^2 --[1 1]--> Q in degrees 0, 1.  The map is onto, so only H^0 survives.
X = BoundedComplex({0: 2, 1: 1}, {0: RatMatrix.from_rows([[1, 1]])})
print("X has cohomology", homology_dims(X))

# A broken differential is caught with the offending degree named.
bad = BoundedComplex({0: 1, 1: 1, 2: 1},
                     {0: RatMatrix.from_rows([[1]]), 1: RatMatrix.from_rows([[2]])})
print("validate(bad):", validate(bad))

# The cone on the identity is acyclic.
C, _ = cone(ChainMap.identity(X))
print("cone(id_X) has cohomology", homology_dims(C) or "{} (acyclic)")

# Shifting the first argument of Hom shifts its Poincare polynomial.
L = BoundedComplex.point(1, 0)
print("P(X, L)      =", poincare(X, L))
for k in (-1, 1, 2):
    print(f"P(X[{k}], L) =", poincare(shift(X, k), L))
