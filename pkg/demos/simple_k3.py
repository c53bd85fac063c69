"""
Twisting the real structure of a K3 with 24 singular points
===========================================================

The affine sphere with 24 focus-focus points has monodromy alternating
between T3 and T1.  Real gluing data are classes theta in H^1 with Z/2
coefficients.  The zero class gives two components; every other class
glues them into one.
"""

import random

from realkn import build_action, h1_theta, livne_moishezon_rep, orbits, verify
from realkn.exact_linalg import mat_mul, mat_pow
from realkn.monodromy import T1, T3

rep = livne_moishezon_rep()
print("relation holds:", verify(rep).ok)
print("(T1 T3)^6 =", mat_pow(mat_mul(T1, T3), 6).tolist())

h1 = h1_theta(rep, max_classes=1)
print(f"H^1 has dimension {h1.dimension}: {h1.cocycle_dimension} cocycles, "
      f"{h1.coboundary_dimension} coboundaries")

print("theta = 0:", orbits(build_action(rep, +1)))

# a handful of random non-zero classes
rng = random.Random(0)
for _ in range(5):
    k = rng.randrange(1, 2**h1.dimension)
    theta = {g: (0, 0) for g in rep.generators}
    for i, b in enumerate(h1.basis):
        if (k >> i) & 1:
            theta = {g: tuple((x + y) % 2 for x, y in zip(theta[g], b[g])) for g in rep.generators}
    print(f"class {k:#x}:", orbits(build_action(rep.with_theta(theta), +1)))
