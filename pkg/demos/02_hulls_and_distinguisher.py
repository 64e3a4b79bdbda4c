"""
Quadratic hulls and the square distinguisher
============================================

A GRS code lies on a rational normal curve, so its generator matrix satisfies
many quadratic relations.  The trace construction keeps a Weil-restricted
copy of them, which is what separates alternant keys from random codes.
"""

import numpy as np

from quadhull import codes, hull
from quadhull import forms as qf
from quadhull.ff import FieldTower

rng = np.random.default_rng(1)
T13 = FieldTower.default(13, 1)

# GRS code of dimension 4 and length 12 over F_13.
x = rng.choice(13, 12, replace=False)
y = T13.top.random(rng, 12, nonzero=True)
V = codes.vandermonde(T13, codes.GrsSpec(x, y, 4))
print("square dimension of GRS_4:", codes.square_dim(T13.top, V), "(random code: 10)")

B = hull.i2_basis(T13.top, V)
print("quadrics through the columns:")
for g in B.basis:
    print("   ", qf.to_str(g, 4))
print("same span as the Hankel minors:", B.span() == hull.hankel_minors_basis(T13.top, 4).span())

# Tangent lines of the curve are 2-dimensional cones through the origin.
print("tangent dimension at column 0:", hull.tangent_space(T13.top, B, V[:, 0]).dim)

# Now an alternant key over F_7 with m = 2.
inst = codes.keygen(7, 2, 4, 35, seed=0)
Bp = hull.i2_basis(inst.tower.base, inst.H_pub)
print("\npublic key 8 x 35 over F_7: dim I2 =", Bp.dim)

rng = np.random.default_rng(0)
R = inst.tower.base.random(rng, (8, 35))
print("random 8 x 35 matrix:       dim I2 =", hull.i2_basis(inst.tower.base, R).dim)

for n in (35, 20):
    rep = hull.regime(7, 2, 4, n)
    print(f"n={n}: bound {rep.bound}, threshold {rep.threshold}, distinguishable {rep.distinguishable}")
