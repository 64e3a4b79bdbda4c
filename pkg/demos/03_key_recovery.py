"""
Recovering an alternant key
===========================

Generate a key, compute the stabilizer algebra of the public tangent spaces,
straighten it into block-companion form and read off a support and multiplier.
"""

import numpy as np

from quadhull import attack, codes, linalg, weil
from quadhull.ff import psi_contract
from quadhull.sidelnikov import sidelnikov_shestakov

inst = codes.keygen(7, 2, 4, 35, seed=3)
T, F = inst.tower, inst.tower.base
print(f"key: q={inst.q} m={inst.m} r={inst.r} n={inst.n}; H_pub is {inst.H_pub.shape}")

# Step 1: matrices preserving every tangent space of the public hull.
alg = attack.compute_algebra(T, inst.H_pub, inst.r)
for key in ("i2_dim", "modal_tangent_dim", "points_to_m", "equations", "algebra_dim"):
    print(f"  {key:<18} {alg.diagnostics[key]}")
print("  field of order 49:", alg.all_nonzero_invertible())

# Step 2: pick an element with the same minimal polynomial as alpha ...
N = attack.normalize_generator(alg)
print("minimal polynomial of N:", linalg.minimal_polynomial(F, N).tolist())

# ... and conjugate it onto J_r; the same change of basis undoes P up to the group.
Q = linalg.similarity_transform(F, N, alg.ctx.J_r)
g = weil.group_membership(alg.ctx, linalg.matmul(F, Q, inst.P))
print("Q P = Res(B) Theta^j with j =", g.j)

# Step 3: contract to a GRS generator matrix over F_49 and recover (x, y).
G = psi_contract(T, linalg.matmul(F, Q, inst.H_pub))
x, y = sidelnikov_shestakov(T.top, G)
print("recovered support, first five:", np.asarray(x[:5]).tolist())
print("recovered key reproduces H_pub:", attack.verify_key(T, inst.H_pub, x, y, inst.r))

# The whole pipeline in one call, with restarts and verification built in.
rep = attack.full_attack(T, inst.H_pub, inst.r, seed=3)
print("full_attack:", rep.outcome, "-", rep.message, f"({rep.diagnostics['timings']['total']:.3f}s)")

# A binary Goppa code sits outside the regime: the tool says so instead of guessing.
bg = codes.keygen(2, 4, 3, 15, seed=0, kind="goppa")
rep = attack.full_attack(bg.tower, bg.H_pub, 3)
print("binary Goppa (2,4,3,15):", rep.outcome, "-", rep.message)
