"""
Fields, coordinates and Weil restriction
========================================

Walk through F_9 = F_3[a]/(a^2 + 1), its coordinate map onto F_3^2, and how
a conic over F_9 turns into a pair of quadrics over F_3.
"""

import numpy as np

from quadhull import forms as qf
from quadhull import weil
from quadhull.ff import FieldTower, frobenius, psi_expand, trace

T = FieldTower.default(3, 2)
print("tower:", T.descriptor())

# Elements are small integers; the base-3 digits are the coordinates in (1, a).
a = T.element(T.alpha)
b = T.element([1, 1])  # 1 + a
print("a =", a.coeffs, " 1+a =", b.coeffs, " (1+a)(1+2a) =", (b * T.element([1, 2])).coeffs)
print("1/a =", a.inv().coeffs)
print("Frobenius(1+a) =", T.top.digits(frobenius(T, b.value, 1)), " trace(1+a) =", int(trace(T, b.value)))

# Multiplication by a is a linear map on F_3^2: its matrix is the companion J.
ctx = weil.WeilCtx(T, 3)
print("J =\n", ctx.J)
print("Theta (Frobenius) =\n", ctx.Theta)

# The conic X0 X2 - X1^2 over F_9 ...
f = np.zeros(6, dtype=np.int64)
f[qf.monomial_index(3, 0, 2)] = 1
f[qf.monomial_index(3, 1, 1)] = int(T.top.neg(1))
print("f =", qf.to_str(f, 3))

# ... becomes two quadrics in six variables over F_3.
Phi = weil.weil_restrict_quadric(T, f, 3)
for i, g in enumerate(Phi):
    print(f"Phi{i} =", qf.to_str(g, 6, var="x"))

# Points correspond one to one: expand (1, 1, 1) and evaluate.
P = psi_expand(T, np.array([1, 1, 1]))
print("Psi(1,1,1) =", P.tolist(), " Phi(Psi(P)) =", qf.evaluate(T.base, Phi, P).ravel().tolist())

# Every matrix of the form Res(B) Theta^j maps restricted varieties to restricted varieties.
print("conjugation identity holds on all of F_9:", weil.conjugation_holds(weil.WeilCtx(T, 2), T.top.elements()))
