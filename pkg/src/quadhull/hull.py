"""Quadratic hulls: I_2 bases, tangent spaces and the distinguishability regime."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import forms as qf
from . import linalg
from .errors import ParamError, PointNotOnVariety
from .ff.field import GF


@dataclass(frozen=True)
class QuadricBasis:
    """Linearly independent quadratic forms in ``k`` variables (one per row)."""

    field: GF
    k: int
    basis: np.ndarray

    @property
    def n_monomials(self) -> int:
        return qf.n_monomials(self.k)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def span(self) -> linalg.Subspace:
        return linalg.rowspace(self.field, self.basis, self.n_monomials)

    def gradient_matrices(self):
        return qf.gradient_matrices(self.field, self.basis, self.k)


def i2_basis(F: GF, M) -> QuadricBasis:
    """Quadratic forms vanishing on every column of ``M``."""
    M = np.asarray(M, dtype=np.int64)
    k = M.shape[0]
    prod = qf.product_matrix(F, M)
    ker = linalg.left_kernel(F, prod)
    B = ker.basis
    if B.shape[0] and np.any(linalg.matmul(F, B, prod)):
        raise AssertionError("I2 basis does not vanish on the input columns")
    assert B.shape[0] + linalg.rank(F, prod) == qf.n_monomials(k)
    return QuadricBasis(F, k, B)


def hankel_minors_basis(F: GF, r: int) -> QuadricBasis:
    """The 2x2 minors ``X_a X_{b+1} - X_{a+1} X_b`` of the 2 x (r-1) Hankel matrix."""
    if r < 3:
        raise ParamError("the Hankel minors need r >= 3")
    rows = []
    minus_one = int(F.neg(1))
    for a in range(r - 1):
        for b in range(a + 1, r - 1):
            f = np.zeros(qf.n_monomials(r), dtype=np.int64)
            f[qf.monomial_index(r, a, b + 1)] = 1
            idx = qf.monomial_index(r, a + 1, b)
            f[idx] = F.add(f[idx], minus_one)
            rows.append(f)
    return QuadricBasis(F, r, np.array(rows, dtype=np.int64))


def tangent_space(F: GF, B: QuadricBasis, P) -> linalg.Subspace:
    """Right kernel of the Jacobian of ``B`` at ``P``."""
    P = np.asarray(P, dtype=np.int64)
    if P.shape != (B.k,):
        raise ValueError(f"point must have {B.k} coordinates")
    if B.dim == 0:
        return linalg.Subspace(F, B.k, linalg.identity(B.k))
    if np.any(qf.evaluate(F, B.basis, P)):
        raise PointNotOnVariety("point does not lie on every quadric")
    return linalg.right_kernel(F, qf.jacobian(F, B.basis, P))


def jacobians(F: GF, B: QuadricBasis, points):
    """Jacobians at every column of ``points``; shape ``(n, |B|, k)``."""
    points = np.asarray(points, dtype=np.int64)
    k, n = points.shape
    s = B.dim
    M = B.gradient_matrices().reshape(s * k, k)
    return linalg.matmul(F, M, points).reshape(s, k, n).transpose(2, 0, 1)


# -- bounds and regimes ----------------------------------------------------


def _floor_log(q: int, v: int) -> int:
    """Largest ``e`` with ``q**e <= v`` (``v >= 1``)."""
    e = 0
    while q ** (e + 1) <= v:
        e += 1
    return e


def ea_exponent(q: int, r: int) -> int:
    if r < 2:
        raise ParamError("r must be at least 2")
    return _floor_log(q, r - 1)


def ea_bound(q: int, m: int, r: int) -> int:
    """Lower bound on ``dim I_2`` of a proper dual alternant code."""
    e = ea_exponent(q, r)
    geom = (q ** (e + 1) - 1) // (q - 1)
    twice = m * (r - 1) * ((2 * e + 1) * r - 2 * geom)
    assert twice % 2 == 0, "non-integral alternant bound"
    return twice // 2


def eg_exponent(q: int, r: int) -> int:
    """``ceil(log_q(r / (q-1)^2)) + 1``, computed in integers."""
    if r < 2:
        raise ParamError("r must be at least 2")
    e = -1
    # the ceiling is at least -1 whenever r >= 1
    while q**max(e, 0) * (q - 1) ** 2 < r * (q ** max(-e, 0)):
        e += 1
    return e + 1


def eg_bound(q: int, m: int, r: int) -> int:
    """Lower bound on ``dim I_2`` of a proper dual Goppa code."""
    if r < 2:
        raise ParamError("r must be at least 2")
    if r < q - 1:
        return m * comb(r - 1, 2)
    e = eg_exponent(q, r)
    if e < 1:
        raise AssertionError("unexpected Goppa exponent")
    twice = m * r * ((2 * e + 1) * r - 2 * (q - 1) * q ** (e - 1) - 1)
    assert twice % 2 == 0, "non-integral Goppa bound"
    return twice // 2


@dataclass(frozen=True)
class RegimeReport:
    q: int
    m: int
    r: int
    n: int
    kind: str
    bound: int
    threshold: int
    distinguishable: bool
    weil_proper_expected: bool
    e: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def regime(q: int, m: int, r: int, n: int, kind: str = "alternant") -> RegimeReport:
    if kind not in ("alternant", "goppa"):
        raise ParamError(f"unknown code kind {kind!r}")
    if r < 2:
        raise ParamError("r must be at least 2")
    threshold = comb(r * m + 1, 2) - n
    if kind == "alternant":
        bound = ea_bound(q, m, r)
        e = ea_exponent(q, r)
        small_r = r <= q
    else:
        bound = eg_bound(q, m, r)
        e = eg_exponent(q, r)
        small_r = r < q - 1
    dist = bound > threshold
    return RegimeReport(q, m, r, n, kind, bound, threshold, dist, dist and small_r, e)
