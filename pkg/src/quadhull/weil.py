"""Restriction of scalars from F_{q^m} to F_q for matrices, forms and subspaces.

Coordinates of ``F_{q^m}^r`` are flattened as ``(i, j) -> i*m + j`` where
``j`` indexes the basis ``(1, alpha, ..., alpha^{m-1})``; this is the
layout produced by :func:`quadhull.ff.psi_expand`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import forms as qf
from . import linalg
from .errors import DegreeMismatch, NotInvertible
from .ff import FieldTower, frobenius, psi_contract, psi_expand


def _alpha_powers(tower: FieldTower):
    return tower.top.pow(tower.alpha, np.arange(tower.m))


def mat_alpha(tower: FieldTower, x):
    """Matrix over ``F_q`` of multiplication by ``x`` (``x`` may be an array).

    For an array input the result has shape ``x.shape + (m, m)``.
    """
    x = np.asarray(x, dtype=np.int64)
    prods = tower.top.mul(x[..., None], _alpha_powers(tower))  # (..., k)
    d = tower.top.digits(prods)  # (..., k, coord)
    return np.swapaxes(d, -1, -2)


def res_matrix(tower: FieldTower, B):
    """``Res(B)``: block ``(i, j)`` is ``mat_alpha(B[i, j])``."""
    B = np.atleast_2d(np.asarray(B, dtype=np.int64))
    s, r = B.shape
    m = tower.m
    blocks = mat_alpha(tower, B)  # (s, r, m, m)
    return blocks.transpose(0, 2, 1, 3).reshape(s * m, r * m)


def block_diag(M, copies: int):
    return np.kron(np.eye(copies, dtype=np.int64), np.asarray(M, dtype=np.int64))


def _frobenius_matrix(tower: FieldTower):
    return psi_expand(tower, frobenius(tower, _alpha_powers(tower), 1)).reshape(tower.m, tower.m).T


class WeilCtx:
    """Companion and Frobenius matrices for a tower and a number ``r`` of variables."""

    def __init__(self, tower: FieldTower, r: int):
        if r < 2:
            raise ValueError("r must be at least 2")
        self.tower = tower
        self.r = r
        self.m = tower.m
        self.F = tower.base
        self.J = mat_alpha(tower, tower.alpha)
        self.Theta = _frobenius_matrix(tower)
        self.J_r = block_diag(self.J, r)
        self.Theta_r = block_diag(self.Theta, r)
        self._check()

    def _check(self):
        t, F = self.tower, self.F
        if t.top.order <= 4096:
            xs = t.top.elements()
        else:
            xs = t.top.random(np.random.default_rng(0), 512)
        X = t.top.digits(xs).T  # m x N, columns psi(x)
        ax = t.top.digits(t.top.mul(t.alpha, xs)).T
        xq = t.top.digits(frobenius(t, xs, 1)).T
        assert np.array_equal(linalg.matmul(F, self.J, X), ax), "J does not act as alpha"
        assert np.array_equal(linalg.matmul(F, self.Theta, X), xq), "Theta is not Frobenius"
        assert np.array_equal(linalg.minimal_polynomial(F, self.J), t.top_modulus)

    def Theta_r_power(self, j: int):
        return linalg.matrix_power(self.F, self.Theta_r, j % self.m)

    def J_r_frobenius(self, j: int):
        """``J_r^{q^j}``."""
        return linalg.matrix_power(self.F, self.J_r, self.tower.q ** (j % self.m))


def is_res(tower: FieldTower, A):
    """``B`` with ``res_matrix(B) == A`` when ``A`` commutes with the ``J`` blocks, else ``None``."""
    A = np.asarray(A, dtype=np.int64)
    m = tower.m
    km, lm = A.shape
    if km % m or lm % m:
        raise ValueError("dimensions must be multiples of m")
    k, l = km // m, lm // m
    J = mat_alpha(tower, tower.alpha)
    F = tower.base
    if not np.array_equal(
        linalg.matmul(F, A, block_diag(J, l)), linalg.matmul(F, block_diag(J, k), A)
    ):
        return None
    first_cols = A[:, 0::m]  # column 0 of each block
    B = psi_contract(tower, first_cols)
    assert np.array_equal(res_matrix(tower, B), A)
    return B


def weil_restrict_quadric(tower: FieldTower, f, r: int):
    """The ``m`` forms ``Phi_j(f)`` in ``r*m`` variables over ``F_q``.

    ``f`` is a coefficient vector over ``F_{q^m}`` in ``r`` variables.
    """
    f = np.asarray(f, dtype=np.int64)
    if f.ndim != 1 or len(f) != qf.n_monomials(r):
        raise DegreeMismatch(f"expected a quadratic form in {r} variables")
    m, top = tower.m, tower.top
    U = qf.to_upper(r, f)
    apow = top.pow(tower.alpha, np.arange(2 * m - 1))
    jl = np.add.outer(np.arange(m), np.arange(m))
    # W[(a,j),(b,l)] = U[a,b] * alpha^(j+l)
    W = top.mul(U[:, None, :, None], apow[jl][None, :, None, :]).reshape(r * m, r * m)
    coeffs = qf.from_square(top, W)
    return top.digits(coeffs).T.copy()


def is_Jr_invariant(ctx: WeilCtx, W: linalg.Subspace) -> bool:
    if W.ambient_dim != ctx.r * ctx.m:
        raise ValueError("ambient dimension must be r*m")
    if W.dim == 0:
        return True
    images = linalg.matmul(ctx.F, W.basis, ctx.J_r.T)
    return W.contains(images)


def restrict_subspace(tower: FieldTower, V) -> linalg.Subspace:
    """``Psi_alpha(V)`` for the ``F_{q^m}``-row space ``V`` (basis rows)."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    k, r = V.shape
    scaled = tower.top.mul(V[:, None, :], _alpha_powers(tower)[None, :, None])
    rows = tower.top.digits(scaled).reshape(k * tower.m, r * tower.m)
    return linalg.rowspace(tower.base, rows, r * tower.m)


@dataclass(frozen=True)
class GroupElement:
    """``res_matrix(B) @ Theta_r^j``."""

    B: np.ndarray
    j: int

    def matrix(self, ctx: WeilCtx):
        return linalg.matmul(ctx.F, res_matrix(ctx.tower, self.B), ctx.Theta_r_power(self.j))


def group_membership(ctx: WeilCtx, A):
    """Decompose ``A = Res(B) Theta_r^j`` or return ``None``."""
    A = np.asarray(A, dtype=np.int64)
    F = ctx.F
    if not linalg.is_invertible(F, A):
        raise NotInvertible("group membership needs an invertible matrix")
    theta_inv = linalg.inverse(F, ctx.Theta_r)
    cur = A
    for j in range(ctx.m):
        B = is_res(ctx.tower, cur)
        if B is not None:
            g = GroupElement(B, j)
            assert np.array_equal(g.matrix(ctx), A)
            return g
        cur = linalg.matmul(F, cur, theta_inv)
    return None


def conjugation_holds(ctx: WeilCtx, x) -> bool:
    """``Theta Mat(x) Theta^{-1} == Mat(x^q)`` for every entry of ``x``."""
    F = ctx.F
    x = np.atleast_1d(np.asarray(x, dtype=np.int64))
    lhs = mat_alpha(ctx.tower, x)
    rhs = mat_alpha(ctx.tower, frobenius(ctx.tower, x, 1))
    th_inv = linalg.inverse(F, ctx.Theta)
    m = ctx.m
    # Theta applied to all matrices side by side, then Theta^{-1} to all stacked
    left = linalg.matmul(F, ctx.Theta, lhs.transpose(1, 0, 2).reshape(m, -1))
    left = left.reshape(m, len(x), m).transpose(1, 0, 2).reshape(-1, m)
    conj = linalg.matmul(F, left, th_inv).reshape(len(x), m, m)
    return bool(np.array_equal(conj, rhs))
