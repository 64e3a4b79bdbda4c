"""Quadratic forms as coefficient vectors.

A form in ``k`` variables is a length ``k(k+1)/2`` vector whose entries are
the coefficients of ``X_i X_j`` (``i <= j``) in lexicographic order of
``(i, j)``.  A set of forms is a matrix with one form per row.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import linalg
from .ff.field import GF


@lru_cache(maxsize=64)
def monomials(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays ``(I, J)`` with ``I[t] <= J[t]`` listing the monomials."""
    I, J = np.triu_indices(k)
    I = I.astype(np.int64)
    J = J.astype(np.int64)
    I.flags.writeable = False
    J.flags.writeable = False
    return I, J


def n_monomials(k: int) -> int:
    return k * (k + 1) // 2


def monomial_index(k: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * k - i * (i - 1) // 2 + (j - i)


def product_matrix(F: GF, G):
    """Rows ``g_i * g_j`` (componentwise) for ``i <= j``; shape ``(k(k+1)/2, n)``."""
    G = np.asarray(G, dtype=np.int64)
    I, J = monomials(G.shape[0])
    return F.mul(G[I], G[J])


def evaluate(F: GF, forms, points):
    """Values of each form (rows) at each point (columns); shape ``(s, n)``."""
    forms = np.atleast_2d(np.asarray(forms, dtype=np.int64))
    points = np.asarray(points, dtype=np.int64)
    if points.ndim == 1:
        points = points[:, None]
    return linalg.matmul(F, forms, product_matrix(F, points))


def to_upper(k: int, form):
    """Upper-triangular ``U`` with ``f(X) = X^T U X``."""
    U = np.zeros((k, k), dtype=np.int64)
    I, J = monomials(k)
    U[I, J] = np.asarray(form, dtype=np.int64)
    return U


def from_square(F: GF, W):
    """Coefficient vector of ``X^T W X`` for an arbitrary square ``W``."""
    W = np.asarray(W, dtype=np.int64)
    k = W.shape[0]
    I, J = monomials(k)
    off = F.add(W[I, J], W[J, I])
    return np.where(I == J, W[I, J], off)


def gradient_matrices(F: GF, forms, k: int):
    """Stack of ``M_f`` with ``grad f(P) = M_f P`` (formal derivatives)."""
    forms = np.atleast_2d(np.asarray(forms, dtype=np.int64))
    s = forms.shape[0]
    I, J = monomials(k)
    M = np.zeros((s, k, k), dtype=np.int64)
    M[:, I, J] = forms
    M[:, J, I] = forms
    diag = np.arange(k)
    M[:, diag, diag] = F.add(M[:, diag, diag], M[:, diag, diag])
    return M


def jacobian(F: GF, forms, point):
    """``s x k`` Jacobian of the forms at ``point``."""
    point = np.asarray(point, dtype=np.int64)
    k = point.shape[0]
    M = gradient_matrices(F, forms, k)
    s = M.shape[0]
    return linalg.matmul(F, M.reshape(s * k, k), point).reshape(s, k)


def substitute(F: GF, form, A):
    """Coefficients of ``f(A X)`` for a ``k x k`` matrix ``A``."""
    A = np.asarray(A, dtype=np.int64)
    U = to_upper(A.shape[0], form)
    W = linalg.matmul(F, linalg.matmul(F, A.T, U), A)
    return from_square(F, W)


def to_str(form, k: int, var: str = "X") -> str:
    I, J = monomials(k)
    terms = []
    for c, i, j in zip(np.asarray(form), I, J):
        if c == 0:
            continue
        mono = f"{var}{i}^2" if i == j else f"{var}{i}*{var}{j}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"
