"""Exact dense linear algebra over a table-driven finite field.

Matrices are 2-D int64 numpy arrays of field codes; every function takes
the field as its first argument.  Vectors are treated as rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field

import numpy as np

from .errors import NotInvertible, NotSimilar
from .ff import poly
from .ff.field import GF


def _arr(M):
    return np.asarray(M, dtype=np.int64)


def identity(n: int):
    return np.eye(n, dtype=np.int64)


def matmul(F: GF, A, B):
    """Matrix product over ``F``; accepts 1-D operands like ``numpy.matmul``."""
    A, B = _arr(A), _arr(B)
    if F.is_prime:
        return (A @ B) % F.p
    squeeze_a = A.ndim == 1
    squeeze_b = B.ndim == 1
    if squeeze_a:
        A = A[None, :]
    if squeeze_b:
        B = B[:, None]
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add(out, F.mul(A[:, k, None], B[None, k, :]))
    if squeeze_a:
        out = out[0]
    if squeeze_b:
        out = out[..., 0]
    return out


def mat_add(F: GF, A, B):
    return F.add(A, B)


def mat_sub(F: GF, A, B):
    return F.sub(A, B)


def scalar_mul(F: GF, c, A):
    return F.mul(c, A)


def echelon(F: GF, M):
    """Reduced row-echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the ``len(pivots)``
    nonzero rows and ``pivots`` are their leading columns.
    """
    R = _arr(M).copy()
    if R.ndim != 2:
        raise ValueError("echelon expects a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    prime = F.is_prime
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        piv = R[r, c]
        if piv != 1:
            R[r] = F.mul(R[r], F.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if prime:
                R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
            else:
                R[hit] = F.sub(R[hit], F.mul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r].copy(), pivots


def rref(F: GF, M):
    """``(R, rank)`` with ``R`` the nonzero rows of the reduced echelon form."""
    R, piv = echelon(F, M)
    return R, len(piv)


def rank(F: GF, M) -> int:
    M = _arr(M)
    if M.size == 0:
        return 0
    return len(echelon(F, M)[1])


@dataclass(frozen=True)
class Subspace:
    """Row space in canonical form: ``basis`` is reduced echelon, full rank."""

    field: GF = dc_field(repr=False)
    ambient_dim: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        v = _arr(v)
        if v.ndim == 1:
            v = v[None, :]
        return rank(self.field, np.vstack([self.basis, v])) == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))


def rowspace(F: GF, M, ambient_dim: int | None = None) -> Subspace:
    M = _arr(M)
    if M.ndim == 1:
        M = M[None, :]
    n = M.shape[1] if ambient_dim is None else ambient_dim
    if M.shape[0] == 0:
        return Subspace(F, n, np.zeros((0, n), dtype=np.int64))
    R, _ = echelon(F, M)
    return Subspace(F, n, R)


def span_equal(F: GF, A, B) -> bool:
    return rowspace(F, A) == rowspace(F, B)


def _kernel_from_echelon(F: GF, R, pivots, cols):
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        if pivots:
            K[t, pivots] = F.neg(R[:, f])
    return K


def right_kernel(F: GF, M) -> Subspace:
    """``{v : M v^T = 0}``."""
    M = _arr(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return Subspace(F, cols, identity(cols))
    R, piv = echelon(F, M)
    K = _kernel_from_echelon(F, R, piv, cols)
    # free-variable basis is already reduced echelon up to row order
    return rowspace(F, K, cols)


def left_kernel(F: GF, M) -> Subspace:
    """``{u : u M = 0}``."""
    return right_kernel(F, _arr(M).T)


def solve(F: GF, M, b):
    """One solution ``x`` of ``M x = b`` (``b`` vector or matrix), or ``None``."""
    M, b = _arr(M), _arr(b)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = M.shape
    R, piv = echelon(F, np.hstack([M, b]))
    if piv and piv[-1] >= cols:
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    if piv:
        x[piv] = R[:, cols:]
    return x[:, 0] if vec else x


def inverse(F: GF, A):
    A = _arr(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = echelon(F, np.hstack([A, identity(n)]))
    if len(piv) < n or piv[n - 1] >= n:
        raise NotInvertible("matrix is singular")
    return R[:, n:]


def is_invertible(F: GF, A) -> bool:
    A = _arr(A)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def matrix_power(F: GF, A, e: int):
    A = _arr(A)
    if e < 0:
        return matrix_power(F, inverse(F, A), -e)
    result = identity(A.shape[0])
    base = A
    while e:
        if e & 1:
            result = matmul(F, result, base)
        e >>= 1
        if e:
            base = matmul(F, base, base)
    return result


def matrix_poly(F: GF, f, A):
    """``f(A)`` by Horner's rule."""
    A = _arr(A)
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    I = identity(n)
    for c in poly.trim(f)[::-1]:
        out = F.add(matmul(F, out, A), F.mul(c, I))
    return out


def random_invertible(F: GF, n: int, rng):
    while True:
        P = F.random(rng, (n, n))
        if rank(F, P) == n:
            return P


def _local_minpoly(F: GF, A, v):
    """Monic generator of ``{f : f(A) v = 0}``."""
    krylov = [v]
    while True:
        w = matmul(F, A, krylov[-1])
        K = np.array(krylov, dtype=np.int64).T
        c = solve(F, K, w)
        if c is not None:
            # w = sum c_i A^i v
            return np.append(F.neg(c), 1)
        krylov.append(w)


def minimal_polynomial(F: GF, A, seed: int = 0):
    """Monic minimal polynomial of a square matrix.

    The lcm of Krylov minimal polynomials of three random vectors is
    checked by substitution; if it does not annihilate ``A`` the standard
    basis vectors are folded in until it does.
    """
    A = _arr(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("minimal polynomial of a non-square matrix")
    rng = np.random.default_rng(seed)
    f = np.array([1], dtype=np.int64)
    candidates = [F.random(rng, n) for _ in range(3)] + list(identity(n))
    for v in candidates:
        if not np.any(v):
            continue
        fv = _local_minpoly(F, A, v)
        f = poly.lcm(F, f, fv)
        if not np.any(matrix_poly(F, f, A)):
            return f
    raise AssertionError("minimal polynomial search did not terminate")


def _cyclic_basis(F: GF, A, d: int):
    """Columns ``v, Av, ..., A^{d-1} v`` for greedily chosen ``v``."""
    n = A.shape[0]
    cols: list[np.ndarray] = []
    for i in range(n):
        if len(cols) == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if cols and rank(F, np.array(cols + [e])) == len(cols):
            continue
        v = e
        for _ in range(d):
            cols.append(v)
            v = matmul(F, A, v)
    K = np.array(cols, dtype=np.int64).T
    if K.shape != (n, n) or rank(F, K) != n:
        raise NotSimilar("cyclic decomposition failed")
    return K


def similarity_transform(F: GF, A, B):
    """Invertible ``Q`` with ``B = Q A Q^{-1}``.

    Both matrices must share an irreducible minimal polynomial.
    """
    A, B = _arr(A), _arr(B)
    n = A.shape[0]
    if A.shape != (n, n) or B.shape != (n, n):
        raise NotSimilar("shape mismatch")
    fa = minimal_polynomial(F, A)
    fb = minimal_polynomial(F, B)
    if not np.array_equal(fa, fb):
        raise NotSimilar("minimal polynomials differ")
    d = len(fa) - 1
    if n % d or not poly.is_irreducible(F, fa):
        raise NotSimilar("minimal polynomial is not irreducible of degree dividing the size")
    KA = _cyclic_basis(F, A, d)
    KB = _cyclic_basis(F, B, d)
    Q = matmul(F, KB, inverse(F, KA))
    if not np.array_equal(matmul(F, Q, A), matmul(F, B, Q)):
        raise NotSimilar("similarity check failed")
    return Q
