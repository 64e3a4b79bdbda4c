"""GRS, alternant and Goppa codes: construction, star products, keygen, decoding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import forms as qf
from . import linalg
from .errors import DecodeFailure, LengthMismatch, ParamError
from .ff import FieldTower, poly, psi_expand
from .ff.field import GF

_PROPER_RETRIES = 100


# -- containers ----------------------------------------------------------


@dataclass(frozen=True)
class LinearCode:
    """A code given by a full-rank generator matrix in reduced echelon form."""

    field: GF
    gen: np.ndarray

    @classmethod
    def from_generator(cls, F: GF, G) -> LinearCode:
        R, k = linalg.rref(F, G)
        if k == 0:
            raise ValueError("the zero code has no generator matrix")
        return cls(F, R)

    @classmethod
    def from_parity(cls, F: GF, H) -> LinearCode:
        return cls(F, linalg.right_kernel(F, H).basis)

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def parity(self):
        return linalg.right_kernel(self.field, self.gen).basis

    def contains(self, w) -> bool:
        return not np.any(linalg.matmul(self.field, self.parity(), np.asarray(w)))

    def random_codeword(self, rng):
        msg = self.field.random(rng, self.k)
        return linalg.matmul(self.field, msg, self.gen)


@dataclass(frozen=True)
class GrsSpec:
    """Support ``x``, multiplier ``y`` and dimension ``r`` of ``GRS_r(x, y)``."""

    x: np.ndarray
    y: np.ndarray
    r: int

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64)
        y = np.asarray(self.y, dtype=np.int64)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x.shape != y.shape or x.ndim != 1:
            raise LengthMismatch("support and multiplier must be vectors of equal length")
        if len(np.unique(x)) != len(x):
            raise ParamError("support entries must be pairwise distinct")
        if np.any(y == 0):
            raise ParamError("multiplier entries must be nonzero")
        if not 2 <= self.r <= len(x):
            raise ParamError(f"need 2 <= r <= n, got r={self.r}, n={len(x)}")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class GoppaSpec:
    x: np.ndarray
    Gamma: np.ndarray


@dataclass
class AlternantInstance:
    """Secret and public data of one McEliece-style key."""

    tower: FieldTower
    q: int
    m: int
    r: int
    n: int
    seed: int
    kind: str
    spec: GrsSpec
    P: np.ndarray
    H_sec: np.ndarray
    H_pub: np.ndarray
    Gamma: np.ndarray | None = None

    @property
    def code(self) -> LinearCode:
        return LinearCode.from_parity(self.tower.base, self.H_pub)


# -- constructions -------------------------------------------------------


def vandermonde(tower: FieldTower, spec: GrsSpec):
    """``r x n`` matrix with rows ``(x_j^i y_j)_j``."""
    top = tower.top
    powers = top.pow(spec.x[None, :], np.arange(spec.r)[:, None])
    return top.mul(powers, spec.y[None, :])


def star(F: GF, c, d):
    c, d = np.asarray(c, dtype=np.int64), np.asarray(d, dtype=np.int64)
    if c.shape != d.shape:
        raise LengthMismatch(f"lengths {c.shape} and {d.shape} differ")
    return F.mul(c, d)


def _gen(C):
    return C.gen if isinstance(C, LinearCode) else np.atleast_2d(np.asarray(C, dtype=np.int64))


def star_codes(F: GF, C, D) -> LinearCode:
    """Span of all products of basis rows of ``C`` and ``D``."""
    A, B = _gen(C), _gen(D)
    if A.shape[1] != B.shape[1]:
        raise LengthMismatch("codes have different lengths")
    prods = F.mul(A[:, None, :], B[None, :, :]).reshape(-1, A.shape[1])
    return LinearCode.from_generator(F, prods)


def square_dim(F: GF, C) -> int:
    """``dim C^{*2}`` using only products ``g_i * g_j`` with ``i <= j``."""
    return linalg.rank(F, qf.product_matrix(F, _gen(C)))


def dual(C: LinearCode) -> LinearCode:
    return LinearCode.from_parity(C.field, C.gen)


def trace_code(tower: FieldTower, C) -> LinearCode:
    """Row space over ``F_q`` of ``Psi_alpha(G)`` (the trace code of ``C``)."""
    return LinearCode.from_generator(tower.base, psi_expand(tower, _gen(C)))


def alternant_parity(tower: FieldTower, spec: GrsSpec):
    """``Psi_alpha(V_r(x, y))``, a parity-check matrix of ``Alt_r(x, y)``."""
    return psi_expand(tower, vandermonde(tower, spec))


def code_equal(F: GF, C, D) -> bool:
    A, B = _gen(C), _gen(D)
    if A.shape[1] != B.shape[1]:
        raise LengthMismatch("codes have different lengths")
    return linalg.span_equal(F, A, B)


# -- key generation ------------------------------------------------------


def _check_params(q: int, m: int, r: int, n: int):
    if r < 2:
        raise ParamError(f"r must be at least 2 (got {r})")
    if m < 1:
        raise ParamError(f"m must be at least 1 (got {m})")
    if n > q**m:
        raise ParamError(f"n = {n} exceeds the field size q^m = {q**m}")
    if r * m >= n:
        raise ParamError(f"r*m = {r * m} must be smaller than n = {n}")


def _random_irreducible(F: GF, deg: int, rng):
    while True:
        f = np.append(F.random(rng, deg), 1)
        if poly.is_irreducible(F, f):
            return f


def _keygen(q, m, r, n, seed, kind, tower=None) -> AlternantInstance:
    _check_params(q, m, r, n)
    tower = tower or FieldTower.default(q, m)
    if tower.q != q or tower.m != m:
        raise ParamError("tower does not match (q, m)")
    rng = np.random.default_rng(seed)
    top, Fq = tower.top, tower.base
    for _ in range(_PROPER_RETRIES):
        x = rng.choice(top.order, size=n, replace=False).astype(np.int64)
        Gamma = None
        if kind == "goppa":
            Gamma = _random_irreducible(top, r, rng)
            y = top.inv(poly.evaluate(top, Gamma, x))
        else:
            y = top.random(rng, n, nonzero=True)
        spec = GrsSpec(x, y, r)
        H_sec = alternant_parity(tower, spec)
        if linalg.rank(Fq, H_sec) == r * m:
            break
    else:
        raise ParamError("could not draw a proper alternant code")
    P = linalg.random_invertible(Fq, r * m, rng)
    H_pub = linalg.matmul(Fq, P, H_sec)
    return AlternantInstance(tower, q, m, r, n, seed, kind, spec, P, H_sec, H_pub, Gamma)


def keygen_alternant(q: int, m: int, r: int, n: int, seed: int, tower=None) -> AlternantInstance:
    return _keygen(q, m, r, n, seed, "alternant", tower)


def keygen_goppa(q: int, m: int, r: int, n: int, seed: int, tower=None) -> AlternantInstance:
    """Goppa instance: ``y = Gamma(x)^{-1}`` for a random monic irreducible ``Gamma``."""
    return _keygen(q, m, r, n, seed, "goppa", tower)


def keygen(q, m, r, n, seed, kind: str = "alternant", tower=None) -> AlternantInstance:
    if kind not in ("alternant", "goppa"):
        raise ParamError(f"unknown code kind {kind!r}")
    return _keygen(q, m, r, n, seed, kind, tower)


# -- decoding ------------------------------------------------------------


def decoding_radius(r: int) -> int:
    return r // 2


def syndromes(tower: FieldTower, spec: GrsSpec, w):
    return linalg.matmul(tower.top, vandermonde(tower, spec), np.asarray(w, dtype=np.int64))


def _locator(top: GF, s, r: int, tau: int):
    """Monic ``sigma`` of degree ``tau`` annihilating the syndrome sequence, or None."""
    if tau == 0:
        return np.array([1], dtype=np.int64) if not np.any(s) else None
    # rows t = 0..r-1-tau: sum_{k<tau} sigma_k s_{t+k} = -s_{t+tau}
    idx = np.arange(r - tau)[:, None] + np.arange(tau)[None, :]
    Hk = s[idx]
    rhs = top.neg(s[np.arange(r - tau) + tau])
    sol = linalg.solve(top, Hk, rhs)
    if sol is None:
        return None
    return np.append(sol, 1)


def decode(tower: FieldTower, spec: GrsSpec, w):
    """Nearest codeword of ``Alt_r(x, y)`` within ``floor(r/2)`` errors.

    The result is re-checked against the parity-check matrix; words with
    no codeword in range raise :class:`DecodeFailure`.
    """
    top, Fq = tower.top, tower.base
    w = np.asarray(w, dtype=np.int64)
    if w.shape != (spec.n,):
        raise LengthMismatch(f"word has length {w.shape}, code has length {spec.n}")
    if np.any((w < 0) | (w >= tower.q)):
        raise ValueError("received word must lie in F_q^n")
    r = spec.r
    s = syndromes(tower, spec, w)
    for tau in range(decoding_radius(r) + 1):
        sigma = _locator(top, s, r, tau)
        if sigma is None:
            continue
        if tau == 0:
            return w.copy()
        pos = np.flatnonzero(poly.evaluate(top, sigma, spec.x) == 0)
        if len(pos) != tau:
            break
        V = top.mul(top.pow(spec.x[pos][None, :], np.arange(tau)[:, None]), spec.y[pos][None, :])
        vals = linalg.solve(top, V, s[:tau])
        if vals is None or np.any(vals == 0) or np.any(vals >= tower.q):
            break
        c = w.copy()
        c[pos] = Fq.sub(c[pos], vals)
        if np.any(syndromes(tower, spec, c)):
            break
        return c
    raise DecodeFailure("no codeword within the decoding radius")


def plant_errors(F: GF, c, t: int, rng):
    """Add ``t`` nonzero errors at random positions."""
    c = np.asarray(c, dtype=np.int64).copy()
    pos = rng.choice(len(c), size=t, replace=False)
    c[pos] = F.add(c[pos], F.random(rng, t, nonzero=True))
    return c
