"""Support and multiplier recovery from a generator matrix of a GRS code.

With the code in systematic form ``[I | B]`` on an information set
``I = (i_0, ..., i_{r-1})``, every entry of ``B`` is nonzero and

    B[a, j] / B[b, j] = c_ab * (x_j - x_{i_b}) / (x_j - x_{i_a})

for a constant ``c_ab``.  Pinning ``x_{i_a} = 0`` and ``x_{i_b} = 1`` and
choosing the remaining projective freedom through ``kappa`` gives the
redundant support values; each further information position then follows
from a small linear system, and the multiplier from one systematic row.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from . import codes, linalg
from .errors import ParamError, SSFailure
from .ff import poly
from .ff.field import GF

_KAPPA_TRIES = 4
_MAX_PAIRS = 12


def _support_from_pair(F: GF, B, piv, a, b, kappa):
    r, n_red = B.shape
    n = r + n_red
    red = np.setdiff1d(np.arange(n), piv)
    ratio = F.div(B[a], B[b])
    if np.any(ratio == kappa):
        return None
    x = np.zeros(n, dtype=np.int64)
    x[red] = F.div(kappa, F.sub(kappa, ratio))
    x[piv[a]] = 0
    x[piv[b]] = 1
    xr = x[red]
    M = np.stack([xr, F.neg(np.ones_like(xr))], axis=1)
    for i in range(r):
        if i in (a, b):
            continue
        s = F.div(B[a], B[i])
        sol = linalg.solve(F, M, F.mul(s, xr))
        if sol is None or sol[0] == 0:
            return None
        x[piv[i]] = F.div(sol[1], sol[0])
    if len(np.unique(x)) != n:
        return None
    return x


def _multiplier(F: GF, R, piv, x):
    """Multiplier matching the systematic rows, normalized by ``y_{i_0} = 1``."""
    r, n = R.shape
    red = np.setdiff1d(np.arange(n), piv)
    I = np.asarray(piv)
    y = np.zeros(n, dtype=np.int64)

    def locator(i):
        return poly.monic(F, _prod_linear(F, np.delete(x[I], i)))

    f0 = locator(0)
    scale0 = poly.evaluate(F, f0, x[I[0]])
    y[I[0]] = 1
    y[red] = F.div(F.mul(R[0, red], scale0), poly.evaluate(F, f0, x[red]))
    j0 = red[0]
    for i in range(1, r):
        fi = locator(i)
        num = F.mul(y[j0], poly.evaluate(F, fi, x[j0]))
        den = F.mul(R[i, j0], poly.evaluate(F, fi, x[I[i]]))
        if den == 0:
            return None
        y[I[i]] = F.div(num, den)
    if np.any(y == 0):
        return None
    return y


def _prod_linear(F: GF, roots):
    f = np.array([1], dtype=np.int64)
    for z in roots:
        f = poly.mul(F, f, np.array([F.neg(z), 1], dtype=np.int64))
    return f


def sidelnikov_shestakov(F: GF, G, seed: int = 0):
    """Return ``(x, y)`` with ``GRS_r(x, y)`` equal to the row space of ``G``.

    The answer is checked by code equality before it is returned.
    """
    G = np.atleast_2d(np.asarray(G, dtype=np.int64))
    R, piv = linalg.echelon(F, G)
    r, n = R.shape
    if r < 2:
        raise SSFailure("need a code of dimension at least 2")
    if n < r + 2:
        raise SSFailure("need at least two redundant positions")
    if 2 * r - 1 <= n and codes.square_dim(F, R) != 2 * r - 1:
        raise SSFailure("square dimension rules out a GRS code")
    red = np.setdiff1d(np.arange(n), piv)
    B = R[:, red]
    if np.any(B == 0):
        raise SSFailure("systematic form has zero entries; the code is not MDS")
    rng = np.random.default_rng(seed)
    pairs = list(permutations(range(r), 2))[:_MAX_PAIRS]
    for a, b in pairs:
        for _ in range(_KAPPA_TRIES):
            kappa = int(F.random(rng, nonzero=True))
            x = _support_from_pair(F, B, piv, a, b, kappa)
            if x is None:
                continue
            y = _multiplier(F, R, piv, x)
            if y is None:
                continue
            if _is_grs(F, R, x, y):
                return x, y
    raise SSFailure("no normalization produced a consistent support and multiplier")


def _is_grs(F: GF, R, x, y) -> bool:
    r = R.shape[0]
    try:
        spec = codes.GrsSpec(x, y, r)
    except ParamError:
        return False
    V = F.mul(F.pow(spec.x[None, :], np.arange(r)[:, None]), spec.y[None, :])
    return codes.code_equal(F, V, R)
