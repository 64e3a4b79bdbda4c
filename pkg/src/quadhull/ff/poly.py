"""Dense univariate polynomials over a :class:`~quadhull.ff.field.GF`.

A polynomial is a 1-D int64 array of coefficients, lowest degree first.
The zero polynomial is the empty array.  Every function takes the
coefficient field as its first argument.
"""

from __future__ import annotations

import numpy as np

from ..errors import DivisionByZero


def trim(f):
    f = np.asarray(f, dtype=np.int64).reshape(-1)
    nz = np.flatnonzero(f)
    if nz.size == 0:
        return f[:0].copy()
    return f[: nz[-1] + 1].copy()


def degree(f) -> int:
    """Degree of ``f``; -1 for the zero polynomial."""
    return len(trim(f)) - 1


def monic(F, f):
    f = trim(f)
    if f.size == 0:
        raise DivisionByZero("zero polynomial has no leading coefficient")
    return F.mul(f, F.inv(f[-1]))


def add(F, f, g):
    f, g = np.asarray(f, dtype=np.int64), np.asarray(g, dtype=np.int64)
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def sub(F, f, g):
    return add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def scale(F, f, c):
    return trim(F.mul(np.asarray(f, dtype=np.int64), c))


def mul(F, f, g):
    f, g = trim(f), trim(g)
    if f.size == 0 or g.size == 0:
        return f[:0]
    if F.is_prime:
        return trim(np.convolve(f, g) % F.p)
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            out[i : i + len(g)] = F.add(out[i : i + len(g)], F.mul(c, g))
    return trim(out)


def divmod_(F, f, g):
    """Quotient and remainder of ``f`` by nonzero ``g``."""
    f, g = trim(f), trim(g)
    if g.size == 0:
        raise DivisionByZero("polynomial division by zero")
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return f[:0].copy(), f
    rem = f.copy()
    lead_inv = F.inv(g[-1])
    quo = np.zeros(len(f) - dg, dtype=np.int64)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = rem[k + dg]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        quo[k] = c
        rem[k : k + dg + 1] = F.sub(rem[k : k + dg + 1], F.mul(c, g))
    return trim(quo), trim(rem[:dg])


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def gcd(F, f, g):
    """Monic gcd (zero if both inputs are zero)."""
    f, g = trim(f), trim(g)
    while g.size:
        f, g = g, mod(F, f, g)
    if f.size == 0:
        return f
    return monic(F, f)


def lcm(F, f, g):
    f, g = trim(f), trim(g)
    if f.size == 0 or g.size == 0:
        return f[:0]
    q, r = divmod_(F, mul(F, f, g), gcd(F, f, g))
    assert r.size == 0
    return monic(F, q)


def evaluate(F, f, x):
    """Horner evaluation of ``f`` at every point of the array ``x``."""
    f = trim(f)
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in f[::-1]:
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(F, f, e: int, g):
    """``f**e mod g`` by square-and-multiply."""
    result = np.array([1], dtype=np.int64)
    base = mod(F, f, g)
    while e > 0:
        if e & 1:
            result = mod(F, mul(F, result, base), g)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), g)
    return mod(F, result, g)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f) -> bool:
    """Rabin's irreducibility test over the field ``F``."""
    f = trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    f = monic(F, f)
    x = np.array([0, 1], dtype=np.int64)

    def frob_power(k):
        # X^(|F|^k) mod f
        h = x
        for _ in range(k):
            h = powmod(F, h, F.order, f)
        return h

    if sub(F, frob_power(d), x).size != 0:
        return False
    for ell in _prime_factors(d):
        h = sub(F, frob_power(d // ell), x)
        if gcd(F, h, f).size != 1:
            return False
    return True


def from_int(code: int, base: int, length: int | None = None):
    """Coefficients of the base-``base`` expansion of ``code``."""
    digits = []
    while code:
        digits.append(code % base)
        code //= base
    if length is not None:
        digits += [0] * (length - len(digits))
    return np.array(digits, dtype=np.int64)


def smallest_irreducible(F, deg: int):
    """First monic irreducible of degree ``deg`` in little-endian code order.

    Deterministic default modulus; ``X^2 + 1`` over ``F_3`` for instance.
    """
    for code in range(F.order**deg):
        f = np.append(from_int(code, F.order, deg), 1)
        if deg > 1 and f[0] == 0:
            continue
        if is_irreducible(F, f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {deg}")


def to_str(f, var: str = "X") -> str:
    f = trim(f)
    if f.size == 0:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = int(f[i])
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)
