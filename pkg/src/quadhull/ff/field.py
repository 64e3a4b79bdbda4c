"""Table-driven finite fields.

Elements of a field of order ``Q = p**t`` are encoded as integers in
``[0, Q)``.  For an extension ``K[X]/(f)`` of degree ``d`` over a field
``K`` of order ``Q_K`` the element ``c_0 + c_1 X + ... + c_{d-1} X^{d-1}``
is encoded as ``sum(c_i * Q_K**i)``.  Two consequences are relied upon
throughout the package:

* the subfield ``K`` sits inside the extension as the codes ``0..Q_K-1``;
* the base-``Q_K`` digits of a code are its coordinates in the monomial
  basis ``(1, X, ..., X^{d-1})``.

All arithmetic methods accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import numpy as np

from ..errors import DivisionByZero
from . import poly

_ADD_TABLE_LIMIT = 8192


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GF:
    """A finite field, either prime or a simple extension of another GF.

    Use :meth:`prime` and :meth:`extension` rather than the constructor.
    """

    def __init__(self, p: int, order: int, base: GF | None, modulus, name: str):
        self.p = p
        self.order = order
        self.base = base
        self.modulus = None if modulus is None else poly.trim(modulus)
        self.name = name
        self.degree = 1 if base is None else len(self.modulus) - 1
        self.abs_degree = int(round(np.log(order) / np.log(p)))
        self.is_prime = base is None
        self._build_tables()

    # -- construction -------------------------------------------------

    @classmethod
    def prime(cls, p: int, name: str = "prime") -> GF:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p, p, None, None, name)

    @classmethod
    def extension(cls, base: GF, modulus, name: str = "ext") -> GF:
        modulus = poly.trim(modulus)
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not poly.is_irreducible(base, modulus):
            raise ValueError(f"modulus {poly.to_str(modulus)} is reducible over F_{base.order}")
        return cls(base.p, base.order ** (len(modulus) - 1), base, modulus, name)

    def _build_tables(self):
        Q, p = self.order, self.p
        self._digits = np.zeros((Q, self.abs_degree), dtype=np.int64)
        codes = np.arange(Q, dtype=np.int64)
        for i in range(self.abs_degree):
            self._digits[:, i] = (codes // p**i) % p
        self._pw = p ** np.arange(self.abs_degree, dtype=np.int64)

        if self.is_prime:
            self._neg = (-codes) % p
        else:
            self._neg = (((-self._digits) % p) @ self._pw).astype(np.int64)
        self._add = None
        if not self.is_prime and p != 2 and Q <= _ADD_TABLE_LIMIT:
            self._add = (((self._digits[:, None, :] + self._digits[None, :, :]) % p) @ self._pw)

        g = self._find_generator()
        self.generator = g
        exp = np.zeros(2 * (Q - 1), dtype=np.int64)
        if self.is_prime:
            v = 1
            for k in range(Q - 1):
                exp[k] = v
                v = (v * g) % p
        else:
            mg = self._mul_matrix(g)
            v = np.zeros(self.degree, dtype=np.int64)
            v[0] = 1
            pw = self.base.order ** np.arange(self.degree, dtype=np.int64)
            for k in range(Q - 1):
                exp[k] = int(v @ pw)
                v = self.base.sum(self.base.mul(mg, v[None, :]), axis=1)
        exp[Q - 1 :] = exp[: Q - 1]
        log = np.zeros(Q, dtype=np.int64)
        log[exp[: Q - 1]] = np.arange(Q - 1)
        if len(set(exp[: Q - 1].tolist())) != Q - 1:
            raise AssertionError("generator search returned a non-generator")
        self._exp, self._log = exp, log
        inv = np.zeros(Q, dtype=np.int64)
        inv[1:] = exp[(Q - 1 - log[1:]) % (Q - 1)]
        self._inv = inv

    def _base_digits(self, a: int):
        return poly.from_int(int(a), self.base.order, self.degree)

    def _mulmod(self, a, b):
        out = poly.mod(self.base, poly.mul(self.base, a, b), self.modulus)
        res = np.zeros(self.degree, dtype=np.int64)
        res[: len(out)] = out
        return res

    def _mul_matrix(self, g: int):
        """Matrix over the base field of ``y -> g*y`` in the monomial basis."""
        cols = []
        gd = self._base_digits(g)
        for k in range(self.degree):
            e = np.zeros(k + 1, dtype=np.int64)
            e[k] = 1
            cols.append(self._mulmod(gd, e))
        return np.array(cols, dtype=np.int64).T

    def _find_generator(self) -> int:
        Q = self.order
        if Q == 2:
            return 1
        factors = poly._prime_factors(Q - 1)
        for g in range(2, Q):
            if self.is_prime:
                if all(pow(g, (Q - 1) // ell, Q) != 1 for ell in factors):
                    return g
            else:
                gd = self._base_digits(g)
                if all(
                    not np.array_equal(
                        poly.powmod(self.base, gd, (Q - 1) // ell, self.modulus), [1]
                    )
                    for ell in factors
                ):
                    return g
        raise AssertionError("no multiplicative generator found")

    # -- arithmetic ---------------------------------------------------

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a, b]
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pw

    def neg(self, a):
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a * b) % self.p
        res = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"inverse of zero in F_{self.order}")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """``a ** e`` elementwise; ``e`` may be an integer array (negatives allowed)."""
        a = np.asarray(a, dtype=np.int64)
        if isinstance(e, (int, np.integer)) and e >= self.order:
            # keep e * log within int64
            e = (e - 1) % (self.order - 1) + 1
        e = np.asarray(e, dtype=np.int64)
        if np.any((a == 0) & (e < 0)):
            raise DivisionByZero(f"negative power of zero in F_{self.order}")
        res = self._exp[(self._log[a] * (e % (self.order - 1))) % (self.order - 1)]
        return np.where(a == 0, np.where(e == 0, 1, 0), res)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return np.sum(a, axis=axis) % self.p
        if self.p == 2:
            if axis is None:
                return np.bitwise_xor.reduce(a.reshape(-1))
            return np.bitwise_xor.reduce(a, axis=axis)
        if axis is None:
            return (self._digits[a.reshape(-1)].sum(axis=0) % self.p) @ self._pw
        if axis < 0:
            axis += a.ndim
        return (self._digits[a].sum(axis=axis) % self.p) @ self._pw

    def dot(self, a, b):
        return self.sum(self.mul(a, b))

    # -- helpers ------------------------------------------------------

    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def random(self, rng, size=None, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.order, size=size, dtype=np.int64)

    def digits(self, a):
        """Coordinates over the immediate base field (base-``Q_K`` digits)."""
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return a[..., None]
        qb = self.base.order
        return (a[..., None] // qb ** np.arange(self.degree, dtype=np.int64)) % qb

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64)
        if self.is_prime:
            return d[..., 0]
        qb = self.base.order
        return d @ (qb ** np.arange(self.degree, dtype=np.int64))

    def prime_digits(self, a):
        """Base-``p`` coordinates over the prime field (used by file formats)."""
        return self._digits[np.asarray(a, dtype=np.int64)]

    def contains(self, other: GF) -> bool:
        """True if ``other`` is this field or one of its subfields in the tower."""
        f = self
        while f is not None:
            if f is other:
                return True
            f = f.base
        return False

    def __repr__(self):
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.order}) = GF({self.base.order})[X]/({poly.to_str(self.modulus)})"
