"""The field tower F_p <= F_q <= F_{q^m} and the coordinate map Psi."""

from __future__ import annotations

import re

import numpy as np

from ..errors import BadLength, LevelMismatch
from . import poly
from .field import GF


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            s, rest = 0, q
            while rest % p == 0:
                rest //= p
                s += 1
            if rest != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, s
    raise ValueError(f"{q} is not a prime power")


class FieldTower:
    """``F_p <= F_q <= F_{q^m}`` with ``F_{q^m} = F_q[alpha]/(Pi_alpha)``.

    Parameters
    ----------
    p : int
        Characteristic.
    base_modulus : array_like or None
        Monic irreducible polynomial over ``F_p`` defining ``F_q``; ``None``
        when ``q = p``.
    top_modulus : array_like
        Monic irreducible polynomial of degree ``m`` over ``F_q`` (integer
        codes of ``F_q`` elements, little-endian).
    """

    def __init__(self, p: int, base_modulus, top_modulus):
        self.prime = GF.prime(p, name="prime")
        if base_modulus is None or len(poly.trim(base_modulus)) == 0:
            self.base = self.prime
            self.base_modulus = None
        else:
            self.base = GF.extension(self.prime, base_modulus, name="mid")
            self.base_modulus = poly.trim(base_modulus)
        self.top = GF.extension(self.base, top_modulus, name="top")
        self.top_modulus = poly.trim(top_modulus)
        self.p = p
        self.q = self.base.order
        self.m = len(self.top_modulus) - 1
        if self.m == 1:
            # Pi_alpha = X + c0, so alpha = -c0 lies in F_q
            self.alpha = int(self.base.neg(self.top_modulus[0]))
        else:
            self.alpha = self.q

    @classmethod
    def default(cls, q: int, m: int) -> FieldTower:
        """Tower with the first irreducible moduli in little-endian code order."""
        p, s = _prime_power(q)
        fp = GF.prime(p)
        base_mod = None
        fq = fp
        if s > 1:
            base_mod = poly.smallest_irreducible(fp, s)
            fq = GF.extension(fp, base_mod)
        top_mod = poly.smallest_irreducible(fq, m)
        return cls(p, base_mod, top_mod)

    # -- textual descriptor -------------------------------------------

    def descriptor(self) -> str:
        def fmt(f):
            return "[" + ",".join(str(int(c)) for c in f) + "]"

        qpoly = [] if self.base_modulus is None else self.base_modulus
        return f"p={self.p}; qpoly={fmt(qpoly)}; mpoly={fmt(self.top_modulus)}"

    @classmethod
    def from_descriptor(cls, text: str) -> FieldTower:
        fields = {}
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            key, _, value = part.partition("=")
            fields[key.strip()] = value.strip()
        try:
            p = int(fields["p"])
            qpoly = _parse_list(fields.get("qpoly", "[]"))
            mpoly = _parse_list(fields["mpoly"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad field descriptor {text!r}") from exc
        return cls(p, qpoly or None, mpoly)

    # -- levels and elements ------------------------------------------

    def level(self, name: str) -> GF:
        return {"prime": self.prime, "mid": self.base, "top": self.top}[name]

    def element(self, value, level: str = "top") -> Element:
        F = self.level(level)
        if isinstance(value, (list, tuple, np.ndarray)):
            value = int(F.from_digits(np.asarray(value)))
        return Element(F, int(value))

    def __repr__(self):
        return f"FieldTower({self.descriptor()})"


def _parse_list(s: str) -> list[int]:
    s = s.strip()
    if not re.fullmatch(r"\[\s*(-?\d+\s*(,\s*-?\d+\s*)*)?\]", s):
        raise ValueError(f"bad coefficient list {s!r}")
    inner = s[1:-1].strip()
    return [int(c) for c in inner.split(",")] if inner else []


class Element:
    """A scalar of one tower level with operator overloading.

    Bulk computations work on integer arrays directly; this wrapper is for
    readable scalar code.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        if not 0 <= value < field.order:
            raise ValueError(f"{value} is not a code of F_{field.order}")
        self.field = field
        self.value = int(value)

    @property
    def level(self) -> str:
        return self.field.name

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.field is not self.field:
                raise LevelMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, v) -> Element:
        return Element(self.field, int(v))

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> Element:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Element(F_{self.field.order}, {self.coeffs})"


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "pow": lambda a, b: a ** int(b),
    "inv": lambda a, b: a.inv(),
    "neg": lambda a, b: -a,
}


def field_arith(a: Element, b, op: str) -> Element:
    """Dispatch ``op`` on two elements; unary ops ignore ``b``."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "pow":
        return _OPS[op](a, b)
    if op not in ("inv", "neg") and isinstance(b, Element) and b.field is not a.field:
        raise LevelMismatch(f"{a.field.name} vs {b.field.name}")
    return _OPS[op](a, b)


# -- Galois structure ---------------------------------------------------


def frobenius(tower: FieldTower, x, j: int = 1):
    """``x ** (q ** j)``, elementwise."""
    return tower.top.pow(x, tower.q ** (j % tower.m) if tower.m else 1)


def trace(tower: FieldTower, x):
    """Absolute-to-relative trace ``F_{q^m} -> F_q``, elementwise."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for j in range(tower.m):
        acc = tower.top.add(acc, frobenius(tower, x, j))
    assert np.all(acc < tower.q), "trace left the base field"
    return acc


# -- coordinate identification Psi ------------------------------------


def psi_expand(tower: FieldTower, x):
    """Coordinates in the basis ``(1, alpha, ..., alpha^{m-1})``.

    A scalar gives a length-``m`` vector; a length-``r`` vector gives the
    concatenation of its coordinates (length ``r*m``); an ``r x n`` matrix
    is expanded columnwise into an ``(r*m) x n`` matrix.
    """
    x = np.asarray(x, dtype=np.int64)
    d = tower.top.digits(x)  # (..., m)
    if x.ndim == 0:
        return d
    if x.ndim == 1:
        return d.reshape(-1)
    if x.ndim == 2:
        r, n = x.shape
        return d.transpose(0, 2, 1).reshape(r * tower.m, n)
    raise ValueError("psi_expand expects a scalar, vector or matrix")


def psi_contract_element(tower: FieldTower, v) -> int:
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    if len(v) != tower.m:
        raise BadLength(f"expected {tower.m} coordinates, got {len(v)}")
    return int(tower.top.from_digits(v))


def psi_contract(tower: FieldTower, v):
    """Inverse of :func:`psi_expand` on vectors and matrices."""
    v = np.asarray(v, dtype=np.int64)
    m = tower.m
    if v.shape[0] % m != 0:
        raise BadLength(f"leading dimension {v.shape[0]} is not a multiple of {m}")
    if np.any((v < 0) | (v >= tower.q)):
        raise ValueError("coordinates must be codes of F_q")
    if v.ndim == 1:
        return tower.top.from_digits(v.reshape(-1, m))
    if v.ndim == 2:
        rm, n = v.shape
        return tower.top.from_digits(v.reshape(rm // m, m, n).transpose(0, 2, 1))
    raise ValueError("psi_contract expects a vector or matrix")


def find_roots(tower: FieldTower, f):
    """All roots in ``F_{q^m}`` of ``f`` (coefficients in any tower level)."""
    f = poly.trim(f)
    if f.size == 0:
        raise ValueError("the zero polynomial has every element as a root")
    xs = tower.top.elements()
    return xs[poly.evaluate(tower.top, f, xs) == 0]
