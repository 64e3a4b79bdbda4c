"""Finite fields and the tower F_p <= F_q <= F_{q^m}."""

from . import poly
from .field import GF
from .tower import (
    Element,
    FieldTower,
    field_arith,
    find_roots,
    frobenius,
    psi_contract,
    psi_contract_element,
    psi_expand,
    trace,
)

__all__ = [
    "GF",
    "Element",
    "FieldTower",
    "field_arith",
    "find_roots",
    "frobenius",
    "poly",
    "psi_contract",
    "psi_contract_element",
    "psi_expand",
    "trace",
]
