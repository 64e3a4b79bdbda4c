import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from quadhull.errors import BadLength, DivisionByZero, LevelMismatch
from quadhull.ff import (
    GF,
    FieldTower,
    field_arith,
    find_roots,
    frobenius,
    poly,
    psi_contract,
    psi_contract_element,
    psi_expand,
    trace,
)

SMALL_TOWERS = [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (4, 2), (2, 8), (13, 1)]


# -- worked examples in F_9 = F_3[a]/(a^2 + 1) -----------------------------


def test_default_f9_modulus(f9):
    assert f9.top_modulus.tolist() == [1, 0, 1]
    assert f9.descriptor() == "p=3; qpoly=[]; mpoly=[1,0,1]"


def test_f9_product(f9):
    a = f9.element([1, 1])
    b = f9.element([1, 2])
    assert (a * b).coeffs == (2, 0)


def test_f9_inverse_of_alpha(f9):
    alpha = f9.element(f9.alpha)
    assert alpha.inv().coeffs == (0, 2)
    assert field_arith(alpha, None, "inv") == f9.element([0, 2])


def test_f9_trace(f9):
    assert int(trace(f9, f9.alpha)) == 0
    assert int(trace(f9, 0)) == 0
    assert int(trace(f9, 1)) == 2


def test_f9_frobenius(f9):
    x = f9.element([1, 1]).value
    assert tuple(f9.top.digits(frobenius(f9, x, 1))) == (1, 2)
    assert frobenius(f9, x, 0) == x
    for c in range(3):
        assert frobenius(f9, c, 1) == c


def test_f9_psi(f9):
    assert psi_expand(f9, f9.element([2, 1]).value).tolist() == [2, 1]


def test_psi_matrix_columns(f9, rng):
    M = f9.top.random(rng, (2, 3))
    E = psi_expand(f9, M)
    assert E.shape == (4, 3)
    for j in range(3):
        col = np.concatenate([f9.top.digits(M[0, j]), f9.top.digits(M[1, j])])
        assert E[:, j].tolist() == col.tolist()
    assert np.array_equal(psi_contract(f9, E), M)


def test_find_roots_f9(f9):
    assert sorted(find_roots(f9, [1, 0, 1]).tolist()) == sorted([f9.alpha, int(f9.top.mul(2, f9.alpha))])


def test_find_roots_linear(f49):
    c = 17
    assert find_roots(f49, [int(f49.top.neg(c)), 1]).tolist() == [c]


@pytest.mark.parametrize("q,m", [(3, 2), (7, 2), (2, 5), (4, 3)])
def test_find_roots_of_modulus_are_conjugates(q, m):
    T = FieldTower.default(q, m)
    conj = sorted(int(frobenius(T, T.alpha, j)) for j in range(m))
    assert sorted(find_roots(T, T.top_modulus).tolist()) == conj


# -- independent oracle ------------------------------------------------------


@pytest.mark.parametrize("p,f", [(3, [1, 0, 1]), (2, [1, 1, 0, 0, 1]), (7, [1, 0, 1]), (5, [2, 0, 1])])
def test_tables_match_slow_polynomial_arithmetic(p, f):
    F = GF.extension(GF.prime(p), f)
    Q = F.order
    d = len(f) - 1
    a, b = np.meshgrid(np.arange(Q), np.arange(Q))
    prod = F.mul(a, b)
    summ = F.add(a, b)
    for x in range(Q):
        for y in range(Q):
            assert prod[y, x] == oracle.mul_codes(x, y, f, p)
            assert summ[y, x] == oracle.add_codes(x, y, p, d)


def test_nested_tower_matches_flat_field():
    # F_16 built as F_4[Y]/(...) must be a field of order 16 with a cyclic group
    T = FieldTower.default(4, 2)
    F = T.top
    assert F.order == 16
    assert len(set(F.pow(F.generator, np.arange(15)).tolist())) == 15


# -- field axioms (property based) ------------------------------------------

TOWERS = {qm: FieldTower.default(*qm) for qm in SMALL_TOWERS}


@st.composite
def field_and_elements(draw, count=3):
    qm = draw(st.sampled_from(SMALL_TOWERS))
    F = TOWERS[qm].top
    return (F,) + tuple(draw(st.integers(0, F.order - 1)) for _ in range(count))


@settings(max_examples=300, deadline=None)
@given(field_and_elements())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_TOWERS), st.data())
def test_trace_and_frobenius_properties(qm, data):
    T = TOWERS[qm]
    x = data.draw(st.integers(0, T.top.order - 1))
    y = data.draw(st.integers(0, T.top.order - 1))
    lam = data.draw(st.integers(0, T.q - 1))
    F = T.top
    assert trace(T, F.add(x, y)) == F.add(trace(T, x), trace(T, y))
    assert trace(T, frobenius(T, x, 1)) == trace(T, x)
    assert trace(T, x) < T.q
    z = x
    for _ in range(T.m):
        z = frobenius(T, z, 1)
    assert z == x
    assert frobenius(T, F.mul(x, y), 1) == F.mul(frobenius(T, x, 1), frobenius(T, y, 1))
    assert frobenius(T, F.add(x, y), 1) == F.add(frobenius(T, x, 1), frobenius(T, y, 1))
    lhs = psi_expand(T, F.add(F.mul(lam, x), y))
    rhs = T.base.add(T.base.mul(lam, psi_expand(T, x)), psi_expand(T, y))
    assert np.array_equal(lhs, rhs)
    assert psi_contract_element(T, psi_expand(T, x)) == x


@pytest.mark.parametrize("q,m", [(q, m) for q, m in SMALL_TOWERS if q**m <= 256])
def test_multiplicative_group_is_cyclic(q, m):
    F = TOWERS[(q, m)].top
    orders = []
    for x in range(1, F.order):
        k, y = 1, x
        while y != 1:
            y = int(F.mul(y, x))
            k += 1
        orders.append(k)
    assert max(orders) == F.order - 1
    assert all((F.order - 1) % k == 0 for k in orders)


# -- errors and plumbing -----------------------------------------------------


def test_division_by_zero(f9):
    with pytest.raises(DivisionByZero):
        f9.top.inv(0)
    with pytest.raises(DivisionByZero):
        f9.element(0).inv()
    with pytest.raises(ZeroDivisionError):
        f9.element(1) / f9.element(0)


def test_level_mismatch():
    T = FieldTower.default(9, 2)
    a = T.element(2, "mid")
    b = T.element(5, "top")
    with pytest.raises(LevelMismatch):
        field_arith(a, b, "add")
    with pytest.raises(LevelMismatch):
        _ = a * b


def test_contract_bad_length(f9):
    with pytest.raises(BadLength):
        psi_contract_element(f9, [1, 2, 0])
    with pytest.raises(BadLength):
        psi_contract(f9, np.zeros(3, dtype=np.int64))


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldTower(3, None, [2, 0, 1])  # X^2 - 1 = (X-1)(X+1)
    with pytest.raises(ValueError):
        FieldTower(4, None, [1, 0, 1])  # 4 is not prime


@pytest.mark.parametrize("q,m", [(9, 2), (8, 2), (2, 9), (7, 2)])
def test_descriptor_round_trip(q, m):
    T = FieldTower.default(q, m)
    U = FieldTower.from_descriptor(T.descriptor())
    assert U.descriptor() == T.descriptor()
    assert U.q == q and U.m == m


def test_descriptor_rejects_garbage():
    with pytest.raises(ValueError):
        FieldTower.from_descriptor("p=3; mpoly=[1,0")


def test_field_arith_dispatch(f49):
    a, b = f49.element(10), f49.element(33)
    assert field_arith(a, b, "sub") + b == a
    assert field_arith(a, 5, "pow") == a * a * a * a * a
    assert field_arith(a, None, "neg") + a == f49.element(0)
    with pytest.raises(ValueError):
        field_arith(a, b, "xor")


def test_poly_helpers():
    F = GF.prime(5)
    f = poly.mul(F, [1, 1], [4, 1])  # (X+1)(X-1) = X^2 - 1
    assert f.tolist() == [4, 0, 1]
    q, r = poly.divmod_(F, f, [1, 1])
    assert q.tolist() == [4, 1] and r.size == 0
    assert poly.gcd(F, f, [1, 1]).tolist() == [1, 1]
    assert poly.lcm(F, [1, 1], [4, 1]).tolist() == [4, 0, 1]
    assert not poly.is_irreducible(F, f)
    assert poly.is_irreducible(F, [2, 0, 1])
    assert poly.evaluate(F, f, np.arange(5)).tolist() == [4, 0, 3, 3, 0]
