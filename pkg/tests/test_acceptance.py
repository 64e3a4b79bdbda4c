"""Acceptance suite: one verdict line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (or execute this file) to
see the lines as they are produced; a summary is also printed at the end of
every pytest session.
"""

import sys
import time
import warnings
from itertools import product
from math import comb

import numpy as np
import pytest

from acceptance_log import record
from quadhull import attack, codes, hull, linalg, weil
from quadhull import forms as qf
from quadhull.ff import FieldTower, psi_expand

# pinned tolerances
C1_SEEDS = range(20)
C1_TIME_BUDGET_S = 30.0
C9_SEEDS = range(10)
C10_SEEDS = range(3)
C10_TIME_BUDGET_S = 600.0
C11_TRIALS = 100
C12_SOFT_BOUND = 4 + 2


@pytest.fixture(scope="module")
def c1_runs():
    """Keygen plus attack for the twenty reference instances, computed once."""
    runs = []
    for seed in C1_SEEDS:
        inst = codes.keygen(7, 2, 4, 35, seed)
        t = time.perf_counter()
        rep = attack.full_attack(inst.tower, inst.H_pub, 4, seed=seed, secret_P=inst.P)
        runs.append((inst, rep, time.perf_counter() - t))
    return runs


def test_c01_end_to_end_attack(c1_runs):
    ok_runs = 0
    worst = 0.0
    for inst, rep, secs in c1_runs:
        worst = max(worst, secs)
        if rep.success and secs <= C1_TIME_BUDGET_S and attack.verify_key(
            inst.tower, inst.H_pub, rep.recovered.x, rep.recovered.y, 4
        ):
            ok_runs += 1
    ok = ok_runs == len(C1_SEEDS)
    record("C1", ok, f"(7,2,4,35) success+verified {ok_runs}/{len(C1_SEEDS)}, "
                     f"slowest {worst:.2f}s (budget {C1_TIME_BUDGET_S:.0f}s)")
    assert ok


def test_c02_hull_dimension(c1_runs):
    dims = [hull.i2_basis(inst.tower.base, inst.H_pub).dim for inst, _, _ in c1_runs]
    expected = 2 * comb(3, 2)
    ok = all(d == expected for d in dims)
    record("C2", ok, f"dim I2(H_pub) = {sorted(set(dims))}, expected {expected}")
    assert ok


def test_c03_tangent_dimensions(c1_runs):
    seen = set()
    for inst, _, _ in c1_runs:
        F = inst.tower.base
        B = hull.i2_basis(F, inst.H_pub)
        jac = hull.jacobians(F, B, inst.H_pub)
        seen |= {linalg.right_kernel(F, jac[j]).dim for j in range(inst.n)}
    ok = seen == {4}
    record("C3", ok, f"tangent dimensions over all 20x35 columns: {sorted(seen)}")
    assert ok


def test_c04_stabilizer_algebra(c1_runs):
    bad = []
    for inst, _, _ in c1_runs:
        F = inst.tower.base
        alg = attack.compute_algebra(inst.tower, inst.H_pub, 4)
        target = linalg.matmul(F, linalg.matmul(F, inst.P, alg.ctx.J_r), linalg.inverse(F, inst.P))
        span = linalg.rowspace(F, np.stack([linalg.identity(8), target]).reshape(2, -1))
        good = (
            alg.dim == 2
            and alg.is_commutative()
            and alg.is_closed()
            and alg.all_nonzero_invertible()
            and alg.span() == span
        )
        if not good:
            bad.append(inst.seed)
    ok = not bad
    record("C4", ok, f"dim 2, commutative, closed, 48/48 invertible, span = F_q[P J_r P^-1]; "
                     f"bad seeds {bad}")
    assert ok


def test_c05_grs_square_law():
    rng = np.random.default_rng(2024)
    towers = [FieldTower.default(13, 1), FieldTower.default(7, 2), FieldTower.default(2, 5),
              FieldTower.default(3, 3), FieldTower.default(9, 2)]
    misses = 0
    for i in range(50):
        T = towers[i % len(towers)]
        K = T.top
        r = int(rng.integers(2, 6))
        n = int(rng.integers(2 * r - 1, min(K.order, 3 * r) + 1))
        x = rng.choice(K.order, n, replace=False)
        y = K.random(rng, n, nonzero=True)
        V = codes.vandermonde(T, codes.GrsSpec(x, y, r))
        misses += codes.square_dim(K, V) != 2 * r - 1
    ok = misses == 0
    record("C5", ok, f"square_dim = 2r-1 on {50 - misses}/50 random GRS codes")
    assert ok


def test_c06_rational_normal_curve():
    rng = np.random.default_rng(6)
    T = FieldTower.default(13, 1)
    results = []
    for r in range(3, 7):
        for n in (2 * r - 1, 12):
            x = rng.choice(13, n, replace=False)
            y = T.top.random(rng, n, nonzero=True)
            V = codes.vandermonde(T, codes.GrsSpec(x, y, r))
            # the minors cut out the curve of the unscaled Vandermonde matrix;
            # a multiplier only rescales columns and leaves the ideal unchanged
            B = hull.i2_basis(T.top, V)
            results.append(B.span() == hull.hankel_minors_basis(T.top, r).span())
    ok = all(results)
    record("C6", ok, f"I2(GRS) = Hankel minors for r=3..6: {sum(results)}/{len(results)}")
    assert ok


def test_c07_weil_machinery():
    # (a) conjugation identity, exhaustive
    fields = {9: (3, 2), 16: (2, 4), 25: (5, 2), 49: (7, 2)}
    conj_ok = all(
        weil.conjugation_holds(weil.WeilCtx(FieldTower.default(*qm), 2),
                               FieldTower.default(*qm).top.elements())
        for qm in fields.values()
    )
    # (b) point bijection for X0 X2 - X1^2 over F_9 / F_3
    T = FieldTower.default(3, 2)
    K, F = T.top, T.base
    f = np.zeros(6, dtype=np.int64)
    f[qf.monomial_index(3, 0, 2)] = 1
    f[qf.monomial_index(3, 1, 1)] = int(K.neg(1))
    Phi = weil.weil_restrict_quadric(T, f, 3)
    big = np.array(list(product(range(9), repeat=3))).T
    on_curve = big[:, qf.evaluate(K, f, big)[0] == 0]
    small = np.array(list(product(range(3), repeat=6))).T
    on_res = small[:, ~np.any(qf.evaluate(F, Phi, small), axis=0)]
    image = {tuple(c) for c in psi_expand(T, on_curve).T}
    bij_ok = on_curve.shape[1] == on_res.shape[1] and image == {tuple(c) for c in on_res.T}
    # (c) tangent spaces
    Bf = hull.QuadricBasis(K, 3, f[None, :])
    BPhi = hull.QuadricBasis(F, 6, Phi)
    tan_ok = True
    for P in on_curve.T:
        TP = hull.tangent_space(K, Bf, P)
        lhs = weil.restrict_subspace(T, TP.basis) if TP.dim else linalg.Subspace(F, 6, np.zeros((0, 6), dtype=np.int64))
        rhs = hull.tangent_space(F, BPhi, psi_expand(T, P))
        tan_ok &= lhs == rhs
    # (d) group membership round trips
    T2 = FieldTower.default(7, 2)
    ctx = weil.WeilCtx(T2, 3)
    rng = np.random.default_rng(77)
    hits = 0
    for _ in range(100):
        while True:
            Bm = T2.top.random(rng, (3, 3))
            if linalg.rank(T2.top, Bm) == 3:
                break
        j = int(rng.integers(2))
        g = weil.group_membership(ctx, weil.GroupElement(Bm, j).matrix(ctx))
        hits += g is not None and g.j == j and np.array_equal(g.B, Bm)
    ok = conj_ok and bij_ok and tan_ok and hits == 100
    record("C7", ok, f"(a) conjugation {conj_ok}; (b) {on_curve.shape[1]} points <-> "
                     f"{on_res.shape[1]} points {bij_ok}; (c) tangents at all points {bool(tan_ok)}; "
                     f"(d) round trips {hits}/100")
    assert ok


def test_c08_weil_properness(c1_runs):
    bad = []
    for inst, _, _ in c1_runs:
        T = inst.tower
        d_alt = hull.i2_basis(T.base, inst.H_pub).dim
        d_grs = hull.i2_basis(T.top, codes.vandermonde(T, inst.spec)).dim
        if d_alt != T.m * d_grs:
            bad.append((inst.seed, d_alt, d_grs))
    ok = not bad
    record("C8", ok, f"dim I2(alt dual) = m * dim I2(GRS) on 20 instances; mismatches {bad}")
    assert ok


def test_c09_goppa_regimes():
    a = []
    for seed in C9_SEEDS:
        inst = codes.keygen(7, 2, 4, 35, seed, kind="goppa")
        rep = attack.full_attack(inst.tower, inst.H_pub, 4, seed=seed)
        a.append(rep.success and attack.verify_key(inst.tower, inst.H_pub, rep.recovered.x, rep.recovered.y, 4))
    b = []
    for seed in C9_SEEDS:
        inst = codes.keygen(2, 4, 3, 15, seed, kind="goppa")
        rep = attack.full_attack(inst.tower, inst.H_pub, 3, seed=seed)
        b.append(rep.outcome == "inapplicable" and rep.recovered is None)
    ok = all(a) and all(b)
    record("C9", ok, f"(a) Goppa (7,2,4,35) success {sum(a)}/10; "
                     f"(b) binary Goppa (2,4,3,15) inapplicable {sum(b)}/10")
    assert ok


@pytest.mark.slow
def test_c10_r_greater_than_q():
    wins, worst = 0, 0.0
    for seed in C10_SEEDS:
        inst = codes.keygen(2, 9, 3, 400, seed)
        t = time.perf_counter()
        rep = attack.full_attack(inst.tower, inst.H_pub, 3, seed=seed)
        secs = time.perf_counter() - t
        worst = max(worst, secs)
        wins += rep.success and secs <= C10_TIME_BUDGET_S
    ok = wins >= 3
    record("C10", ok, f"(2,9,3,400) success {wins}/{len(C10_SEEDS)}, slowest {worst:.1f}s "
                      f"(budget {C10_TIME_BUDGET_S:.0f}s)")
    assert ok


def test_c11_decoder():
    rng = np.random.default_rng(11)
    exact = total = 0
    for q, m, r, n, seed in [(7, 2, 4, 35, 0), (7, 2, 5, 40, 1), (2, 5, 5, 32, 2), (9, 2, 3, 60, 3)]:
        inst = codes.keygen(q, m, r, n, seed)
        C = inst.code
        t = (r - 1) // 2
        for _ in range(C11_TRIALS):
            c = C.random_codeword(rng)
            w = codes.plant_errors(inst.tower.base, c, t, rng)
            total += 1
            exact += np.array_equal(codes.decode(inst.tower, inst.spec, w), c)
    # beyond the radius: anything returned must be a codeword within the radius
    inst = codes.keygen(7, 2, 4, 35, 0)
    silent = 0
    for _ in range(C11_TRIALS):
        w = codes.plant_errors(inst.tower.base, inst.code.random_codeword(rng), 5, rng)
        try:
            out = codes.decode(inst.tower, inst.spec, w)
        except codes.DecodeFailure:
            continue
        if not inst.code.contains(out) or np.count_nonzero(out != w) > codes.decoding_radius(4):
            silent += 1
    ok = exact == total and silent == 0
    record("C11", ok, f"exact recovery {exact}/{total}; unverified outputs beyond radius {silent}")
    assert ok


def test_c12_points_to_dimension_m(c1_runs):
    counts = [rep.diagnostics["points_to_m"] for _, rep, _ in c1_runs]
    worst = max(counts)
    within = worst <= C12_SOFT_BOUND
    if not within:
        warnings.warn(f"points needed to reach dim m exceeded N+2: {counts}")
    record("C12", True, f"points to reach dim m: max {worst}, histogram "
                        f"{dict(sorted((c, counts.count(c)) for c in set(counts)))} "
                        f"(soft bound N+2 = {C12_SOFT_BOUND}{'' if within else ', EXCEEDED'})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
