"""Key recovery: stabilizer algebra, normalization, similarity and support recovery."""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from math import ceil

import numpy as np

from . import codes, hull, linalg
from .codes import GrsSpec
from .errors import (
    AlgebraDimensionError,
    DecodeFailure,
    DegenerateTangent,
    GeneratorSearchExhausted,
    NotSimilar,
    ParamError,
    SSFailure,
    VerificationFailure,
)
from .ff import FieldTower, find_roots, poly, psi_contract, psi_expand
from .sidelnikov import sidelnikov_shestakov
from .weil import WeilCtx

log = logging.getLogger(__name__)

GENERATOR_DRAWS = 64


# -- stabilizer equations --------------------------------------------------


def stabilizer_equations(F, T: linalg.Subspace):
    """Linear conditions on the row-major entries of ``A`` for ``A T <= T``.

    With ``G`` a basis of ``T`` and ``H`` a parity-check matrix, the
    conditions are the entries of ``H A G^T``; their coefficient matrix is
    ``kron(H, G)``.
    """
    k, d = T.ambient_dim, T.dim
    if d == 0 or d == k:
        raise DegenerateTangent(f"tangent space of dimension {d} in ambient {k}")
    G = T.basis
    H = linalg.right_kernel(F, G).basis
    E = F.mul(H[:, None, :, None], G[None, :, None, :]).reshape(H.shape[0] * d, k * k)
    return E


def expected_points(r: int) -> int | None:
    """``ceil(1 / (rho (1 - rho)))`` with ``rho = 2/r``; ``None`` when ``r <= 2``."""
    if r <= 2:
        return None
    # 1/(rho(1-rho)) = r^2 / (2(r-2))
    return ceil(r * r / (2 * (r - 2)))


@dataclass
class StabilizerAlgebra:
    """``m`` matrices spanning the recovered algebra (stacked as ``(m, k, k)``)."""

    basis: np.ndarray
    ctx: WeilCtx
    diagnostics: dict = field(default_factory=dict)

    @property
    def F(self):
        return self.ctx.F

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.basis.shape[1]

    def element(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        F = self.F
        flat = self.basis.reshape(self.dim, -1)
        return linalg.matmul(F, coeffs, flat).reshape(self.size, self.size)

    def random_element(self, rng):
        return self.element(self.F.random(rng, self.dim))

    def span(self) -> linalg.Subspace:
        return linalg.rowspace(self.F, self.basis.reshape(self.dim, -1))

    def contains(self, M) -> bool:
        return self.span().contains(np.asarray(M).reshape(-1))

    def is_commutative(self) -> bool:
        F = self.F
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a, b = self.basis[i], self.basis[j]
                if not np.array_equal(linalg.matmul(F, a, b), linalg.matmul(F, b, a)):
                    return False
        return True

    def is_closed(self) -> bool:
        S = self.span()
        prods = [
            linalg.matmul(self.F, self.basis[i], self.basis[j]).reshape(-1)
            for i in range(self.dim)
            for j in range(self.dim)
        ]
        return S.contains(np.array(prods))

    def contains_identity(self) -> bool:
        return self.contains(linalg.identity(self.size))

    def all_nonzero_invertible(self, limit: int = 4096) -> bool:
        """Exhaustively check invertibility of every nonzero element (small algebras only)."""
        q = self.F.order
        total = q**self.dim
        if total > limit:
            raise ValueError(f"algebra has {total} elements, above the limit {limit}")
        for code in range(1, total):
            coeffs = [(code // q**i) % q for i in range(self.dim)]
            if not linalg.is_invertible(self.F, self.element(coeffs)):
                return False
        return True


def compute_algebra(tower: FieldTower, H_pub, r: int) -> StabilizerAlgebra:
    """Common stabilizer of the tangent spaces of the public quadratic hull."""
    F = tower.base
    m = tower.m
    ctx = WeilCtx(tower, r)
    H_pub = np.asarray(H_pub, dtype=np.int64)
    k, n = H_pub.shape
    if k != r * m:
        raise ParamError(f"H_pub has {k} rows, expected r*m = {r * m}")
    t0 = time.perf_counter()
    B = hull.i2_basis(F, H_pub)
    t_i2 = time.perf_counter() - t0
    diag: dict = {"i2_dim": B.dim, "unknowns": k * k}
    if B.dim == 0:
        raise AlgebraDimensionError("the public code has no quadratic relations", diag)
    if B.n_monomials - B.dim == n:
        # the square of the dual code is all of F_q^n: I_2 is forced by dimension
        raise AlgebraDimensionError("the public code is not square-distinguishable", diag)

    jacs = hull.jacobians(F, B, H_pub)
    tangents: dict[int, linalg.Subspace] = {}

    def tangent(j):
        if j not in tangents:
            tangents[j] = linalg.right_kernel(F, jacs[j])
        return tangents[j]

    N = expected_points(r)
    probe = n if N is None else min(n, 3 * N)
    histogram = Counter(tangent(j).dim for j in range(probe))
    modal = max(sorted(histogram), key=lambda d: histogram[d])
    diag.update(expected_points=N, modal_tangent_dim=modal)

    S = linalg.identity(k * k)  # rows span the current solution space
    n_eq = 0
    used = 0
    skipped = []
    points_to_m = None
    j = 0
    t1 = time.perf_counter()
    while (n_eq < k * k or S.shape[0] > m) and j < n:
        T = tangent(j)
        histogram_key = T.dim
        if j >= probe:
            histogram[histogram_key] += 1
        if T.dim != modal or T.dim in (0, k):
            skipped.append(j)
            j += 1
            continue
        E = stabilizer_equations(F, T)
        n_eq += E.shape[0]
        used += 1
        K = linalg.right_kernel(F, linalg.matmul(F, E, S.T))
        S = linalg.matmul(F, K.basis, S)
        if S.shape[0] < m:
            break
        if S.shape[0] == m and points_to_m is None:
            points_to_m = used
        j += 1
    t_solve = time.perf_counter() - t1
    diag.update(
        tangent_histogram=dict(sorted(histogram.items())),
        points_used=used,
        points_to_m=points_to_m,
        skipped_columns=len(skipped),
        equations=n_eq,
        algebra_dim=int(S.shape[0]),
        time_i2=t_i2,
        time_stabilizer=t_solve,
    )
    if skipped:
        log.info("skipped %d columns with non-modal or degenerate tangent spaces", len(skipped))
    if S.shape[0] != m:
        raise AlgebraDimensionError(
            f"stabilizer algebra has dimension {S.shape[0]}, expected {m}", diag
        )
    alg = StabilizerAlgebra(S.reshape(m, k, k), ctx, diag)
    if not (alg.contains_identity() and alg.is_commutative() and alg.is_closed()):
        raise AlgebraDimensionError("stabilizer space is not a commutative algebra", diag)
    try:
        _draw_generator(alg, np.random.default_rng(0))
    except GeneratorSearchExhausted as exc:
        raise AlgebraDimensionError("stabilizer algebra is not a field", diag) from exc
    return alg


def _draw_generator(alg: StabilizerAlgebra, rng):
    """Random element with irreducible minimal polynomial of degree ``m``.

    Finding one proves the algebra is a field of order ``q^m``.
    """
    F, m = alg.F, alg.dim
    for _ in range(GENERATOR_DRAWS):
        A = alg.random_element(rng)
        f = linalg.minimal_polynomial(F, A)
        if len(f) - 1 == m and poly.is_irreducible(F, f):
            return A, f
    raise GeneratorSearchExhausted(f"no generator after {GENERATOR_DRAWS} draws")


# -- normalization ---------------------------------------------------------


def normalize_generator(alg: StabilizerAlgebra, rng=None):
    """Element of the algebra whose minimal polynomial is ``Pi_alpha``."""
    rng = np.random.default_rng(0) if rng is None else rng
    ctx = alg.ctx
    tower, F, m = ctx.tower, ctx.F, ctx.m
    A, f = _draw_generator(alg, rng)
    if np.array_equal(f, tower.top_modulus):
        return A
    roots = find_roots(tower, f)
    if len(roots) == 0:
        raise AssertionError("minimal polynomial of degree m has no root in F_{q^m}")
    zeta = int(roots[0])
    Z = psi_expand(tower, tower.top.pow(zeta, np.arange(m))).reshape(m, m).T
    g = linalg.solve(F, Z, psi_expand(tower, tower.alpha))
    if g is None:
        raise AssertionError("alpha is not in F_q[zeta]")
    N = linalg.matrix_poly(F, g, A)
    if not np.array_equal(linalg.minimal_polynomial(F, N), tower.top_modulus):
        raise AssertionError("normalized generator has the wrong minimal polynomial")
    return N


# -- verification ----------------------------------------------------------


def verify_key(tower: FieldTower, H_pub, x, y, r: int, seed: int = 0) -> bool:
    """Row-space equality of the parity checks plus one decoding round trip."""
    F = tower.base
    try:
        spec = GrsSpec(x, y, r)
    except (ParamError, ValueError):
        return False
    H = codes.alternant_parity(tower, spec)
    H_pub = np.asarray(H_pub, dtype=np.int64)
    if H.shape[1] != H_pub.shape[1] or not linalg.span_equal(F, H, H_pub):
        return False
    rng = np.random.default_rng(seed)
    code = codes.LinearCode.from_parity(F, H_pub)
    c = code.random_codeword(rng)
    w = codes.plant_errors(F, c, (r - 1) // 2, rng)
    try:
        return bool(np.array_equal(codes.decode(tower, spec, w), c))
    except DecodeFailure:
        return False


# -- full attack -----------------------------------------------------------


@dataclass
class AttackReport:
    outcome: str
    recovered: GrsSpec | None = None
    j_conjugate: int | None = None
    diagnostics: dict = field(default_factory=dict)
    message: str = ""

    @property
    def success(self) -> bool:
        return self.outcome == "success"

    def as_dict(self) -> dict:
        out = {
            "outcome": self.outcome,
            "message": self.message,
            "j_conjugate": self.j_conjugate,
            "diagnostics": _jsonable(self.diagnostics),
        }
        if self.recovered is not None:
            out["x"] = self.recovered.x.tolist()
            out["y"] = self.recovered.y.tolist()
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def conjugate_exponent(ctx: WeilCtx, N, P):
    """``j`` with ``P J_r P^{-1} = N^{q^j}``, when the secret ``P`` is known."""
    F = ctx.F
    target = linalg.matmul(F, linalg.matmul(F, P, ctx.J_r), linalg.inverse(F, P))
    for j in range(ctx.m):
        if np.array_equal(linalg.matrix_power(F, N, ctx.tower.q**j), target):
            return j
    return None


def full_attack(
    tower: FieldTower,
    H_pub,
    r: int,
    seed: int = 0,
    max_restarts: int = 3,
    secret_P=None,
) -> AttackReport:
    """Recover a support and multiplier for the alternant code with parity checks ``H_pub``.

    Success is only reported for keys that pass :func:`verify_key`.
    """
    F = tower.base
    H_pub = np.asarray(H_pub, dtype=np.int64)
    times: dict = {}
    t0 = time.perf_counter()
    if linalg.rank(F, H_pub) != r * tower.m:
        return AttackReport("failure", message="H_pub does not have full rank r*m")
    try:
        alg = compute_algebra(tower, H_pub, r)
    except AlgebraDimensionError as exc:
        diag = exc.args[1] if len(exc.args) > 1 else {}
        return AttackReport("inapplicable", diagnostics=diag, message=str(exc.args[0]))
    times["algebra"] = time.perf_counter() - t0
    diag = dict(alg.diagnostics)
    rng = np.random.default_rng(seed)
    failures = []
    for attempt in range(max(1, max_restarts)):
        t1 = time.perf_counter()
        try:
            N = normalize_generator(alg, rng)
            Q = linalg.similarity_transform(F, N, alg.ctx.J_r)
            G = psi_contract(tower, linalg.matmul(F, Q, H_pub))
            if linalg.rank(tower.top, G) != r:
                raise VerificationFailure("contracted matrix does not have rank r")
            x, y = sidelnikov_shestakov(tower.top, G, seed=int(rng.integers(2**31)))
            if not verify_key(tower, H_pub, x, y, r, seed=int(rng.integers(2**31))):
                raise VerificationFailure("recovered key does not reproduce the public code")
        except (GeneratorSearchExhausted, NotSimilar, SSFailure, VerificationFailure) as exc:
            failures.append(f"{type(exc).__name__}: {exc}")
            continue
        times["recovery"] = time.perf_counter() - t1
        times["total"] = time.perf_counter() - t0
        diag.update(attempts=attempt + 1, failures=failures, timings=times)
        j = None if secret_P is None else conjugate_exponent(alg.ctx, N, secret_P)
        return AttackReport("success", GrsSpec(x, y, r), j, diag, "key recovered and verified")
    times["total"] = time.perf_counter() - t0
    diag.update(attempts=max(1, max_restarts), failures=failures, timings=times)
    return AttackReport("failure", diagnostics=diag, message=failures[-1] if failures else "")
