"""Closed-form ranges and radius bounds.

Each result here has an independent formula; the functions compute the formula and, where
useful, compare it with the sampled engine in ``qrange``.
"""

import logging

import numpy as np
import scipy.linalg

from .anchors import Anchor
from .configs import SampleConfig, ToleranceConfig
from .errors import EmptyRange, NotABounded, NotANilpotent2, NotASelfAdjoint, NotHermitian, QZero
from .geometry import hausdorff_from_support
from .qrange import as_q, is_unimodular, numerical_radius_a, q_radius, range_disk_union
from .reduction import build_tilde
from .schemas import (
    BoundLedger,
    CheckResult,
    ComplexMatrix,
    EllipseSpec,
    Nilpotent2Check,
    PsdContext,
    UnitaryEquivalence,
)
from .semicore import (
    a_operator_norm,
    as_matrix,
    build_context,
    classify,
    generate_a_unitary,
    is_a_selfadjoint,
    matrices_close,
    require_a_bounded,
    sharp_adjoint,
    spectral_norm,
)
from .workers import parallel_map

logger = logging.getLogger(__name__)

INDEX3_BREAKPOINT = 1.0 / np.sqrt(2.0)


def _sqrt_complement(q: complex) -> float:
    return float(np.sqrt(max(0.0, 1.0 - abs(q) ** 2)))


### Self-adjoint operators
def selfadjoint_ellipse(ctx: PsdContext, T, q) -> EllipseSpec:
    T = as_matrix(T, ctx.n)
    if not is_a_selfadjoint(ctx, T):
        raise NotASelfAdjoint("AT != T*A within tolerance")
    q = as_q(q)
    if ctx.rank == 0 or (ctx.rank == 1 and not is_unimodular(q)):
        raise EmptyRange(f"W_qA(T) is empty for rank(A) = {ctx.rank} and |q| < 1")

    M = build_tilde(ctx, T).matrix
    # T~ is Hermitian up to round-off; its spectrum is taken as real
    eigenvalues = scipy.linalg.eigvalsh((M + M.conj().T) / 2)
    lam_max, lam_min = float(eigenvalues[-1]), float(eigenvalues[0])
    width = lam_max - lam_min

    return EllipseSpec(
        focus1=q * lam_max,
        focus2=q * lam_min,
        semi_major=width / 2,
        semi_minor=_sqrt_complement(q) * width / 2,
        center=q * (lam_max + lam_min) / 2,
    )


def ellipse_distance(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> float:
    """Hausdorff distance between the sampled range and the closed-form elliptic disk."""
    ellipse = selfadjoint_ellipse(ctx, T, q)
    estimate = range_disk_union(ctx, T, q, cfg)
    return hausdorff_from_support(estimate.support, ellipse.support(estimate.angles))


### Nilpotent operators
def nilpotent2_bound(norm: float, q) -> float:
    return (1.0 + _sqrt_complement(complex(q))) / 2.0 * norm


def legacy_nilpotent2_bound(norm: float, q: float) -> float:
    """The older index-2 bound, defined for real q in [0, 1)."""
    return float(np.sqrt(1.0 - 3.0 * q**2 / 4.0 + q * np.sqrt(1.0 - q**2))) * norm


def _require_nilpotent2(ctx: PsdContext, T) -> ComplexMatrix:
    T = as_matrix(T, ctx.n)
    report = classify(ctx, T, max_index=2)
    if not report.is_a_bounded:
        raise NotABounded("T maps a null vector of A outside N(A)")
    if report.a_nilpotent_index != 2:
        raise NotANilpotent2(f"A-nilpotency index is {report.a_nilpotent_index}, expected 2")
    return T


def nilpotent2_check(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> Nilpotent2Check:
    T = _require_nilpotent2(ctx, T)
    q = as_q(q)

    support = range_disk_union(ctx, T, q, cfg).support
    top = float(np.max(support))
    variation = (top - float(np.min(support))) / top if top > np.finfo(float).eps else 0.0

    radius = q_radius(ctx, T, q, cfg)
    bound = nilpotent2_bound(a_operator_norm(ctx, T), q)
    return Nilpotent2Check(
        is_disk=variation <= ctx.tol.geo_tol,
        variation=variation,
        radius=radius,
        bound=bound,
        passed=radius <= bound + 10 * ctx.tol.opt_tol,
    )


def half_norm_check(ctx: PsdContext, T, cfg: SampleConfig | None = None) -> CheckResult:
    """For A-nilpotent T of index 2, w_A(T) equals half the A-seminorm."""
    T = _require_nilpotent2(ctx, T)

    norm = a_operator_norm(ctx, T)
    w_a = numerical_radius_a(ctx, T, cfg)
    return CheckResult.compare(
        "w_A equals half norm",
        Anchor.HALF_NORM,
        abs(w_a - norm / 2.0),
        0.0,
        ctx.tol.radius_tol * max(1.0, norm),
        detail=f"w_A {w_a:.10g}, ||T||_A / 2 = {norm / 2.0:.10g}",
    )


def assemble_square_zero(S) -> ComplexMatrix:
    S = as_matrix(S)
    zero = np.zeros_like(S)
    return np.block([[zero, S], [zero, zero]])


def squarezero_exact_radius(S, q: float) -> float:
    S = as_matrix(S)
    if not matrices_close(S, S.conj().T, ToleranceConfig().eq_tol):
        raise NotHermitian("S must be self-adjoint")
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    return nilpotent2_bound(spectral_norm(S), q)


def squarezero_cross_check(
    S,
    q: float,
    cfg: SampleConfig | None = None,
    tol: ToleranceConfig | None = None,
) -> CheckResult:
    exact = squarezero_exact_radius(S, q)
    T = assemble_square_zero(S)
    ctx = build_context(np.eye(T.shape[0]), tol)
    measured = q_radius(ctx, T, q, cfg)
    return CheckResult.compare(
        "square-zero equality",
        Anchor.SQUARE_ZERO,
        abs(measured - exact),
        0.0,
        ctx.tol.radius_tol * max(1.0, exact),
        detail=f"measured {measured:.10g}, exact {exact:.10g}",
    )


def refinement_inequality_grid(step: float = 1e-3) -> CheckResult:
    """Checks the index-2 bound never exceeds the older bound for real q in [0, 1)."""
    q = np.arange(0.0, 1.0, step)
    lhs = (1.0 + np.sqrt(1.0 - q**2)) / 2.0
    rhs = np.sqrt(1.0 - 3.0 * q**2 / 4.0 + q * np.sqrt(1.0 - q**2))
    excess = lhs - rhs
    violations = int(np.count_nonzero(excess > 1e-12))
    return CheckResult.compare(
        "refinement inequality",
        Anchor.REFINEMENT,
        float(np.max(excess)),
        0.0,
        1e-12,
        detail=f"{q.size} grid points, {violations} violations",
    )


### Index-3 block operators
def index3_bound(norm_S1: float, norm_S2: float, q) -> float:
    if norm_S1 < 0 or norm_S2 < 0:
        raise ValueError("Norms must be non-negative")
    largest = max(norm_S1, norm_S2)
    a = abs(complex(q))
    if a <= INDEX3_BREAKPOINT:
        return float(np.sqrt(2.0) * largest)
    return float((np.sqrt(2.0) + a + np.sqrt(max(0.0, 1.0 - a**2))) / 2.0 * largest)


def assemble_index3(S1, S2) -> ComplexMatrix:
    S1, S2 = as_matrix(S1), as_matrix(S2, np.shape(S1)[0])
    zero = np.zeros_like(S1)
    return np.block([[zero, S1, zero], [zero, zero, S2], [zero, zero, zero]])


def index3_block_norms(ctx: PsdContext, T, block: int) -> tuple[float, float] | None:
    """A-seminorms of S1, S2 when A = diag(A0, A0, A0) and T has the index-3 block shape.

    Returns None when A or T does not have that structure.
    """
    T = as_matrix(T, ctx.n)
    if 3 * block != ctx.n:
        return None
    k = block
    A0 = ctx.A[:k, :k]
    expected_a = scipy.linalg.block_diag(A0, A0, A0)
    S1, S2 = T[:k, k : 2 * k], T[k : 2 * k, 2 * k :]
    if not matrices_close(ctx.A, expected_a, ctx.tol.eq_tol):
        return None
    if not matrices_close(T, assemble_index3(S1, S2), ctx.tol.eq_tol):
        return None
    inner = build_context(A0, ctx.tol)
    return a_operator_norm(inner, S1), a_operator_norm(inner, S2)


### Bound ledger
def bound_ledger(
    ctx: PsdContext,
    T,
    q,
    cfg: SampleConfig | None = None,
    *,
    index3_block: int | None = None,
    max_index: int = 8,
) -> BoundLedger:
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    report = classify(ctx, T, max_index)
    norm = a_operator_norm(ctx, T)
    measured = q_radius(ctx, T, q, cfg)
    slack = 10 * ctx.tol.opt_tol * max(1.0, norm)

    ledger = BoundLedger(measured=measured, slack=slack)
    ledger.maincor_lower_i = abs(q) * numerical_radius_a(ctx, T, cfg)
    if report.is_in_B_A:
        ledger.maincor_lower_ii = abs(q) / 2.0 * norm
        ledger.maincor_upper = norm
    if report.is_a_selfadjoint:
        ledger.selfadjoint_lower = abs(q) * norm
    if report.a_nilpotent_index == 2:
        ledger.nilpotent2_upper = nilpotent2_bound(norm, q)
        if abs(q.imag) == 0.0 and 0.0 <= q.real < 1.0:
            ledger.legacy_nilpotent2_upper = legacy_nilpotent2_bound(norm, q.real)
    if index3_block is not None:
        norms = index3_block_norms(ctx, T, index3_block)
        if norms is not None:
            ledger.index3_upper = index3_bound(*norms, q)

    for name, value in ledger.lower_bounds.items():
        if value > measured + slack:
            ledger.violations.append(f"{name} = {value:.10g} exceeds measured {measured:.10g}")
    for name, value in ledger.upper_bounds.items():
        if measured > value + slack:
            ledger.violations.append(f"measured {measured:.10g} exceeds {name} = {value:.10g}")
    if ledger.nilpotent2_upper is not None and ledger.legacy_nilpotent2_upper is not None:
        if ledger.nilpotent2_upper > ledger.legacy_nilpotent2_upper + slack:
            ledger.violations.append("nilpotent2_upper exceeds legacy_nilpotent2_upper")

    if ledger.violations:
        logger.warning("Bound ledger violations: %s", "; ".join(ledger.violations))
    return ledger


### Limits and invariance
def power_limit_check(
    ctx: PsdContext,
    T,
    q,
    n_max: int = 20,
    cfg: SampleConfig | None = None,
) -> list[tuple[int, float]]:
    cfg = cfg or SampleConfig()
    q = as_q(q)
    if q == 0:
        raise QZero("The power limit needs q != 0")
    T = as_matrix(T, ctx.n)
    if not classify(ctx, T, 1).is_in_B_A:
        raise NotABounded("T must admit an A-adjoint")

    powers = [np.linalg.matrix_power(T, k) for k in range(1, n_max + 1)]

    def estimate(k: int) -> tuple[int, float]:
        return k, q_radius(ctx, powers[k - 1], q, cfg) ** (1.0 / k)

    return parallel_map(estimate, range(1, n_max + 1), cfg.workers)


def unitary_equivalence_check(
    ctx: PsdContext,
    T,
    q,
    seed: int = 0,
    cfg: SampleConfig | None = None,
    *,
    unitary: ComplexMatrix | None = None,
) -> UnitaryEquivalence:
    """Compares W_qA(T) with W_qA(UTU#) for an A-unitary U (random per seed unless given)."""
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    U = generate_a_unitary(ctx, seed) if unitary is None else as_matrix(unitary, ctx.n)
    S = U @ T @ sharp_adjoint(ctx, U)

    left = range_disk_union(ctx, T, q, cfg)
    right = range_disk_union(ctx, S, q, cfg)
    radius_diff = abs(q_radius(ctx, T, q, cfg) - q_radius(ctx, S, q, cfg))

    norm = a_operator_norm(ctx, T)
    return UnitaryEquivalence(
        radius_diff=radius_diff,
        hull_hausdorff=hausdorff_from_support(left.support, right.support),
        radius_budget=max(10 * ctx.tol.opt_tol, ctx.tol.radius_tol) * max(1.0, norm),
        hull_budget=ctx.tol.geo_tol * norm + ctx.tol.eq_tol,
    )
