"""The verification battery behind ``semirange verify``.

Each suite returns a list of ``CheckResult`` records. Checks that do not apply to the given
operator are reported as skipped with the reason, so a report always lists everything attempted.
"""

import logging
from collections.abc import Callable

import numpy as np

from .analytic import (
    INDEX3_BREAKPOINT,
    bound_ledger,
    ellipse_distance,
    half_norm_check,
    index3_bound,
    nilpotent2_check,
    power_limit_check,
    refinement_inequality_grid,
    squarezero_cross_check,
    unitary_equivalence_check,
)
from .anchors import Anchor
from .configs import SampleConfig
from .errors import EmptyRange, RankTooSmall
from .geometry import hausdorff_from_support, outside_slack, support_of_points
from .qrange import (
    as_q,
    complete_pair,
    numerical_range_a,
    oracle_pair_samples,
    oracle_radius,
    q_radius,
    range_disk_union,
    verify_inclusions,
)
from .reduction import build_tilde, lift, tilde_consistency_check, tilde_is_hermitian, tilde_nilpotent_index
from .schemas import (
    BoundLedger,
    CheckResult,
    CheckStatus,
    ClassificationReport,
    PsdContext,
    Suite,
    VerificationReport,
)
from .semicore import (
    a_norm,
    a_operator_norm,
    a_operator_norm_defining,
    classify,
    coordinate_compression,
    is_a_selfadjoint,
    require_a_bounded,
    semi_inner,
    sharp_adjoint,
    spectral_norm,
)
from .spectra import a_point_spectrum, a_spectral_radius, a_spectrum, cluster_values, in_a_spectrum
from .workers import parallel_map

logger = logging.getLogger(__name__)

SuiteRunner = Callable[["_Subject"], list[CheckResult]]

# Fixed reference instance for the square-zero equality
_SQUARE_ZERO_S = np.diag([2.0, -1.0])
_SQUARE_ZERO_Q = 0.8

# Pair samples behind the range checks
_PAIR_SAMPLES = 20_000


class _Subject:
    """The operator under test with the values several suites share."""

    def __init__(self, ctx: PsdContext, T, q, cfg: SampleConfig, max_index: int):
        self.ctx = ctx
        self.T = require_a_bounded(ctx, T)
        self.q = as_q(q)
        self.cfg = cfg
        self.max_index = max_index
        self.report: ClassificationReport = classify(ctx, self.T, max_index)
        self.tilde = build_tilde(ctx, self.T)
        self.norm = self.tilde.norm

    @property
    def conditioning(self) -> float:
        """lambda_1 / lambda_r of the retained part of A."""
        if self.ctx.rank == 0:
            return 1.0
        return float(self.ctx.retained[0] / self.ctx.retained[-1])

    @property
    def spectral_tolerance(self) -> float:
        """Matching radius for eigenvalues, loosened for defective (nilpotent) spectra."""
        index = self.report.a_nilpotent_index or 1
        return max(np.sqrt(self.ctx.tol.eq_tol), 10 * np.finfo(float).eps ** (1.0 / index)) * (1.0 + self.norm)


def _set_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Hausdorff distance between two finite point sets in the plane."""
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return float("inf")
    gaps = np.abs(a[:, None] - b[None, :])
    return float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max()))


### Reduction suite
def _reduction_checks(subject: _Subject) -> list[CheckResult]:
    ctx, T, tilde = subject.ctx, subject.T, subject.tilde
    eq_tol = ctx.tol.eq_tol
    checks: list[CheckResult] = []

    residual = max(
        spectral_norm(ctx.A_pinv @ ctx.A - ctx.P),
        spectral_norm(ctx.A_half_pinv @ ctx.A_half - ctx.P),
        spectral_norm(ctx.A @ ctx.P - ctx.A) / max(1.0, ctx.norm_A),
    )
    checks.append(
        CheckResult.compare(
            "pseudo-inverse identities",
            Anchor.PSEUDO_INVERSE,
            residual,
            0.0,
            eq_tol * max(1.0, subject.conditioning),
            detail=f"rank {ctx.rank} of {ctx.n}",
        )
    )

    checks.append(
        CheckResult.compare(
            "intertwining residual",
            Anchor.INTERTWINING,
            tilde_consistency_check(ctx, T, seed=subject.cfg.seed),
            0.0,
            eq_tol * max(1.0, subject.conditioning),
        )
    )

    seminorm, defining = a_operator_norm(ctx, T), a_operator_norm_defining(ctx, T)
    checks.append(
        CheckResult.compare(
            "seminorm by both routes",
            Anchor.NORM_REDUCTION,
            abs(seminorm - defining),
            0.0,
            10 * eq_tol * max(1.0, seminorm),
            detail=f"{seminorm:.12g} vs {defining:.12g}",
        )
    )

    square = coordinate_compression(ctx, T @ T)
    product = tilde.matrix @ tilde.matrix
    checks.append(
        CheckResult.compare(
            "reduced operator is multiplicative",
            Anchor.MULTIPLICATIVE,
            spectral_norm(square - product),
            0.0,
            eq_tol * max(1.0, subject.norm) ** 2 * max(1.0, subject.conditioning),
        )
    )

    selfadjoint, hermitian = is_a_selfadjoint(ctx, T), tilde_is_hermitian(tilde, eq_tol)
    checks.append(
        CheckResult.compare(
            "self-adjointness equivalence",
            Anchor.SELFADJOINT_REDUCTION,
            float(selfadjoint != hermitian),
            0.0,
            0.0,
            detail=f"A-self-adjoint {selfadjoint}, reduced Hermitian {hermitian}",
        )
    )

    point, full = a_point_spectrum(ctx, T), a_spectrum(ctx, T)
    checks.append(
        CheckResult.compare(
            "point spectrum by compression",
            Anchor.POINT_SPECTRUM,
            _set_distance(point, full),
            0.0,
            subject.spectral_tolerance,
            detail=f"{point.size} eigenvalues",
        )
    )

    a_index = subject.report.a_nilpotent_index
    reduced_index = tilde_nilpotent_index(tilde, eq_tol, subject.max_index)
    checks.append(
        CheckResult.compare(
            "nilpotency equivalence",
            Anchor.NILPOTENT_REDUCTION,
            float(a_index != reduced_index),
            0.0,
            0.0,
            detail=f"A-index {a_index}, reduced index {reduced_index}",
        )
    )

    if subject.report.is_in_B_A:
        rng = np.random.default_rng(subject.cfg.seed)
        X = rng.standard_normal((ctx.n, 16)) + 1j * rng.standard_normal((ctx.n, 16))
        Y = rng.standard_normal((ctx.n, 16)) + 1j * rng.standard_normal((ctx.n, 16))
        T_sharp = sharp_adjoint(ctx, T)
        left = np.einsum("ij,ij->j", Y.conj(), ctx.A @ (T @ X))
        right = np.einsum("ij,ij->j", (T_sharp @ Y).conj(), ctx.A @ X)
        scale = ctx.norm_A * spectral_norm(T) * np.linalg.norm(X, axis=0) * np.linalg.norm(Y, axis=0)
        gap = float(np.max(np.abs(left - right) / np.maximum(scale, np.finfo(float).tiny)))
        checks.append(
            CheckResult.compare(
                "A-adjoint identity", Anchor.SHARP_ADJOINT, gap, 0.0, eq_tol * max(1.0, subject.conditioning)
            )
        )
    else:
        checks.append(CheckResult.skipped("A-adjoint identity", Anchor.SHARP_ADJOINT, "T has no A-adjoint"))
    return checks


### Spectral suite
def _nilpotent_spectrum_check(subject: _Subject) -> CheckResult:
    if subject.report.a_nilpotent_index is None:
        return CheckResult.skipped("nilpotent spectrum", Anchor.NILPOTENT_SPECTRUM, "T is not A-nilpotent")
    spectrum = a_spectrum(subject.ctx, subject.T)
    largest = float(np.max(np.abs(spectrum))) if spectrum.size else 0.0
    return CheckResult.compare(
        "nilpotent spectrum", Anchor.NILPOTENT_SPECTRUM, largest, 0.0, subject.spectral_tolerance
    )


def _is_diagonalizable(matrix: np.ndarray, eq_tol: float) -> bool:
    """True when the eigenvector matrix is invertible with condition number below 1/sqrt(eq_tol)."""
    if matrix.size == 0:
        return True
    _, vecs = np.linalg.eig(matrix)
    singular = np.linalg.svd(vecs, compute_uv=False)
    return bool(singular[0] * np.sqrt(eq_tol) <= singular[-1])


def _power_limit_checks(subject: _Subject) -> list[CheckResult]:
    ctx, q = subject.ctx, subject.q
    name = "power limit"
    if q == 0:
        return [CheckResult.skipped(name, Anchor.POWER_LIMIT, "q = 0")]
    if not subject.report.is_in_B_A:
        return [CheckResult.skipped(name, Anchor.POWER_LIMIT, "T has no A-adjoint")]
    try:
        estimates = power_limit_check(ctx, subject.T, q, cfg=subject.cfg)
    except (EmptyRange, RankTooSmall) as e:
        return [CheckResult.skipped(name, Anchor.POWER_LIMIT, str(e))]

    radius = a_spectral_radius(ctx, subject.T, n_max=len(estimates))
    exact = radius.radius_exact
    norms = dict(radius.radius_limit_estimates)
    slack = 10 * ctx.tol.opt_tol * max(1.0, subject.norm)
    # w_qA(T^n)^(1/n) lies between (|q|/2)^(1/n) r_A(T) and ||T^n||_A^(1/n)
    worst = max(
        max((abs(q) / 2.0) ** (1.0 / k) * exact - value, value - norms[k]) for k, value in estimates
    )
    checks = [
        CheckResult.compare(
            "power limit bracket",
            Anchor.POWER_LIMIT,
            worst,
            0.0,
            slack,
            detail=f"{len(estimates)} powers",
        )
    ]

    last_k, last = estimates[-1]
    budget = ctx.tol.geo_tol * (1.0 + exact)
    # |q| r_A(T)^n <= |q| w_A(T^n) <= w_qA(T^n) <= ||T^n||_A
    spread = max(exact - abs(q) ** (1.0 / last_k) * exact, norms[last_k] - exact)
    if not _is_diagonalizable(subject.tilde.matrix, ctx.tol.eq_tol):
        checks.append(CheckResult.skipped(name, Anchor.POWER_LIMIT, "reduced operator is not diagonalizable"))
    elif spread > budget:
        checks.append(
            CheckResult.skipped(
                name,
                Anchor.POWER_LIMIT,
                f"at n = {last_k} the powers only pin the limit to within {spread:.3g} "
                f"(tolerance {budget:.3g}); more powers are needed",
            )
        )
    else:
        checks.append(
            CheckResult.compare(
                name,
                Anchor.POWER_LIMIT,
                abs(last - exact),
                0.0,
                budget,
                detail=f"n = {last_k}: {last:.8g} vs r_A = {exact:.8g}",
            )
        )
    return checks


def _pair_checks(subject: _Subject) -> list[CheckResult]:
    ctx, T, q, cfg = subject.ctx, subject.T, subject.q, subject.cfg
    labels = (
        ("disk union against pair samples", Anchor.DISK_UNION),
        ("pair values inside the range", Anchor.PAIR_FORM),
        ("radius from pairs", Anchor.PAIR_RADIUS),
    )
    if ctx.rank < 2:
        return [CheckResult.skipped(label, anchor, f"rank(A) = {ctx.rank} < 2") for label, anchor in labels]

    estimate = range_disk_union(ctx, T, q, cfg)
    samples = oracle_pair_samples(ctx, T, q, _PAIR_SAMPLES, seed=cfg.seed)
    geo = ctx.tol.geo_tol * subject.norm + ctx.tol.eq_tol
    checks: list[CheckResult] = []

    if ctx.rank >= 3:
        distance = hausdorff_from_support(estimate.support, support_of_points(samples.values, estimate.angles))
        checks.append(
            CheckResult.compare(
                "disk union against pair samples",
                Anchor.DISK_UNION,
                distance,
                0.0,
                geo,
                detail=f"{len(samples)} pairs, {estimate.centers.size} disks",
            )
        )
    else:
        checks.append(
            CheckResult.skipped(
                "disk union against pair samples", Anchor.DISK_UNION, "rank(A) = 2 leaves one partner line per x"
            )
        )

    checks.append(
        CheckResult.compare(
            "pair values inside the range",
            Anchor.PAIR_FORM,
            outside_slack(samples.values, estimate.support, estimate.angles),
            0.0,
            geo,
        )
    )

    value, sampled = q_radius(ctx, T, q, cfg), oracle_radius(samples, q)
    checks.append(
        CheckResult.compare(
            "radius from pairs",
            Anchor.PAIR_RADIUS,
            abs(value - sampled),
            0.0,
            geo,
            detail=f"optimiser {value:.8g}, pairs {sampled:.8g}",
        )
    )
    return checks


def _completion_check(subject: _Subject) -> CheckResult:
    ctx, q = subject.ctx, subject.q
    if ctx.rank < 2:
        return CheckResult.skipped("pair completion", Anchor.PAIR_COMPLETION, f"rank(A) = {ctx.rank} < 2")
    rng = np.random.default_rng(subject.cfg.seed)
    u = rng.standard_normal(ctx.rank) + 1j * rng.standard_normal(ctx.rank)
    x = lift(ctx, u / np.linalg.norm(u))
    y, z = complete_pair(ctx, x, q, seed=subject.cfg.seed)
    residual = max(
        abs(a_norm(ctx, z) - 1.0),
        abs(a_norm(ctx, y) - 1.0),
        abs(semi_inner(ctx, x, z)),
        abs(semi_inner(ctx, x, y) - q),
    )
    return CheckResult.compare(
        "pair completion", Anchor.PAIR_COMPLETION, residual, 0.0, ctx.tol.eq_tol * max(1.0, subject.conditioning)
    )


def _collapse_check(subject: _Subject) -> CheckResult:
    ctx, q, cfg = subject.ctx, subject.q, subject.cfg
    if ctx.rank == 0:
        return CheckResult.skipped("unimodular collapse", Anchor.UNIMODULAR_COLLAPSE, "rank(A) = 0")
    unit = q / abs(q) if q != 0 else 1j
    collapsed = range_disk_union(ctx, subject.T, unit, cfg)
    w_a = numerical_range_a(ctx, subject.T, cfg)
    rotated = support_of_points(unit * w_a.centers, collapsed.angles)
    return CheckResult.compare(
        "unimodular collapse",
        Anchor.UNIMODULAR_COLLAPSE,
        hausdorff_from_support(collapsed.support, rotated),
        0.0,
        ctx.tol.geo_tol * subject.norm + ctx.tol.eq_tol,
        detail=f"q = {unit:.4g}",
    )


def _spectral_checks(subject: _Subject) -> list[CheckResult]:
    ctx, T, q, cfg = subject.ctx, subject.T, subject.q, subject.cfg
    checks: list[CheckResult] = []

    try:
        checks.extend(verify_inclusions(ctx, T, q, cfg))
    except EmptyRange as e:
        for label, anchor in (
            ("spectral inclusion", Anchor.SPECTRAL_INCLUSION),
            ("q W_A inclusion", Anchor.RANGE_INCLUSION),
            ("reduced range equality", Anchor.REDUCED_RANGE),
        ):
            checks.append(CheckResult.skipped(label, anchor, str(e)))

    radius = a_spectral_radius(ctx, T)
    infimum = min(value for _, value in radius.radius_limit_estimates)
    checks.append(
        CheckResult.compare(
            "spectral radius formula",
            Anchor.SPECTRAL_RADIUS,
            radius.radius_exact,
            infimum,
            ctx.tol.eq_tol * (1.0 + subject.norm) + subject.spectral_tolerance,
            detail=f"r_A {radius.radius_exact:.8g}, "
            f"||T^n||_A^(1/n) at n = {radius.radius_limit_estimates[-1][0]}: "
            f"{radius.radius_limit_estimates[-1][1]:.8g}",
        )
    )

    eigenvalues = cluster_values(a_spectrum(ctx, T), subject.spectral_tolerance)
    outside = subject.norm + 1.0
    misses = sum(not in_a_spectrum(ctx, T, value) for value in eigenvalues)
    misses += int(in_a_spectrum(ctx, T, outside))
    checks.append(
        CheckResult.compare(
            "A-invertibility test at eigenvalues",
            Anchor.A_INVERTIBILITY,
            float(misses),
            0.0,
            0.0,
            detail=f"{eigenvalues.size} eigenvalues and one resolvent point",
        )
    )

    try:
        equivalence = unitary_equivalence_check(ctx, T, q, seed=cfg.seed, cfg=cfg)
        checks.append(
            CheckResult.compare(
                "A-unitary radius invariance",
                Anchor.UNITARY_INVARIANCE,
                equivalence.radius_diff,
                0.0,
                equivalence.radius_budget,
            )
        )
        checks.append(
            CheckResult.compare(
                "A-unitary range invariance",
                Anchor.UNITARY_INVARIANCE,
                equivalence.hull_hausdorff,
                0.0,
                equivalence.hull_budget,
            )
        )
    except (EmptyRange, RankTooSmall) as e:
        checks.append(CheckResult.skipped("A-unitary invariance", Anchor.UNITARY_INVARIANCE, str(e)))

    if subject.report.is_a_selfadjoint:
        try:
            hermitian = (subject.tilde.matrix + subject.tilde.matrix.conj().T) / 2
            eigenvalues = np.linalg.eigvalsh(hermitian) if ctx.rank else np.zeros(1)
            span = abs(eigenvalues[0]) + abs(eigenvalues[-1])
            checks.append(
                CheckResult.compare(
                    "elliptic disk",
                    Anchor.ELLIPSE,
                    ellipse_distance(ctx, T, q, cfg),
                    0.0,
                    ctx.tol.geo_tol * (span + 1.0),
                )
            )
        except EmptyRange as e:
            checks.append(CheckResult.skipped("elliptic disk", Anchor.ELLIPSE, str(e)))
    else:
        checks.append(CheckResult.skipped("elliptic disk", Anchor.ELLIPSE, "T is not A-self-adjoint"))

    if ctx.rank >= 2:
        support = range_disk_union(ctx, T, 0.0, cfg).support
        top = float(np.max(support))
        # Absolute floor covers operators whose W_0A is a single point
        floor = np.sqrt(ctx.tol.eq_tol) * (1.0 + subject.norm)
        checks.append(
            CheckResult.compare(
                "W_0A is a centred disk",
                Anchor.CIRCULAR_Q0,
                top - float(np.min(support)),
                0.0,
                ctx.tol.geo_tol * top + floor,
                detail=f"support between {float(np.min(support)):.6g} and {top:.6g}",
            )
        )
    else:
        checks.append(
            CheckResult.skipped("W_0A is a centred disk", Anchor.CIRCULAR_Q0, f"rank(A) = {ctx.rank} < 2")
        )

    checks.extend(_pair_checks(subject))
    checks.append(_completion_check(subject))
    checks.append(_collapse_check(subject))
    checks.extend(_power_limit_checks(subject))
    checks.append(_nilpotent_spectrum_check(subject))
    return checks


### Bounds suite
_LEDGER_ANCHORS: dict[str, tuple[str, Anchor]] = {
    "maincor_lower_i": ("|q| w_A lower bound", Anchor.WA_LOWER),
    "maincor_lower_ii": ("|q|/2 norm lower bound", Anchor.BOUND_CHAIN),
    "maincor_upper": ("norm upper bound", Anchor.BOUND_CHAIN),
    "selfadjoint_lower": ("self-adjoint lower bound", Anchor.SELFADJOINT_LOWER),
    "nilpotent2_upper": ("index-2 upper bound", Anchor.NILPOTENT2_BOUND),
    "legacy_nilpotent2_upper": ("older index-2 upper bound", Anchor.NILPOTENT2_BOUND),
    "index3_upper": ("index-3 upper bound", Anchor.INDEX3),
}

_LEDGER_SKIP_REASONS: dict[str, str] = {
    "maincor_lower_i": "w_A unavailable",
    "maincor_lower_ii": "T has no A-adjoint",
    "maincor_upper": "T has no A-adjoint",
    "selfadjoint_lower": "T is not A-self-adjoint",
    "nilpotent2_upper": "T is not A-nilpotent of index 2",
    "legacy_nilpotent2_upper": "needs A-nilpotency index 2 and real q in [0, 1)",
    "index3_upper": "T is not an index-3 block operator over diag(A0, A0, A0)",
}


def _ledger_checks(ledger: BoundLedger) -> list[CheckResult]:
    checks: list[CheckResult] = []
    lower, upper = ledger.lower_bounds, ledger.upper_bounds
    for key, (name, anchor) in _LEDGER_ANCHORS.items():
        if key in lower:
            checks.append(CheckResult.compare(name, anchor, lower[key], ledger.measured, ledger.slack))
        elif key in upper:
            checks.append(CheckResult.compare(name, anchor, ledger.measured, upper[key], ledger.slack))
        else:
            checks.append(CheckResult.skipped(name, anchor, _LEDGER_SKIP_REASONS[key]))

    if ledger.nilpotent2_upper is not None and ledger.legacy_nilpotent2_upper is not None:
        checks.append(
            CheckResult.compare(
                "index-2 bound refines the older bound",
                Anchor.REFINEMENT,
                ledger.nilpotent2_upper,
                ledger.legacy_nilpotent2_upper,
                ledger.slack,
            )
        )
    return checks


def _index3_constant_checks() -> list[CheckResult]:
    below = (2.0 * np.sqrt(2.0)) / 2.0
    above = (np.sqrt(2.0) + INDEX3_BREAKPOINT + np.sqrt(1.0 - INDEX3_BREAKPOINT**2)) / 2.0
    at_one = index3_bound(1.0, 1.0, 1.0)
    return [
        CheckResult.compare(
            "index-3 bound continuity",
            Anchor.INDEX3_CONTINUITY,
            abs(below - above),
            0.0,
            1e-12,
            detail=f"branches meet at {below:.15g} and {above:.15g}",
        ),
        CheckResult.compare(
            "index-3 bound at q = 1",
            Anchor.INDEX3,
            abs(at_one - (1.0 + np.sqrt(2.0)) / 2.0),
            0.0,
            1e-12,
        ),
    ]


def _bounds_checks(subject: _Subject) -> list[CheckResult]:
    ctx, cfg = subject.ctx, subject.cfg
    checks: list[CheckResult] = []
    block = ctx.n // 3 if ctx.n and ctx.n % 3 == 0 else None
    try:
        ledger = bound_ledger(ctx, subject.T, subject.q, cfg, index3_block=block, max_index=subject.max_index)
        checks.extend(_ledger_checks(ledger))
    except (EmptyRange, RankTooSmall) as e:
        for name, anchor in _LEDGER_ANCHORS.values():
            checks.append(CheckResult.skipped(name, anchor, str(e)))

    checks.append(refinement_inequality_grid())
    checks.extend(_index3_constant_checks())
    checks.append(squarezero_cross_check(_SQUARE_ZERO_S, _SQUARE_ZERO_Q, cfg, ctx.tol))
    return checks


### Nilpotent suite
def _nilpotent_checks(subject: _Subject) -> list[CheckResult]:
    ctx, T, report = subject.ctx, subject.T, subject.report
    index = report.a_nilpotent_index
    checks: list[CheckResult] = []

    if index == 2:
        try:
            check = nilpotent2_check(ctx, T, subject.q, subject.cfg)
            checks.append(
                CheckResult.compare(
                    "index-2 range is a centred disk",
                    Anchor.NILPOTENT2_DISK,
                    check.variation,
                    0.0,
                    ctx.tol.geo_tol,
                )
            )
            checks.append(
                CheckResult.compare(
                    "index-2 radius bound",
                    Anchor.NILPOTENT2_BOUND,
                    check.radius,
                    check.bound,
                    10 * ctx.tol.opt_tol * max(1.0, subject.norm),
                )
            )
        except (EmptyRange, RankTooSmall) as e:
            checks.append(CheckResult.skipped("index-2 range is a centred disk", Anchor.NILPOTENT2_DISK, str(e)))
            checks.append(CheckResult.skipped("index-2 radius bound", Anchor.NILPOTENT2_BOUND, str(e)))
        checks.append(half_norm_check(ctx, T, subject.cfg))
    else:
        reason = f"A-nilpotency index is {index}, not 2"
        checks.append(CheckResult.skipped("index-2 range is a centred disk", Anchor.NILPOTENT2_DISK, reason))
        checks.append(CheckResult.skipped("index-2 radius bound", Anchor.NILPOTENT2_BOUND, reason))
        checks.append(CheckResult.skipped("w_A equals half norm", Anchor.HALF_NORM, reason))

    if index is None:
        checks.append(CheckResult.skipped("A-adjoint shares the index", Anchor.SHARP_NILPOTENT, "T is not A-nilpotent"))
    elif not report.is_in_B_A:
        checks.append(CheckResult.skipped("A-adjoint shares the index", Anchor.SHARP_NILPOTENT, "T has no A-adjoint"))
    else:
        sharp_index = classify(ctx, sharp_adjoint(ctx, T), subject.max_index).a_nilpotent_index
        checks.append(
            CheckResult.compare(
                "A-adjoint shares the index",
                Anchor.SHARP_NILPOTENT,
                float(sharp_index != index),
                0.0,
                0.0,
                detail=f"T: {index}, T#: {sharp_index}",
            )
        )

    if index is None:
        checks.append(
            CheckResult.skipped("reduced operator shares the index", Anchor.NILPOTENT_REDUCTION, "T is not A-nilpotent")
        )
    else:
        reduced = tilde_nilpotent_index(subject.tilde, ctx.tol.eq_tol, subject.max_index)
        checks.append(
            CheckResult.compare(
                "reduced operator shares the index",
                Anchor.NILPOTENT_REDUCTION,
                float(reduced != index),
                0.0,
                0.0,
                detail=f"T: {index}, reduced: {reduced}",
            )
        )

    checks.append(_nilpotent_spectrum_check(subject))
    return checks


SUITES: dict[Suite, SuiteRunner] = {
    Suite.REDUCTION: _reduction_checks,
    Suite.SPECTRAL: _spectral_checks,
    Suite.BOUNDS: _bounds_checks,
    Suite.NILPOTENT: _nilpotent_checks,
}


def run_suite(
    ctx: PsdContext,
    T,
    q,
    suite: Suite | str = Suite.ALL,
    cfg: SampleConfig | None = None,
    *,
    max_index: int = 8,
) -> VerificationReport:
    """Runs one suite (or all of them) against T and collects the results.

    Raises:
        ValueError: Unknown suite name.
        NotABounded: T does not map N(A) into N(A).
    """
    suite = Suite(suite)
    cfg = cfg or SampleConfig()
    subject = _Subject(ctx, T, q, cfg, max_index)

    selected = list(SUITES) if suite == Suite.ALL else [suite]
    results = parallel_map(lambda name: SUITES[name](subject), selected, cfg.workers)

    report = VerificationReport(suite=str(suite))
    seen: set[tuple[str, str]] = set()
    for checks in results:
        for check in checks:
            # Suites share a few checks; keep the first occurrence
            key = (check.name, check.anchor)
            if key not in seen:
                seen.add(key)
                report.checks.append(check)

    logger.info(
        "Suite %s finished: %d checks, %d failed, %d skipped",
        suite,
        len(report.checks),
        len(report.failures),
        sum(c.status == CheckStatus.SKIPPED for c in report.checks),
    )
    return report

