"""A-q-numerical ranges and radii.

The range is built as a union of closed disks ``G(x)`` centred at ``q<Tx,x>_A`` with radius
``sqrt(1-|q|^2) alpha(x)``. Unit A-seminorm vectors are parameterised by unit coordinates ``u`` on
the sphere of R(A^{1/2}) through ``x = V L^{-1/2} u``; all values are then evaluated with the
semi-inner product on H.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .anchors import Anchor
from .configs import SampleConfig
from .errors import EmptyRange, NotUnitANorm, RankTooSmall
from .geometry import angle_grid, hausdorff_from_support, monotone_chain, outside_slack, supporting_points
from .reduction import build_tilde, lift
from .schemas import (
    CheckResult,
    ComplexMatrix,
    ComplexVector,
    PairSampleBatch,
    PsdContext,
    QRadius,
    RangeEstimate,
    RangeMethod,
)
from .semicore import (
    a_norm,
    as_vector,
    build_context,
    coordinate_compression,
    require_a_bounded,
    semi_inner,
    semi_inner_columns,
)

logger = logging.getLogger(__name__)

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
_COARSE_STEPS = 12
_Q_SLACK = 1e-12
_ORACLE_ROUNDS = 3
_ORACLE_DIRECTIONS = 120
_ORACLE_SPREAD = 0.4

Objective = Callable[[np.ndarray], np.ndarray]


### Parameter helpers
def as_q(q) -> complex:
    q = complex(q)
    if not np.isfinite(q.real) or not np.isfinite(q.imag):
        raise ValueError("q must be finite")
    if abs(q) > 1.0 + _Q_SLACK:
        raise ValueError(f"|q| must not exceed 1, got {abs(q):.6g}")
    if abs(q) > 1.0:
        q = q / abs(q)
    return q


def is_unimodular(q: complex) -> bool:
    return abs(q) >= 1.0 - _Q_SLACK


def _radius_factor(q: complex) -> float:
    return 0.0 if is_unimodular(q) else float(np.sqrt(max(0.0, 1.0 - abs(q) ** 2)))


def _unit_tolerance(ctx: PsdContext) -> float:
    return float(np.sqrt(ctx.tol.eq_tol))


def _random_unit_rows(rng: np.random.Generator, count: int, r: int) -> np.ndarray:
    # One draw per row keeps a shorter run a prefix of a longer one.
    G = rng.standard_normal((count, 2 * r))
    U = G[:, :r] + 1j * G[:, r:]
    return U / np.linalg.norm(U, axis=1, keepdims=True)


### Quadratic form evaluation
@dataclass(frozen=True, eq=False)
class _Form:
    """Evaluates ``<Tx,x>_A`` and ``alpha(x)`` for batches of coordinate rows (..., r)."""

    lift_t: np.ndarray
    t_t: np.ndarray
    a_t: np.ndarray

    @classmethod
    def build(cls, ctx: PsdContext, T: ComplexMatrix) -> "_Form":
        return cls(lift_t=ctx.lift_map.T, t_t=T.T, a_t=ctx.A.T)

    def terms(self, U: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        X = U @ self.lift_t
        TX = X @ self.t_t
        ATX = TX @ self.a_t
        s = np.sum(X.conj() * ATX, axis=-1)
        m = np.maximum(np.sum(TX.conj() * ATX, axis=-1).real, 0.0)
        alpha = np.sqrt(np.maximum(m - np.abs(s) ** 2, 0.0))
        return s, alpha, ATX

    def radius_objective(self, q: complex) -> Objective:
        c = _radius_factor(q)

        def objective(U: np.ndarray) -> np.ndarray:
            s, alpha, _ = self.terms(U)
            return abs(q) * np.abs(s) + c * alpha

        return objective

    def support_objective(self, q: complex, thetas: np.ndarray) -> Objective:
        c = _radius_factor(q)
        rotation = (np.exp(-1j * thetas) * q)[:, None]

        def objective(U: np.ndarray) -> np.ndarray:
            s, alpha, _ = self.terms(U)
            return np.real(rotation * s) + c * alpha

        return objective


### Derivative-free search on the coordinate sphere
def _great_circle(U: np.ndarray, D: np.ndarray, t: np.ndarray) -> np.ndarray:
    return U[:, None, :] * np.cos(t)[..., None] + D[:, None, :] * np.sin(t)[..., None]


def _line_search(objective: Objective, U: np.ndarray, D: np.ndarray, line_iters: int):
    """Best step along each great circle: coarse scan, then golden-section refinement."""
    B = U.shape[0]
    rows = np.arange(B)
    coarse = np.linspace(-np.pi, np.pi, _COARSE_STEPS, endpoint=False)
    half_width = 2.0 * np.pi / _COARSE_STEPS

    scan = objective(_great_circle(U, D, np.broadcast_to(coarse, (B, _COARSE_STEPS))))
    k = np.argmax(scan, axis=1)
    best_t, best_v = coarse[k], scan[rows, k]

    def at(t: np.ndarray) -> np.ndarray:
        return objective(_great_circle(U, D, t[:, None]))[:, 0]

    a, b = best_t - half_width, best_t + half_width
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = at(c), at(d)
    for _ in range(line_iters):
        left = fc > fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - _GOLDEN * (b - a), d)
        new_d = np.where(left, c, a + _GOLDEN * (b - a))
        trial = at(np.where(left, new_c, new_d))
        fc, fd = np.where(left, trial, fd), np.where(left, fc, trial)
        c, d = new_c, new_d

    mid = (a + b) / 2.0
    f_mid = at(mid)
    better = f_mid > best_v
    return np.where(better, mid, best_t), np.where(better, f_mid, best_v)


def sphere_ascent(
    objective: Objective,
    U0: np.ndarray,
    *,
    max_sweeps: int,
    line_iters: int,
    opt_tol: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Maximises ``objective`` row-wise over unit vectors by coordinate-wise great-circle searches.

    Each sweep draws a fresh orthonormal frame of the real tangent directions and performs one
    line search per direction. All rows advance in lockstep; a row only moves when it improves.
    Stops when no row improved by more than ``opt_tol`` (relative) during a sweep.
    """
    U = U0 / np.linalg.norm(U0, axis=1, keepdims=True)
    B, r = U.shape
    f = objective(U[:, None, :])[:, 0]

    for sweep in range(max_sweeps):
        f_before = f.copy()
        frame = np.linalg.qr(rng.standard_normal((2 * r, 2 * r)))[0]
        for j in range(2 * r):
            direction = frame[:r, j] + 1j * frame[r:, j]
            D = direction[None, :] - np.real(U.conj() @ direction)[:, None] * U
            norms = np.linalg.norm(D, axis=1)
            active = norms > 1e-12
            D = np.where(active[:, None], D / np.where(active, norms, 1.0)[:, None], 0.0)

            t, values = _line_search(objective, U, D, line_iters)
            move = active & (values > f)
            if np.any(move):
                stepped = U * np.cos(t)[:, None] + D * np.sin(t)[:, None]
                stepped /= np.linalg.norm(stepped, axis=1, keepdims=True)
                U = np.where(move[:, None], stepped, U)
                f = np.where(move, values, f)

        gain = f - f_before
        if np.all(gain <= opt_tol * np.maximum(1.0, np.abs(f))):
            logger.debug("Sphere ascent converged after %d sweeps (batch of %d)", sweep + 1, B)
            break
    return U, f


### Disk union
def _eigen_seeds(tilde: np.ndarray, q: complex, angles: np.ndarray) -> np.ndarray:
    """Top eigenvectors of the Hermitian parts of exp(-i theta) q^ T~ for each grid angle."""
    direction = q / abs(q) if abs(q) > 0 else 1.0
    rot = (np.exp(-1j * angles) * direction)[:, None, None]
    H = rot * tilde[None, :, :]
    H = (H + np.conj(np.swapaxes(H, 1, 2))) / 2.0
    _, vecs = np.linalg.eigh(H)
    return vecs[:, :, -1]


@dataclass(frozen=True, eq=False)
class _Union:
    coords: np.ndarray
    centers: np.ndarray
    radii: np.ndarray
    method: RangeMethod


def _pair_radii(form: _Form, U: np.ndarray, q: complex) -> np.ndarray:
    """Radii from explicit A-orthonormal partners z when R(A^{1/2}) is two-dimensional."""
    W = np.stack([-U[:, 1].conj(), U[:, 0].conj()], axis=1)
    _, _, ATX = form.terms(U)
    Z = W @ form.lift_t
    return _radius_factor(q) * np.abs(np.sum(Z.conj() * ATX, axis=-1))


def _disk_data(form: _Form, U: np.ndarray, q: complex, method: RangeMethod):
    s, alpha, _ = form.terms(U)
    if method == RangeMethod.PAIR_SAMPLING:
        radii = _pair_radii(form, U, q)
    else:
        radii = _radius_factor(q) * alpha
    return q * s, radii


def _method_for(ctx: PsdContext, q: complex) -> RangeMethod:
    if ctx.rank == 0:
        return RangeMethod.EMPTY
    if is_unimodular(q):
        return RangeMethod.Q_COLLAPSE
    if ctx.rank == 1:
        return RangeMethod.EMPTY
    if ctx.rank == 2:
        return RangeMethod.PAIR_SAMPLING
    return RangeMethod.DISK_UNION


def _build_union(ctx: PsdContext, T: ComplexMatrix, q: complex, cfg: SampleConfig) -> _Union:
    method = _method_for(ctx, q)
    if method == RangeMethod.EMPTY:
        raise EmptyRange(
            f"W_qA(T) is empty: rank(A) = {ctx.rank} admits no unit x, y with <x,y>_A = q for |q| < 1"
        )
    if method == RangeMethod.PAIR_SAMPLING:
        logger.warning("rank(A) = 2: falling back to explicit (x, z) pair sampling")

    sample_seq, refine_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    form = _Form.build(ctx, T)
    angles = angle_grid(cfg.n_angles)

    U = np.concatenate(
        [
            _random_unit_rows(np.random.default_rng(sample_seq), cfg.n_x, ctx.rank),
            _eigen_seeds(coordinate_compression(ctx, T), q, angles),
        ]
    )
    centers, radii = _disk_data(form, U, q, method)

    if cfg.refine_sweeps > 0:
        support_values = (
            np.outer(centers.real, np.cos(angles)) + np.outer(centers.imag, np.sin(angles)) + radii[:, None]
        )
        starts = U[np.argmax(support_values, axis=0)]
        refined, _ = sphere_ascent(
            form.support_objective(q, angles),
            starts,
            max_sweeps=cfg.refine_sweeps,
            line_iters=cfg.line_iters,
            opt_tol=0.0,
            rng=np.random.default_rng(refine_seq),
        )
        refined_centers, refined_radii = _disk_data(form, refined, q, method)
        U = np.concatenate([U, refined])
        centers = np.concatenate([centers, refined_centers])
        radii = np.concatenate([radii, refined_radii])

    return _Union(coords=U, centers=centers, radii=radii, method=method)


def _estimate_from_union(union: _Union, q: complex, n_angles: int) -> RangeEstimate:
    angles = angle_grid(n_angles)
    support, boundary = supporting_points(union.centers, union.radii, angles)
    hull = monotone_chain(boundary)
    radius_est = float(np.max(np.abs(union.centers) + union.radii))
    return RangeEstimate(
        q=q,
        centers=union.centers,
        radii=union.radii,
        angles=angles,
        support=support,
        boundary=boundary,
        hull=hull,
        radius_est=radius_est,
        method=union.method,
    )


def range_disk_union(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> RangeEstimate:
    cfg = cfg or SampleConfig()
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    union = _build_union(ctx, T, q, cfg)
    estimate = _estimate_from_union(union, q, cfg.n_angles)
    logger.info(
        "Computed W_qA(T) for q=%s via %s: %d disks, radius estimate %.6g",
        q,
        estimate.method,
        union.centers.size,
        estimate.radius_est,
    )
    return estimate


def numerical_range_a(ctx: PsdContext, T, cfg: SampleConfig | None = None) -> RangeEstimate:
    """The A-numerical range W_A(T), the q = 1 case."""
    return range_disk_union(ctx, T, 1.0, cfg)


### Radius
def q_radius_detail(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> QRadius:
    cfg = cfg or SampleConfig()
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    if ctx.rank == 0 or (ctx.rank < 2 and not is_unimodular(q)):
        raise RankTooSmall(f"w_qA needs rank(A) >= 2 for |q| < 1 (rank is {ctx.rank})")

    union = _build_union(ctx, T, q, cfg)
    sampled = np.abs(union.centers) + union.radii
    sampled_best = int(np.argmax(sampled))

    form = _Form.build(ctx, T)
    # Best disks for this q, then the largest |<Tx,x>_A|, then random starts
    n_witness = min(max(1, cfg.n_starts // 2), sampled.size)
    n_center = min(max(1, cfg.n_starts // 4), sampled.size)
    center_moduli = np.abs(form.terms(union.coords)[0])
    witnesses = union.coords[np.argsort(-sampled, kind="stable")[:n_witness]]
    central = union.coords[np.argsort(-center_moduli, kind="stable")[:n_center]]
    n_random = max(0, cfg.n_starts - n_witness - n_center)
    start_seq, search_seq = np.random.SeedSequence(cfg.seed).spawn(4)[2:]
    starts = np.concatenate(
        [witnesses, central, _random_unit_rows(np.random.default_rng(start_seq), n_random, ctx.rank)]
    )

    U, values = sphere_ascent(
        form.radius_objective(q),
        starts,
        max_sweeps=cfg.max_iter,
        line_iters=cfg.line_iters,
        opt_tol=ctx.tol.opt_tol,
        rng=np.random.default_rng(search_seq),
    )
    best = int(np.argmax(values))
    if values[best] >= sampled[sampled_best]:
        value, witness = float(values[best]), U[best]
    else:
        value, witness = float(sampled[sampled_best]), union.coords[sampled_best]

    logger.debug("w_qA estimate %.12g (sampled witness %.12g)", value, sampled[sampled_best])
    return QRadius(value=value, witness=lift(ctx, witness), sampled_value=float(sampled[sampled_best]))


def q_radius(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> float:
    return q_radius_detail(ctx, T, q, cfg).value


def numerical_radius_a(ctx: PsdContext, T, cfg: SampleConfig | None = None) -> float:
    """w_A(T), the q = 1 radius."""
    return q_radius(ctx, T, 1.0, cfg)


### Pair construction and the brute-force oracle
def alpha(ctx: PsdContext, T, x) -> float:
    x = as_vector(ctx, x)
    if abs(a_norm(ctx, x) - 1.0) > _unit_tolerance(ctx):
        raise NotUnitANorm(f"||x||_A = {a_norm(ctx, x):.6g}, expected 1")
    Tx = np.asarray(T, dtype=complex) @ x
    s = semi_inner(ctx, Tx, x)
    m = semi_inner(ctx, Tx, Tx).real
    return float(np.sqrt(max(0.0, m - abs(s) ** 2)))


def complete_pair(ctx: PsdContext, x, q, seed: int = 0) -> tuple[ComplexVector, ComplexVector]:
    """Returns (y, z): z is A-orthonormal to x and y = conj(q) x + sqrt(1-|q|^2) z."""
    x = as_vector(ctx, x)
    q = as_q(q)
    if ctx.rank < 2:
        raise RankTooSmall(f"No unit z A-orthogonal to x exists when rank(A) = {ctx.rank}")
    if abs(a_norm(ctx, x) - 1.0) > _unit_tolerance(ctx):
        raise NotUnitANorm(f"||x||_A = {a_norm(ctx, x):.6g}, expected 1")

    u = ctx.embed_map @ x
    u = u / np.linalg.norm(u)
    rng = np.random.default_rng(seed)
    w = np.zeros(ctx.rank, dtype=complex)
    while np.linalg.norm(w) < 1e-8:
        w = rng.standard_normal(ctx.rank) + 1j * rng.standard_normal(ctx.rank)
        w = w - np.vdot(u, w) * u
    w = w / np.linalg.norm(w)
    z = lift(ctx, w)
    y = np.conj(q) * x + _radius_factor(q) * z
    return y, z


def _complement_units(U: np.ndarray, W: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Unit rows orthogonal to the matching rows of U, along W where W has such a part."""
    W = np.array(W, dtype=complex)
    while True:
        for _ in range(2):
            W -= np.sum(U.conj() * W, axis=1, keepdims=True) * U
        norms = np.linalg.norm(W, axis=1)
        degenerate = norms < 1e-8
        if not np.any(degenerate):
            break
        W[degenerate] = _random_unit_rows(rng, int(degenerate.sum()), U.shape[1])
    W /= norms[:, None]
    W -= np.sum(U.conj() * W, axis=1, keepdims=True) * U
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def _coordinate_pair_values(tilde: np.ndarray, U: np.ndarray, W: np.ndarray, phases: np.ndarray, q: complex):
    TU = U @ tilde.T
    s = np.sum(U.conj() * TU, axis=1)
    t = np.sum(W.conj() * TU, axis=1)
    return q * s + _radius_factor(q) * np.exp(1j * phases) * t


def oracle_pair_samples(ctx: PsdContext, T, q, n: int, seed: int = 0) -> PairSampleBatch:
    """Direct samples of ``q<Tx,x>_A + sqrt(1-|q|^2) e^{i phi} <Tx,z>_A`` over A-orthonormal pairs (x, z).

    Half of the samples draw x, z and phi uniformly. The other half take z along the direction in
    which Tx leaves x and are spent in rounds: each round draws x and phi around the samples that
    are extreme in a fixed set of directions, with a shrinking spread. Values are always evaluated
    from the pair itself.
    """
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    if ctx.rank < 2:
        raise RankTooSmall("Pair sampling needs rank(A) >= 2")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")

    rng = np.random.default_rng(seed)
    r = ctx.rank
    tilde = coordinate_compression(ctx, T)
    scale = max(float(np.linalg.norm(tilde, 2)), np.finfo(float).tiny)

    def aligned_partners(U: np.ndarray) -> np.ndarray:
        Y = U @ tilde.T / scale
        return _complement_units(U, Y - np.sum(U.conj() * Y, axis=1, keepdims=True) * U, rng)

    n_uniform = n - n // 2
    U = _random_unit_rows(rng, n_uniform, r)
    W = _complement_units(U, _random_unit_rows(rng, n_uniform, r), rng)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n_uniform)

    stages = [chunk.size for chunk in np.array_split(np.arange(n // 2), _ORACLE_ROUNDS + 1)]
    U_a = _random_unit_rows(rng, stages[0], r)
    W_a = aligned_partners(U_a)
    phases_a = rng.uniform(0.0, 2.0 * np.pi, size=stages[0])
    directions = np.exp(-1j * angle_grid(_ORACLE_DIRECTIONS))[:, None]
    for round_index, count in enumerate(stages[1:]):
        if count == 0 or phases_a.size == 0:
            continue
        values = _coordinate_pair_values(tilde, U_a, W_a, phases_a, q)
        elites = np.unique(np.argmax(np.real(directions * values[None, :]), axis=1))
        pick = elites[rng.integers(elites.size, size=count)]
        spread = _ORACLE_SPREAD * 0.5**round_index * rng.uniform(0.0, 1.0, size=count)

        U_new = U_a[pick] + spread[:, None] * _random_unit_rows(rng, count, r)
        U_new /= np.linalg.norm(U_new, axis=1, keepdims=True)
        phases_new = np.mod(phases_a[pick] + np.pi * spread * rng.standard_normal(count), 2.0 * np.pi)
        U_a = np.concatenate([U_a, U_new])
        W_a = np.concatenate([W_a, aligned_partners(U_new)])
        phases_a = np.concatenate([phases_a, phases_new])

    U, W, phases = np.concatenate([U, U_a]), np.concatenate([W, W_a]), np.concatenate([phases, phases_a])
    X, Z = lift(ctx, U.T), lift(ctx, W.T)
    TX = T @ X
    forms = semi_inner_columns(ctx, TX, X)
    cross_terms = semi_inner_columns(ctx, TX, Z)
    values = q * forms + _radius_factor(q) * np.exp(1j * phases) * cross_terms
    return PairSampleBatch(xs=X, zs=Z, phases=phases, values=values, forms=forms, cross_terms=cross_terms)


def oracle_radius(samples: PairSampleBatch, q) -> float:
    """Largest ``|q| |<Tx,x>_A| + sqrt(1-|q|^2) |<Tx,z>_A|`` over the samples."""
    q = as_q(q)
    if len(samples) == 0:
        return 0.0
    return float(np.max(abs(q) * np.abs(samples.forms) + _radius_factor(q) * np.abs(samples.cross_terms)))


### Inclusion checks
def verify_inclusions(ctx: PsdContext, T, q, cfg: SampleConfig | None = None) -> list[CheckResult]:
    cfg = cfg or SampleConfig()
    T = require_a_bounded(ctx, T)
    q = as_q(q)
    tilde = build_tilde(ctx, T)
    scale = tilde.norm
    geo = ctx.tol.geo_tol * scale + ctx.tol.eq_tol

    estimate = range_disk_union(ctx, T, q, cfg)
    checks: list[CheckResult] = []

    spectrum = np.linalg.eigvals(tilde.matrix)
    slack = outside_slack(q * spectrum, estimate.support, estimate.angles)
    checks.append(
        CheckResult.compare(
            "spectral inclusion", Anchor.SPECTRAL_INCLUSION, slack, 0.0, geo, detail=f"{spectrum.size} eigenvalues"
        )
    )

    if ctx.rank >= 3 or is_unimodular(q):
        w_a = numerical_range_a(ctx, T, cfg)
        slack = outside_slack(q * w_a.boundary, estimate.support, estimate.angles)
        checks.append(CheckResult.compare("q W_A inclusion", Anchor.RANGE_INCLUSION, slack, 0.0, geo))
    else:
        checks.append(
            CheckResult.skipped("q W_A inclusion", Anchor.RANGE_INCLUSION, f"rank(A) = {ctx.rank} < 3")
        )

    reduced_ctx = build_context(np.eye(tilde.r), ctx.tol)
    reduced = range_disk_union(reduced_ctx, tilde.matrix, q, cfg)
    distance = hausdorff_from_support(estimate.support, reduced.support)
    checks.append(CheckResult.compare("reduced range equality", Anchor.REDUCED_RANGE, distance, 0.0, geo))
    return checks
