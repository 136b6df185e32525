import logging

import numpy as np
import scipy.linalg

from .errors import NotAInvertible
from .reduction import build_tilde
from .schemas import ComplexMatrix, PsdContext, SpectralRadius, SpectrumReport
from .semicore import a_operator_norm, require_a_bounded

logger = logging.getLogger(__name__)


def _sorted(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def cluster_values(values: np.ndarray, radius: float) -> np.ndarray:
    """Collapses values closer than ``radius`` into one representative (the first seen)."""
    reps: list[complex] = []
    for v in _sorted(values):
        if all(abs(v - r) > radius for r in reps):
            reps.append(complex(v))
    return np.array(reps, dtype=complex)


def a_point_spectrum(ctx: PsdContext, T) -> np.ndarray:
    """Eigenvalues of the compression ``P T`` restricted to R(A)."""
    T = require_a_bounded(ctx, T)
    if ctx.rank == 0:
        return np.zeros(0, dtype=complex)
    M = ctx.basis.conj().T @ T @ ctx.basis
    return _sorted(scipy.linalg.eigvals(M))


def a_spectrum(ctx: PsdContext, T) -> np.ndarray:
    """Eigenvalues of the reduced operator; in finite dimension these are exactly the A-spectrum."""
    tilde = build_tilde(ctx, T)
    if tilde.r == 0:
        return np.zeros(0, dtype=complex)
    return _sorted(scipy.linalg.eigvals(tilde.matrix))


def a_spectral_radius(ctx: PsdContext, T, n_max: int = 20) -> SpectralRadius:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    T = require_a_bounded(ctx, T)
    spectrum = a_spectrum(ctx, T)
    radius = float(np.max(np.abs(spectrum))) if spectrum.size else 0.0

    estimates: list[tuple[int, float]] = []
    power = np.eye(ctx.n, dtype=complex)
    for k in range(1, n_max + 1):
        power = power @ T
        estimates.append((k, a_operator_norm(ctx, power) ** (1.0 / k)))
    logger.debug("A-spectral radius %.6g, estimate at n=%d: %.6g", radius, n_max, estimates[-1][1])
    return SpectralRadius(radius_exact=radius, radius_limit_estimates=estimates)


def a_inverse(ctx: PsdContext, T) -> ComplexMatrix:
    """S with ATS = AST = A and S(N(A)) contained in N(A)."""
    T = require_a_bounded(ctx, T)
    tilde = build_tilde(ctx, T)
    if tilde.r == 0:
        return np.zeros((ctx.n, ctx.n), dtype=complex)
    sv = scipy.linalg.svdvals(tilde.matrix)
    if sv[-1] <= ctx.tol.eq_tol * max(1.0, sv[0]):
        raise NotAInvertible("The reduced operator is singular")
    M = ctx.basis.conj().T @ T @ ctx.basis
    return ctx.basis @ np.linalg.inv(M) @ ctx.basis.conj().T


def in_a_spectrum(ctx: PsdContext, T, value: complex) -> bool:
    """Defining test: T - value*I fails to be A-invertible."""
    T = require_a_bounded(ctx, T)
    try:
        a_inverse(ctx, T - value * np.eye(ctx.n))
    except NotAInvertible:
        return True
    return False


def spectrum_report(ctx: PsdContext, T, n_max: int = 20) -> SpectrumReport:
    T = require_a_bounded(ctx, T)
    point = a_point_spectrum(ctx, T)
    full = a_spectrum(ctx, T)
    radius = a_spectral_radius(ctx, T, n_max)
    return SpectrumReport(
        point=point,
        full=full,
        # Approximate point spectrum coincides with the point spectrum in finite dimension
        approx=point.copy(),
        radius_exact=radius.radius_exact,
        radius_limit_estimates=radius.radius_limit_estimates,
    )


def cluster_radius(ctx: PsdContext, T) -> float:
    """Matching radius for set-level spectrum comparisons."""
    return ctx.tol.eq_tol * (1.0 + build_tilde(ctx, T).norm)
