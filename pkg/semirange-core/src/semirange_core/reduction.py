"""The reduced operator on the Hilbert space R(A^{1/2}).

``Z_A x = Ax`` intertwines T with a unique operator on R(A^{1/2}); in the orthonormal basis
``sqrt(lambda_i) v_i`` its matrix is ``L^{1/2} (V^* T V) L^{-1/2}``.
"""

import logging

import numpy as np

from .errors import DimensionMismatch
from .schemas import ComplexMatrix, PsdContext, TildeOperator
from .semicore import coordinate_compression, require_a_bounded, spectral_norm

logger = logging.getLogger(__name__)


def build_tilde(ctx: PsdContext, T) -> TildeOperator:
    T = require_a_bounded(ctx, T)
    return TildeOperator(r=ctx.rank, matrix=coordinate_compression(ctx, T), ctx=ctx)


def lift(ctx: PsdContext, coords: np.ndarray) -> np.ndarray:
    """Maps R(A^{1/2}) coordinates back to H; unit coordinates give unit A-seminorm vectors.

    Accepts a single coordinate vector or an r x N block.
    """
    coords = np.asarray(coords, dtype=complex)
    if coords.shape[0] != ctx.rank:
        raise DimensionMismatch(f"Expected {ctx.rank} coordinates, got {coords.shape[0]}")
    return ctx.lift_map @ coords


def intertwining_residual(tilde: TildeOperator, T: ComplexMatrix, x: np.ndarray) -> float:
    """|| coords(ATx) - T~ coords(Ax) || for a single vector."""
    return float(np.linalg.norm(tilde.embed(T @ x) - tilde.matrix @ tilde.embed(x)))


def tilde_consistency_check(ctx: PsdContext, T, n_samples: int = 50, seed: int = 0) -> float:
    """Worst intertwining residual over random x, relative to ||A|| ||T|| ||x||.

    The returned value is directly comparable with ``eq_tol``.
    """
    T = require_a_bounded(ctx, T)
    tilde = build_tilde(ctx, T)
    if ctx.rank == 0:
        return 0.0

    rng = np.random.default_rng(seed)
    X = rng.standard_normal((ctx.n, n_samples)) + 1j * rng.standard_normal((ctx.n, n_samples))
    scale = max(ctx.norm_A * spectral_norm(T), np.finfo(float).tiny)

    worst = 0.0
    for j in range(n_samples):
        x = X[:, j]
        residual = intertwining_residual(tilde, T, x) / (scale * np.linalg.norm(x))
        worst = max(worst, residual)
    logger.debug("Intertwining residual over %d samples: %.3e", n_samples, worst)
    return worst


def tilde_is_hermitian(tilde: TildeOperator, eq_tol: float) -> bool:
    M = tilde.matrix
    scale = max(1.0, spectral_norm(M))
    return spectral_norm(M - M.conj().T) <= eq_tol * scale


def tilde_nilpotent_index(tilde: TildeOperator, eq_tol: float, max_index: int) -> int | None:
    """Least k with ||T~^k|| negligible relative to ||T~||^k."""
    M = tilde.matrix
    if tilde.r == 0:
        return None
    norm_m = spectral_norm(M)
    power = np.eye(tilde.r, dtype=complex)
    for k in range(1, max_index + 1):
        power = power @ M
        if spectral_norm(power) <= eq_tol * norm_m**k:
            return k
    return None
