"""Semi-inner product algebra for a positive semidefinite weight A.

Conventions: ``<x, y>_A = <Ax, y> = y^H A x`` (conjugate-linear in the second slot) and the
A-adjoint is ``T# = A^+ T^* A``.
"""

import logging

import numpy as np
import scipy.linalg

from .configs import ToleranceConfig
from .errors import DimensionMismatch, NegativeEigenvalue, NotABounded, NotHermitian, RankTooSmall
from .schemas import ClassificationReport, ComplexMatrix, ComplexVector, PsdContext

logger = logging.getLogger(__name__)


### Validation helpers
def as_matrix(T, n: int | None = None) -> ComplexMatrix:
    """Validates a square, finite matrix (of size ``n`` when given) and returns a complex copy."""
    M = np.array(T, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {M.shape}")
    if n is not None and M.shape[0] != n:
        raise DimensionMismatch(f"Expected a {n}x{n} matrix, got {M.shape[0]}x{M.shape[1]}")
    if not np.all(np.isfinite(M)):
        raise DimensionMismatch("Matrix contains NaN or Inf entries")
    return M


def as_vector(ctx: PsdContext, x) -> ComplexVector:
    v = np.asarray(x, dtype=complex)
    if v.shape != (ctx.n,):
        raise DimensionMismatch(f"Expected a vector of length {ctx.n}, got shape {v.shape}")
    return v


def spectral_norm(X: np.ndarray) -> float:
    if X.size == 0:
        return 0.0
    return float(np.linalg.norm(X, 2))


def matrices_close(X: np.ndarray, Y: np.ndarray, eq_tol: float) -> bool:
    """Relative equality: ||X - Y|| <= eq_tol * max(1, ||X||, ||Y||)."""
    scale = max(1.0, spectral_norm(X), spectral_norm(Y))
    return spectral_norm(X - Y) <= eq_tol * scale


### Context construction
def _phase_normalize(V: np.ndarray) -> np.ndarray:
    """Rotates each column so its largest-modulus entry is real and positive."""
    idx = np.argmax(np.abs(V), axis=0)
    pivots = V[idx, np.arange(V.shape[1])]
    phases = np.where(np.abs(pivots) > 0, pivots.conj() / np.abs(pivots), 1.0)
    return V * phases


def build_context(A, tol: ToleranceConfig | None = None) -> PsdContext:
    tol = tol or ToleranceConfig()
    A = as_matrix(A)
    n = A.shape[0]

    norm_a = spectral_norm(A)
    if spectral_norm(A - A.conj().T) > tol.eq_tol * max(1.0, norm_a):
        raise NotHermitian("A is not Hermitian within tolerance")
    A = (A + A.conj().T) / 2

    off_diagonal = A - np.diag(np.diag(A))
    if not np.any(off_diagonal):
        w = np.diag(A).real.copy()
        V = np.eye(n, dtype=complex)
    else:
        w, V = scipy.linalg.eigh(A)
        V = _phase_normalize(V)

    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]

    scale = float(np.max(np.abs(w))) if n else 0.0
    if n and w[-1] < -tol.rank_tol * scale:
        raise NegativeEigenvalue(f"A has eigenvalue {w[-1]:.3e}; a positive semidefinite weight is required")

    lam1 = max(float(w[0]), 0.0) if n else 0.0
    retained = w > tol.rank_tol * lam1 if lam1 > 0 else np.zeros(n, dtype=bool)
    rank = int(np.count_nonzero(retained))
    w = np.where(retained, w, 0.0)

    Vr, lam = V[:, :rank], w[:rank]
    Vr_h = Vr.conj().T
    ctx = PsdContext(
        A=(Vr * lam) @ Vr_h,
        eigenvalues=w,
        eigenvectors=V,
        rank=rank,
        tol=tol,
        A_half=(Vr * np.sqrt(lam)) @ Vr_h,
        A_pinv=(Vr / lam) @ Vr_h,
        A_half_pinv=(Vr / np.sqrt(lam)) @ Vr_h,
        P=Vr @ Vr_h,
    )
    logger.info("Built semi-Hilbertian context: n=%d, rank=%d, ||A||=%.6g", n, rank, lam1)
    return ctx


### Semi-inner products
def semi_inner(ctx: PsdContext, x, y) -> complex:
    x, y = as_vector(ctx, x), as_vector(ctx, y)
    return complex(np.vdot(y, ctx.A @ x))


def a_norm(ctx: PsdContext, x) -> float:
    return float(np.sqrt(max(0.0, semi_inner(ctx, x, x).real)))


def semi_inner_columns(ctx: PsdContext, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Column-wise ``<x_j, y_j>_A`` for n x N blocks of vectors."""
    return np.einsum("ij,ij->j", Y.conj(), ctx.A @ X)


def form_values(ctx: PsdContext, T: ComplexMatrix, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column-wise ``<Tx, x>_A`` and ``||Tx||_A^2`` for an n x N block of vectors."""
    TX = T @ X
    ATX = ctx.A @ TX
    s = np.einsum("ij,ij->j", X.conj(), ATX)
    m = np.einsum("ij,ij->j", TX.conj(), ATX).real
    return s, np.maximum(m, 0.0)


### Adjoints and membership
def sharp_adjoint(ctx: PsdContext, T) -> ComplexMatrix:
    T = as_matrix(T, ctx.n)
    return ctx.A_pinv @ T.conj().T @ ctx.A


def is_a_bounded(ctx: PsdContext, T) -> bool:
    """True when T maps N(A) into N(A), i.e. T is bounded for the A-seminorm."""
    T = as_matrix(T, ctx.n)
    if ctx.rank == ctx.n:
        return True
    residual = spectral_norm(ctx.A @ T @ ctx.null_basis)
    return residual <= ctx.tol.eq_tol * ctx.norm_A * spectral_norm(T)


def is_in_b_a(ctx: PsdContext, T) -> bool:
    """True when R(T^* A) lies in R(A), i.e. T admits an A-adjoint."""
    T = as_matrix(T, ctx.n)
    residual = spectral_norm((np.eye(ctx.n) - ctx.P) @ T.conj().T @ ctx.A)
    return residual <= ctx.tol.eq_tol * ctx.norm_A * spectral_norm(T)


def require_a_bounded(ctx: PsdContext, T) -> ComplexMatrix:
    T = as_matrix(T, ctx.n)
    if not is_a_bounded(ctx, T):
        raise NotABounded("T maps a null vector of A outside N(A)")
    return T


def coordinate_compression(ctx: PsdContext, T: ComplexMatrix) -> ComplexMatrix:
    """``L^{1/2} (V^* T V) L^{-1/2}`` in the retained eigenbasis of A."""
    root = np.sqrt(ctx.retained)
    M = ctx.basis.conj().T @ T @ ctx.basis
    return root[:, None] * M / root[None, :]


def a_operator_norm(ctx: PsdContext, T) -> float:
    T = require_a_bounded(ctx, T)
    if ctx.rank == 0:
        return 0.0
    return float(scipy.linalg.svdvals(coordinate_compression(ctx, T))[0])


def a_operator_norm_defining(ctx: PsdContext, T) -> float:
    """The seminorm sup ||Tx||_A / ||x||_A as a generalized Hermitian eigenproblem on R(A)."""
    T = require_a_bounded(ctx, T)
    if ctx.rank == 0:
        return 0.0
    TV = T @ ctx.basis
    K = TV.conj().T @ ctx.A @ TV
    K = (K + K.conj().T) / 2
    top = scipy.linalg.eigh(K, np.diag(ctx.retained), eigvals_only=True)[-1]
    return float(np.sqrt(max(0.0, top)))


### Classification
def _a_nilpotent_index(ctx: PsdContext, T: ComplexMatrix, max_index: int) -> int | None:
    if ctx.rank == 0:
        return None
    norm_t = spectral_norm(T)
    power = np.eye(ctx.n, dtype=complex)
    for k in range(1, max_index + 1):
        power = power @ T
        if spectral_norm(ctx.A @ power) <= ctx.tol.eq_tol * ctx.norm_A * norm_t**k:
            return k
    return None


def _nilpotent_index(T: ComplexMatrix, eq_tol: float, max_index: int) -> int | None:
    norm_t = spectral_norm(T)
    power = np.eye(T.shape[0], dtype=complex)
    for k in range(1, max_index + 1):
        power = power @ T
        if spectral_norm(power) <= eq_tol * norm_t**k:
            return k
    return None


def is_a_selfadjoint(ctx: PsdContext, T) -> bool:
    T = as_matrix(T, ctx.n)
    AT = ctx.A @ T
    return matrices_close(AT, AT.conj().T, ctx.tol.eq_tol)


def classify(ctx: PsdContext, T, max_index: int = 8) -> ClassificationReport:
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    T = as_matrix(T, ctx.n)
    eq_tol = ctx.tol.eq_tol
    A = ctx.A
    T_sharp = sharp_adjoint(ctx, T)

    bounded = is_a_bounded(ctx, T)
    in_b_a = is_in_b_a(ctx, T)
    selfadjoint = is_a_selfadjoint(ctx, T)

    positive = False
    if selfadjoint:
        AT = A @ T
        lowest = scipy.linalg.eigvalsh((AT + AT.conj().T) / 2)[0] if ctx.n else 0.0
        positive = bool(lowest >= -eq_tol * max(1.0, spectral_norm(AT)))

    # Equality as seminorm operators; the action on N(A) is irrelevant
    normal = in_b_a and matrices_close(A @ T @ T_sharp, A @ T_sharp @ T, eq_tol)
    unitary = (
        in_b_a
        and matrices_close(T.conj().T @ A @ T, A, eq_tol)
        and matrices_close(T_sharp.conj().T @ A @ T_sharp, A, eq_tol)
    )

    report = ClassificationReport(
        is_a_bounded=bounded,
        is_in_B_A=in_b_a,
        is_a_selfadjoint=selfadjoint,
        is_a_positive=positive,
        is_a_normal=normal,
        is_a_unitary=unitary,
        equals_sharp=matrices_close(T, T_sharp, eq_tol),
        a_nilpotent_index=_a_nilpotent_index(ctx, T, max_index),
        nilpotent_index=_nilpotent_index(T, eq_tol, max_index),
    )
    logger.debug("Classification: %s", report)
    return report


### A-unitary generation
def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed unitary from the phase-corrected QR of a complex Ginibre matrix."""
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    Q, R = scipy.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def generate_a_unitary(ctx: PsdContext, seed: int) -> ComplexMatrix:
    """A-unitary U acting as a random unitary on R(A^{1/2}) coordinates and as the identity on N(A)."""
    if ctx.rank < 1:
        raise RankTooSmall("An A-unitary needs rank(A) >= 1")
    Q = haar_unitary(ctx.rank, np.random.default_rng(seed))
    return ctx.lift_map @ Q @ ctx.embed_map + (np.eye(ctx.n) - ctx.P)
