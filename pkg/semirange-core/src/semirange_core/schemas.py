from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import overload

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .configs import ToleranceConfig

ComplexMatrix = np.ndarray
ComplexVector = np.ndarray


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


### Semi-Hilbertian geometry
@dataclass(frozen=True, eq=False)
class PsdContext:
    """The geometry induced by a positive semidefinite weight A.

    Attributes:
        A: The weight with eigenvalues below the rank cutoff set to exactly zero.
        eigenvalues: All eigenvalues of A in descending order, clamped at the cutoff.
        eigenvectors: Unitary matrix whose columns match ``eigenvalues``.
        rank: Number of retained eigenvalues, the dimension of R(A).
        tol: Tolerances in force when the context was built.
        A_half: The positive square root of A.
        A_pinv: Moore-Penrose pseudo-inverse of A.
        A_half_pinv: Pseudo-inverse of the square root.
        P: Orthogonal projector onto R(A).
    """

    A: ComplexMatrix
    eigenvalues: np.ndarray
    eigenvectors: ComplexMatrix
    rank: int
    tol: ToleranceConfig
    A_half: ComplexMatrix
    A_pinv: ComplexMatrix
    A_half_pinv: ComplexMatrix
    P: ComplexMatrix

    def __post_init__(self):
        for name in ("A", "eigenvalues", "eigenvectors", "A_half", "A_pinv", "A_half_pinv", "P"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def basis(self) -> ComplexMatrix:
        """Orthonormal eigenvectors spanning R(A), one per column."""
        return self.eigenvectors[:, : self.rank]

    @property
    def null_basis(self) -> ComplexMatrix:
        """Orthonormal eigenvectors spanning N(A)."""
        return self.eigenvectors[:, self.rank :]

    @property
    def retained(self) -> np.ndarray:
        return self.eigenvalues[: self.rank]

    @property
    def norm_A(self) -> float:
        return float(self.eigenvalues[0]) if self.n else 0.0

    @property
    def lift_map(self) -> ComplexMatrix:
        """n x r matrix sending unit coordinates to unit A-seminorm vectors in R(A)."""
        return self.basis / np.sqrt(self.retained)

    @property
    def embed_map(self) -> ComplexMatrix:
        """r x n matrix giving the coordinates of Ax in the orthonormal basis of R(A^{1/2})."""
        return np.sqrt(self.retained)[:, None] * self.basis.conj().T


class ClassificationReport(BaseModel):
    """Membership and structure flags of an operator relative to A."""

    is_a_bounded: bool
    is_in_B_A: bool
    is_a_selfadjoint: bool
    is_a_positive: bool
    is_a_normal: bool
    is_a_unitary: bool
    equals_sharp: bool
    a_nilpotent_index: int | None = None
    nilpotent_index: int | None = None


@dataclass(frozen=True, eq=False)
class TildeOperator:
    """The reduced operator acting on the coordinate space of R(A^{1/2})."""

    r: int
    matrix: ComplexMatrix
    ctx: PsdContext = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    def embed(self, x: ComplexVector) -> ComplexVector:
        """Coordinates of Ax in the orthonormal basis of R(A^{1/2})."""
        return self.ctx.embed_map @ np.asarray(x, dtype=complex)

    @property
    def norm(self) -> float:
        if self.r == 0:
            return 0.0
        return float(np.linalg.norm(self.matrix, 2))


### Spectra
@dataclass(frozen=True, eq=False)
class SpectrumReport:
    point: np.ndarray
    full: np.ndarray
    approx: np.ndarray
    radius_exact: float
    radius_limit_estimates: list[tuple[int, float]] = field(default_factory=list)


@dataclass(frozen=True)
class SpectralRadius:
    radius_exact: float
    radius_limit_estimates: list[tuple[int, float]]


### Numerical range
class RangeMethod(StrEnum):
    DISK_UNION = "disk_union"
    PAIR_SAMPLING = "pair_sampling"
    Q_COLLAPSE = "q_collapse"
    EMPTY = "empty"


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float


@dataclass(frozen=True, eq=False)
class RangeEstimate:
    """A union of closed disks together with its support function and convex hull.

    Attributes:
        q: The parameter the range was computed for.
        centers: Disk centers.
        radii: Disk radii, aligned with ``centers``.
        angles: Uniform angle grid on [0, 2*pi).
        support: Support function of the union on ``angles``.
        boundary: One supporting point per angle, in angle order.
        hull: Convex polygon (counter-clockwise) of the boundary points.
        radius_est: Largest modulus attained by the union.
        method: Which construction produced the disks.
    """

    q: complex
    centers: np.ndarray
    radii: np.ndarray
    angles: np.ndarray
    support: np.ndarray
    boundary: np.ndarray
    hull: np.ndarray
    radius_est: float
    method: RangeMethod

    @property
    def disks(self) -> list[Disk]:
        return [Disk(complex(c), float(r)) for c, r in zip(self.centers, self.radii, strict=True)]

    @property
    def support_pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.angles.tolist(), self.support.tolist(), strict=True))


@dataclass(frozen=True, eq=False)
class PairSample:
    x: ComplexVector
    z: ComplexVector
    phase: float
    value: complex


@dataclass(frozen=True, eq=False)
class PairSampleBatch(Sequence[PairSample]):
    """Oracle samples stored column-wise; behaves as a sequence of ``PairSample``.

    ``forms`` and ``cross_terms`` hold ``<Tx,x>_A`` and ``<Tx,z>_A`` for each sample.
    """

    xs: np.ndarray
    zs: np.ndarray
    phases: np.ndarray
    values: np.ndarray
    forms: np.ndarray
    cross_terms: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]

    @overload
    def __getitem__(self, index: int) -> PairSample: ...

    @overload
    def __getitem__(self, index: slice) -> list[PairSample]: ...

    def __getitem__(self, index: int | slice) -> PairSample | list[PairSample]:
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        return PairSample(
            x=self.xs[:, index],
            z=self.zs[:, index],
            phase=float(self.phases[index]),
            value=complex(self.values[index]),
        )

    def __iter__(self) -> Iterator[PairSample]:
        for i in range(len(self)):
            yield self[i]


@dataclass(frozen=True, eq=False)
class QRadius:
    """Approximate q-numerical radius with the witness that attains it."""

    value: float
    witness: ComplexVector
    sampled_value: float


### Closed forms and checks
@dataclass(frozen=True)
class EllipseSpec:
    focus1: complex
    focus2: complex
    semi_major: float
    semi_minor: float
    center: complex

    @property
    def orientation(self) -> float:
        """Angle of the major axis."""
        delta = self.focus1 - self.focus2
        return float(np.angle(delta)) if abs(delta) > 0 else 0.0

    def support(self, angles: np.ndarray) -> np.ndarray:
        rel = np.asarray(angles) - self.orientation
        reach = np.hypot(self.semi_major * np.cos(rel), self.semi_minor * np.sin(rel))
        return np.real(np.exp(-1j * np.asarray(angles)) * self.center) + reach

    def boundary(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        local = self.semi_major * np.cos(t) + 1j * self.semi_minor * np.sin(t)
        return self.center + np.exp(1j * self.orientation) * local

    def contains(self, points: np.ndarray, atol: float = 0.0) -> np.ndarray:
        """Elementwise membership in the closed elliptic disk (sum of focal distances)."""
        points = np.asarray(points, dtype=complex)
        reach = np.abs(points - self.focus1) + np.abs(points - self.focus2)
        return reach <= 2.0 * self.semi_major + atol


class Nilpotent2Check(BaseModel):
    is_disk: bool
    variation: float
    radius: float
    bound: float
    passed: bool


class UnitaryEquivalence(BaseModel):
    radius_diff: float
    hull_hausdorff: float
    radius_budget: float
    hull_budget: float

    @property
    def passed(self) -> bool:
        return self.radius_diff <= self.radius_budget and self.hull_hausdorff <= self.hull_budget


class BoundLedger(BaseModel):
    """Known lower and upper bounds next to the measured q-numerical radius.

    Bounds that do not apply to the operator are left as ``None``.
    """

    measured: float
    slack: float
    maincor_lower_i: float | None = None
    maincor_lower_ii: float | None = None
    maincor_upper: float | None = None
    selfadjoint_lower: float | None = None
    nilpotent2_upper: float | None = None
    legacy_nilpotent2_upper: float | None = None
    index3_upper: float | None = None
    violations: list[str] = Field(default_factory=list)

    @property
    def lower_bounds(self) -> dict[str, float]:
        names = ("maincor_lower_i", "maincor_lower_ii", "selfadjoint_lower")
        return {n: getattr(self, n) for n in names if getattr(self, n) is not None}

    @property
    def upper_bounds(self) -> dict[str, float]:
        names = ("maincor_upper", "nilpotent2_upper", "legacy_nilpotent2_upper", "index3_upper")
        return {n: getattr(self, n) for n in names if getattr(self, n) is not None}

    @property
    def holds(self) -> bool:
        return not self.violations


class CheckStatus(StrEnum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    """One verified statement with its measured slack.

    ``slack`` is signed so that non-negative means the statement held with room to spare.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    anchor: str
    measured: float | None = None
    bound: float | None = None
    slack: float | None = None
    tolerance: float | None = None
    status: CheckStatus
    detail: str = ""

    @classmethod
    def compare(
        cls,
        name: str,
        anchor: str,
        measured: float,
        bound: float,
        tolerance: float,
        *,
        upper: bool = True,
        detail: str = "",
    ) -> "CheckResult":
        """Builds a check for ``measured <= bound`` (or ``>=`` when ``upper`` is False)."""
        slack = bound - measured if upper else measured - bound
        status = CheckStatus.PASSED if slack >= -tolerance else CheckStatus.FAILED
        return cls(
            name=name,
            anchor=anchor,
            measured=float(measured),
            bound=float(bound),
            slack=float(slack),
            tolerance=float(tolerance),
            status=status,
            detail=detail,
        )

    @classmethod
    def skipped(cls, name: str, anchor: str, reason: str) -> "CheckResult":
        return cls(name=name, anchor=anchor, status=CheckStatus.SKIPPED, detail=reason)


class Suite(StrEnum):
    ALL = "all"
    SPECTRAL = "spectral"
    BOUNDS = "bounds"
    NILPOTENT = "nilpotent"
    REDUCTION = "reduction"


class VerificationReport(BaseModel):
    suite: str
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAILED for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.FAILED]

    def extend(self, checks: list[CheckResult]) -> None:
        self.checks.extend(checks)
