"""Shared fixtures: seeded generators and random operators with prescribed A-structure."""

import numpy as np
import pytest
from semirange_core.configs import SampleConfig
from semirange_core.schemas import PsdContext
from semirange_core.semicore import build_context


class Instances:
    """Builds random weights A and operators whose reduced matrix has a chosen structure.

    Operators take the form ``lift M embed + (I - P) Y``: they map N(A) into N(A), their
    reduced matrix is exactly M, and the null-space part Y is arbitrary.
    """

    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def complex_normal(self, *shape: int) -> np.ndarray:
        return self.rng.standard_normal(shape) + 1j * self.rng.standard_normal(shape)

    def weight(self, n: int, r: int) -> np.ndarray:
        B = self.complex_normal(n, r)
        return B @ B.conj().T

    def context(self, n: int, r: int) -> PsdContext:
        return build_context(self.weight(n, r))

    def with_reduced(self, ctx: PsdContext, M: np.ndarray) -> np.ndarray:
        null_part = (np.eye(ctx.n) - ctx.P) @ self.complex_normal(ctx.n, ctx.n)
        return ctx.lift_map @ M @ ctx.embed_map + null_part

    def a_bounded(self, ctx: PsdContext) -> np.ndarray:
        return self.with_reduced(ctx, self.complex_normal(ctx.rank, ctx.rank))

    def a_selfadjoint(self, ctx: PsdContext) -> np.ndarray:
        G = self.complex_normal(ctx.rank, ctx.rank)
        return self.with_reduced(ctx, (G + G.conj().T) / 2)

    def a_normal(self, ctx: PsdContext) -> np.ndarray:
        Q = np.linalg.qr(self.complex_normal(ctx.rank, ctx.rank))[0]
        return self.with_reduced(ctx, Q @ np.diag(self.complex_normal(ctx.rank)) @ Q.conj().T)

    def a_diagonalizable(self, ctx: PsdContext) -> np.ndarray:
        """Reduced matrix S D S^-1 with ||S - I|| = 0.3, so cond(S) <= 13/7."""
        G = self.complex_normal(ctx.rank, ctx.rank)
        S = np.eye(ctx.rank) + 0.3 * G / np.linalg.norm(G, 2)
        return self.with_reduced(ctx, S @ np.diag(self.complex_normal(ctx.rank)) @ np.linalg.inv(S))

    def a_nilpotent2(self, ctx: PsdContext) -> np.ndarray:
        u = self.complex_normal(ctx.rank)
        v = self.complex_normal(ctx.rank)
        v -= np.vdot(u, v) / np.vdot(u, u) * u
        return self.with_reduced(ctx, np.outer(u, v.conj()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def instances(rng):
    return Instances(rng)


@pytest.fixture
def fast_cfg():
    """Lighter sampling for tests that compute many ranges."""
    return SampleConfig(n_x=256, n_angles=180, n_starts=12)


@pytest.fixture
def jordan():
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@pytest.fixture
def identity_ctx():
    return build_context(np.eye(3))
