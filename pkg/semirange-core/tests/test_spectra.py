"""Unit tests for spectra module."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from semirange_core.errors import NotABounded, NotAInvertible
from semirange_core.semicore import build_context, generate_a_unitary, sharp_adjoint
from semirange_core.spectra import (
    a_inverse,
    a_point_spectrum,
    a_spectral_radius,
    a_spectrum,
    cluster_values,
    in_a_spectrum,
    spectrum_report,
)


class TestASpectrum:
    @pytest.fixture
    def ctx(self):
        return build_context(np.diag([2.0, 1.0, 0.0]))

    def test_null_space_eigenvalue_is_excluded(self, ctx):
        T = np.diag([3.0, 5.0, 7.0])
        assert_allclose(a_spectrum(ctx, T), [3.0, 5.0])
        assert_allclose(a_point_spectrum(ctx, T), [3.0, 5.0])

    def test_defining_test(self, ctx):
        T = np.diag([3.0, 5.0, 7.0])
        assert in_a_spectrum(ctx, T, 3.0)
        assert in_a_spectrum(ctx, T, 5.0)
        assert not in_a_spectrum(ctx, T, 7.0)
        assert not in_a_spectrum(ctx, T, 0.0)

    def test_a_inverse(self, ctx):
        T = np.diag([2.0, 4.0, 9.0])
        S = a_inverse(ctx, T)
        assert_allclose(ctx.A @ T @ S, ctx.A, atol=1e-12)
        assert_allclose(ctx.A @ S @ T, ctx.A, atol=1e-12)

    def test_singular_reduced_operator(self, ctx):
        with pytest.raises(NotAInvertible):
            a_inverse(ctx, np.diag([0.0, 1.0, 5.0]))

    def test_requires_a_bounded(self):
        ctx = build_context(np.diag([1.0, 0.0]))
        with pytest.raises(NotABounded):
            a_spectrum(ctx, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_report_collects_everything(self, instances):
        ctx = instances.context(4, 3)
        report = spectrum_report(ctx, instances.a_bounded(ctx), n_max=5)
        assert report.full.size == 3
        assert_allclose(report.point, report.full, atol=1e-8)
        assert_allclose(report.approx, report.point)
        assert len(report.radius_limit_estimates) == 5


class TestSpectralRadius:
    def test_diagonal(self):
        result = a_spectral_radius(build_context(np.diag([1.0, 1.0, 0.0])), np.diag([-5.0, 2.0, 11.0]), n_max=10)
        assert result.radius_exact == pytest.approx(5.0)
        assert result.radius_limit_estimates[-1] == (10, pytest.approx(5.0))

    def test_estimates_never_undercut_the_radius(self, instances):
        ctx = instances.context(4, 3)
        result = a_spectral_radius(ctx, instances.a_bounded(ctx))
        assert all(value >= result.radius_exact - 1e-9 for _, value in result.radius_limit_estimates)

    def test_nilpotent_has_zero_radius(self, instances):
        ctx = instances.context(5, 3)
        assert a_spectral_radius(ctx, instances.a_nilpotent2(ctx)).radius_exact == pytest.approx(0.0, abs=1e-6)

    def test_invariant_under_a_unitary_conjugation(self, instances):
        ctx = instances.context(4, 3)
        T = instances.a_bounded(ctx)
        U = generate_a_unitary(ctx, seed=5)
        conjugated = U @ T @ sharp_adjoint(ctx, U)
        assert a_spectral_radius(ctx, conjugated).radius_exact == pytest.approx(
            a_spectral_radius(ctx, T).radius_exact, rel=1e-8
        )

    def test_rejects_non_positive_n_max(self):
        with pytest.raises(ValueError, match="n_max"):
            a_spectral_radius(build_context(np.eye(2)), np.eye(2), n_max=0)


class TestClusterValues:
    def test_collapses_close_values(self):
        values = np.array([1.0, 1.0 + 1e-12, 2.0, 2.0 - 1e-12j])
        assert_allclose(cluster_values(values, 1e-9), [1.0, 2.0 - 1e-12j])

    def test_keeps_distinct_values(self):
        assert cluster_values(np.array([0.0, 0.5, 1.0]), 0.1).size == 3
