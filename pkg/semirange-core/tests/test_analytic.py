"""Unit tests for analytic module."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from semirange_core.analytic import (
    INDEX3_BREAKPOINT,
    assemble_index3,
    assemble_square_zero,
    bound_ledger,
    ellipse_distance,
    half_norm_check,
    index3_block_norms,
    index3_bound,
    legacy_nilpotent2_bound,
    nilpotent2_bound,
    nilpotent2_check,
    power_limit_check,
    refinement_inequality_grid,
    selfadjoint_ellipse,
    squarezero_cross_check,
    squarezero_exact_radius,
    unitary_equivalence_check,
)
from semirange_core.configs import SampleConfig
from semirange_core.errors import EmptyRange, NotANilpotent2, NotASelfAdjoint, NotHermitian, QZero
from semirange_core.qrange import q_radius
from semirange_core.reduction import build_tilde
from semirange_core.schemas import CheckStatus
from semirange_core.semicore import a_operator_norm, build_context, spectral_norm
from semirange_core.spectra import a_spectral_radius


class TestSelfAdjointEllipse:
    def test_diagonal_operator(self):
        ellipse = selfadjoint_ellipse(build_context(np.eye(2)), np.diag([1.0, -1.0]), 0.5)
        assert ellipse.focus1 == pytest.approx(0.5)
        assert ellipse.focus2 == pytest.approx(-0.5)
        assert ellipse.semi_major == pytest.approx(1.0)
        assert ellipse.semi_minor == pytest.approx(np.sqrt(0.75))
        assert ellipse.center == pytest.approx(0.0)

    def test_segment_when_q_is_unimodular(self):
        ellipse = selfadjoint_ellipse(build_context(np.eye(2)), np.diag([3.0, 1.0]), 1.0)
        assert ellipse.semi_minor == 0.0
        assert ellipse.center == pytest.approx(2.0)

    def test_contains(self):
        ellipse = selfadjoint_ellipse(build_context(np.eye(2)), np.diag([1.0, -1.0]), 0.5)
        assert ellipse.contains(ellipse.boundary(64), atol=1e-9).all()
        assert ellipse.contains(np.array([0.0, 0.9, 0.8j])).tolist() == [True, True, True]
        assert not ellipse.contains(np.array([1.1 + 0j]))[0]

    def test_matches_sampled_range(self, instances, fast_cfg, rng):
        shapes = [(4, 3), (5, 3), (5, 4), (6, 3), (6, 4)]
        for k in range(20):
            ctx = instances.context(*shapes[k % len(shapes)])
            T = instances.a_selfadjoint(ctx)
            q = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            eigenvalues = np.linalg.eigvalsh(build_tilde(ctx, T).matrix)
            span = abs(eigenvalues[0]) + abs(eigenvalues[-1])
            assert ellipse_distance(ctx, T, q, fast_cfg) <= 0.05 * (span + 1.0)

    def test_rejects_non_selfadjoint(self, jordan):
        with pytest.raises(NotASelfAdjoint):
            selfadjoint_ellipse(build_context(np.eye(2)), jordan, 0.5)

    def test_empty_for_rank_one(self):
        with pytest.raises(EmptyRange):
            selfadjoint_ellipse(build_context(np.diag([1.0, 0.0])), np.eye(2), 0.5)


class TestClosedFormBounds:
    def test_nilpotent2_bound(self):
        assert nilpotent2_bound(1.0, 0.6) == pytest.approx(0.9)
        assert nilpotent2_bound(2.0, 0.8j) == pytest.approx(1.6)
        assert nilpotent2_bound(1.0, 1.0) == pytest.approx(0.5)

    def test_legacy_bound(self):
        assert legacy_nilpotent2_bound(1.0, 0.6) == pytest.approx(1.1)

    def test_refinement_holds_on_grid(self):
        check = refinement_inequality_grid()
        assert check.status == CheckStatus.PASSED
        assert check.measured <= 1e-12

    def test_index3_bound_branches(self):
        assert index3_bound(1.0, 2.0, 0.5) == pytest.approx(2.0 * np.sqrt(2.0))
        assert index3_bound(1.0, 1.0, 1.0) == pytest.approx((1.0 + np.sqrt(2.0)) / 2.0)

    def test_index3_bound_is_continuous(self):
        below = index3_bound(1.0, 1.0, INDEX3_BREAKPOINT)
        above = index3_bound(1.0, 1.0, np.nextafter(INDEX3_BREAKPOINT, 1.0))
        assert above == pytest.approx(below, abs=1e-12)

    def test_index3_rejects_negative_norms(self):
        with pytest.raises(ValueError):
            index3_bound(-1.0, 1.0, 0.5)


class TestSquareZero:
    def test_exact_radius(self):
        assert squarezero_exact_radius(np.diag([2.0, -1.0]), 0.8) == pytest.approx(1.6)

    def test_assembled_operator_squares_to_zero(self):
        T = assemble_square_zero(np.diag([2.0, -1.0]))
        assert T.shape == (4, 4)
        assert_allclose(T @ T, 0.0)

    def test_cross_check(self, fast_cfg):
        check = squarezero_cross_check(np.diag([2.0, -1.0]), 0.8, fast_cfg)
        assert check.status == CheckStatus.PASSED

    def test_rejects_non_hermitian_block(self, jordan):
        with pytest.raises(NotHermitian):
            squarezero_exact_radius(jordan, 0.5)

    def test_rejects_q_outside_unit_interval(self):
        with pytest.raises(ValueError):
            squarezero_exact_radius(np.eye(2), 1.5)


class TestNilpotent2:
    def test_range_is_a_disk_below_the_bound(self, instances, fast_cfg, rng):
        for k in range(20):
            ctx = instances.context(5, 3 + k % 2)
            q = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            result = nilpotent2_check(ctx, instances.a_nilpotent2(ctx), q, fast_cfg)
            assert result.is_disk
            assert result.variation <= 0.05
            assert result.passed
            assert result.radius <= result.bound + 1e-6

    def test_half_norm(self, instances, fast_cfg):
        ctx = instances.context(5, 3)
        assert half_norm_check(ctx, instances.a_nilpotent2(ctx), fast_cfg).status == CheckStatus.PASSED

    def test_rejects_other_operators(self, identity_ctx, fast_cfg):
        with pytest.raises(NotANilpotent2):
            nilpotent2_check(identity_ctx, np.eye(3), 0.5, fast_cfg)
        with pytest.raises(NotANilpotent2):
            half_norm_check(identity_ctx, np.eye(3), fast_cfg)


class TestIndex3:
    def test_block_norms_are_recovered(self, instances):
        S1, S2 = instances.complex_normal(2, 2), instances.complex_normal(2, 2)
        ctx = build_context(np.eye(6))
        norms = index3_block_norms(ctx, assemble_index3(S1, S2), 2)
        assert norms == pytest.approx((spectral_norm(S1), spectral_norm(S2)))

    def test_other_shapes_give_none(self, instances):
        ctx = build_context(np.eye(6))
        assert index3_block_norms(ctx, instances.complex_normal(6, 6), 2) is None
        assert index3_block_norms(ctx, np.eye(6), 4) is None

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0 / np.sqrt(2.0), 0.9, 1.0])
    def test_radius_respects_bound(self, instances, fast_cfg, q):
        ctx = build_context(np.eye(6))
        for _ in range(4):
            S1, S2 = instances.complex_normal(2, 2), instances.complex_normal(2, 2)
            bound = index3_bound(spectral_norm(S1), spectral_norm(S2), q)
            assert q_radius(ctx, assemble_index3(S1, S2), q, fast_cfg) <= bound + 1e-6


class TestBoundLedger:
    def test_jordan_cell(self, jordan, fast_cfg):
        ledger = bound_ledger(build_context(np.eye(2)), jordan, 0.6, fast_cfg)
        assert ledger.measured == pytest.approx(0.9, abs=1e-3)
        assert ledger.maincor_lower_i == pytest.approx(0.3, abs=1e-3)
        assert ledger.maincor_lower_ii == pytest.approx(0.3)
        assert ledger.maincor_upper == pytest.approx(1.0)
        assert ledger.nilpotent2_upper == pytest.approx(0.9)
        assert ledger.legacy_nilpotent2_upper == pytest.approx(1.1)
        assert ledger.selfadjoint_lower is None
        assert ledger.holds

    def test_selfadjoint_lower_bound(self, instances, fast_cfg):
        ctx = instances.context(4, 3)
        ledger = bound_ledger(ctx, instances.a_selfadjoint(ctx), 0.5, fast_cfg)
        assert ledger.selfadjoint_lower is not None
        assert ledger.nilpotent2_upper is None
        assert ledger.holds

    def test_index3_entry(self, instances, fast_cfg):
        T = assemble_index3(instances.complex_normal(2, 2), instances.complex_normal(2, 2))
        ledger = bound_ledger(build_context(np.eye(6)), T, 0.5, fast_cfg, index3_block=2)
        assert ledger.index3_upper is not None
        assert "index3_upper" in ledger.upper_bounds
        assert ledger.holds


class TestPowerLimit:
    def test_estimates_are_bracketed(self, instances, fast_cfg):
        ctx = instances.context(4, 3)
        T = instances.a_normal(ctx)
        radius = a_spectral_radius(ctx, T).radius_exact
        estimates = power_limit_check(ctx, T, 0.8, n_max=4, cfg=fast_cfg)
        assert [k for k, _ in estimates] == [1, 2, 3, 4]
        for k, value in estimates:
            assert (0.4 ** (1.0 / k)) * radius - 1e-9 <= value
            assert value <= a_operator_norm(ctx, np.linalg.matrix_power(T, k)) ** (1.0 / k) + 1e-9

    def test_converges_for_diagonalizable_operators(self, instances):
        cfg = SampleConfig(n_x=128, n_angles=60, n_starts=8, refine_sweeps=1)
        for _ in range(20):
            ctx = instances.context(4, 3)
            T = instances.a_diagonalizable(ctx)
            radius = a_spectral_radius(ctx, T).radius_exact
            _, last = power_limit_check(ctx, T, 0.8, n_max=20, cfg=cfg)[-1]
            assert abs(last - radius) <= 0.05 * (1.0 + radius)

    def test_rejects_q_zero(self, identity_ctx):
        with pytest.raises(QZero):
            power_limit_check(identity_ctx, np.eye(3), 0.0)


class TestUnitaryEquivalence:
    def test_range_and_radius_are_invariant(self, instances, fast_cfg):
        ctx = instances.context(4, 3)
        result = unitary_equivalence_check(ctx, instances.a_normal(ctx), 0.5, seed=3, cfg=fast_cfg)
        assert result.passed

    def test_invariant_over_many_unitaries(self, instances, fast_cfg):
        ctx = instances.context(5, 3)
        T = instances.a_bounded(ctx)
        norm = a_operator_norm(ctx, T)
        for seed in range(20):
            result = unitary_equivalence_check(ctx, T, 0.6 + 0.2j, seed=seed, cfg=fast_cfg)
            assert result.radius_diff <= 1e-4 * max(1.0, norm)
            assert result.hull_hausdorff <= 0.05 * norm
