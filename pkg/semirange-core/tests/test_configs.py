"""Unit tests for configs module."""

import pytest
from pydantic import ValidationError
from semirange_core.configs import Config, SampleConfig, ToleranceConfig, deep_merge, get_config


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.rank_tol == 1e-10
        assert tol.eq_tol == 1e-9
        assert tol.opt_tol == 1e-8
        assert tol.geo_tol == 5e-2
        assert tol.radius_tol == 1e-4

    @pytest.mark.parametrize("field", ["rank_tol", "eq_tol", "opt_tol", "geo_tol", "radius_tol"])
    def test_rejects_non_positive(self, field):
        with pytest.raises(ValidationError):
            ToleranceConfig(**{field: 0.0})

    def test_is_frozen(self):
        with pytest.raises(ValidationError):
            ToleranceConfig().eq_tol = 1.0


class TestSampleConfig:
    def test_defaults(self):
        cfg = SampleConfig()
        assert (cfg.n_x, cfg.n_angles, cfg.n_starts, cfg.max_iter, cfg.seed) == (2048, 720, 32, 500, 0)
        assert cfg.refine_sweeps == 4
        assert cfg.workers is None

    def test_refinement_can_be_disabled(self):
        assert SampleConfig(refine_sweeps=0).refine_sweeps == 0

    def test_rejects_zero_samples(self):
        with pytest.raises(ValidationError):
            SampleConfig(n_x=0)


class TestConfig:
    @pytest.fixture(autouse=True)
    def clean_env(self, monkeypatch, tmp_path):
        for name in ("SEMIRANGE_THREADS", "SEMIRANGE_LOG_LEVEL", "SEMIRANGE_TOLERANCE__GEO_TOL"):
            monkeypatch.delenv(name, raising=False)
        # Keep a developer's .env out of the picture
        monkeypatch.chdir(tmp_path)

    def test_log_level_is_normalised(self):
        assert Config(log_level="debug").log_level == "DEBUG"

    def test_invalid_log_level_falls_back_to_warning(self):
        assert Config(log_level="chatty").log_level == "WARNING"

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("SEMIRANGE_THREADS", "3")
        config = Config()
        assert config.threads == 3
        assert config.effective_sampling.workers == 3

    def test_explicit_workers_win_over_threads(self, monkeypatch):
        monkeypatch.setenv("SEMIRANGE_THREADS", "3")
        config = Config(sampling=SampleConfig(workers=1))
        assert config.effective_sampling.workers == 1

    def test_nested_tolerance_from_environment(self, monkeypatch):
        monkeypatch.setenv("SEMIRANGE_TOLERANCE__GEO_TOL", "0.1")
        assert Config().tolerance.geo_tol == 0.1

    def test_yaml_override_merges(self, tmp_path):
        override = tmp_path / "override.yaml"
        override.write_text("tolerance:\n  geo_tol: 0.01\nsampling:\n  n_x: 64\n")

        config = get_config(override)
        assert config.tolerance.geo_tol == 0.01
        assert config.tolerance.eq_tol == 1e-9
        assert config.sampling.n_x == 64
        assert config.sampling.n_angles == 720

    def test_missing_yaml_is_ignored(self, tmp_path):
        assert get_config(tmp_path / "absent.yaml").sampling.n_x == 2048


class TestDeepMerge:
    def test_nested_keys_are_merged(self):
        base = {"a": {"x": 1, "y": 2}, "b": 3}
        assert deep_merge(base, {"a": {"y": 5}}) == {"a": {"x": 1, "y": 5}, "b": 3}

    def test_non_dict_replaces(self):
        assert deep_merge({"a": {"x": 1}}, {"a": 4}) == {"a": 4}
