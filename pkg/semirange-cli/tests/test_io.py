"""Unit tests for io module."""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest
from matplotlib.figure import Figure
from numpy.testing import assert_allclose
from semirange_cli.io import (
    CSV_COLUMNS,
    atomic_paths,
    load_matrix_file,
    parse_q,
    write_range_artifacts,
)
from semirange_core.configs import SampleConfig
from semirange_core.errors import ParseError
from semirange_core.qrange import range_disk_union
from semirange_core.semicore import build_context


def _pairs(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[v.real, v.imag] for v in row] for row in M]


@pytest.fixture
def estimate():
    ctx = build_context(np.eye(2))
    T = np.array([[1.0, 1.0], [0.0, -1.0]])
    return range_disk_union(ctx, T, 1.0, SampleConfig(n_x=64, n_angles=24, refine_sweeps=1))


class TestLoadMatrixFile:
    def test_valid_document(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"A": _pairs(np.eye(2)), "T": _pairs([[0, 1j], [0, 0]]), "q": [0.5, 0.25]}))

        document = load_matrix_file(path)
        assert_allclose(document.weight, np.eye(2))
        assert document.operator[0, 1] == 1j
        assert document.q_value == 0.5 + 0.25j

    def test_q_is_optional(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"A": _pairs(np.eye(1)), "T": _pairs(np.eye(1))}))
        assert load_matrix_file(path).q_value is None

    def test_reports_byte_offset(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"é": x}', encoding="utf-8")
        with pytest.raises(ParseError, match="byte offset 7"):
            load_matrix_file(path)

    def test_rejects_non_square(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"A": [[[1, 0], [0, 0]]], "T": _pairs(np.eye(1))}))
        with pytest.raises(ParseError, match="square"):
            load_matrix_file(path)

    def test_rejects_mismatched_dimensions(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"A": _pairs(np.eye(2)), "T": _pairs(np.eye(3))}))
        with pytest.raises(ParseError):
            load_matrix_file(path)

    def test_rejects_large_q(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"A": _pairs(np.eye(2)), "T": _pairs(np.eye(2)), "q": [1.0, 1.0]}))
        with pytest.raises(ParseError, match="q"):
            load_matrix_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="Cannot read"):
            load_matrix_file(tmp_path / "absent.json")


class TestParseQ:
    def test_real_and_imaginary(self):
        assert parse_q("0.3,-0.4") == 0.3 - 0.4j

    def test_bare_real_part(self):
        assert parse_q(" 0.5 ") == 0.5

    @pytest.mark.parametrize("text", ["", "a,b", "1,2,3", "0.9,0.9", "nan"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_q(text)


class TestArtifacts:
    def test_boundary_csv(self, estimate, tmp_path):
        csv_path, _ = write_range_artifacts(estimate, np.array([1.0, -1.0]), tmp_path / "out" / "range")
        frame = pd.read_csv(csv_path)
        assert list(frame.columns) == CSV_COLUMNS
        assert len(frame) == 24
        assert_allclose(frame["theta"], estimate.angles, rtol=1e-11)
        assert_allclose(frame["support"], estimate.support, rtol=1e-11)
        assert "\r" not in csv_path.read_text()

    def test_range_svg(self, estimate, tmp_path):
        _, svg_path = write_range_artifacts(estimate, np.array([1.0, -1.0]), tmp_path / "range")
        root = ET.parse(svg_path).getroot()
        assert root.tag.endswith("svg")
        assert root.attrib["viewBox"] == "0 0 800 800"

    def test_artifacts_are_reproducible(self, estimate, tmp_path):
        first = write_range_artifacts(estimate, np.array([1.0]), tmp_path / "a")
        second = write_range_artifacts(estimate, np.array([1.0]), tmp_path / "b")
        for left, right in zip(first, second, strict=True):
            assert left.read_bytes() == right.read_bytes()

    def test_no_temporary_files_remain(self, estimate, tmp_path):
        write_range_artifacts(estimate, np.array([]), tmp_path / "range")
        assert sorted(p.name for p in tmp_path.iterdir()) == ["range.csv", "range.svg"]

    def test_failed_write_leaves_nothing(self, tmp_path):
        with pytest.raises(RuntimeError):
            with atomic_paths(tmp_path / "range.csv", tmp_path / "range.svg") as (tmp, _):
                tmp.write_text("partial")
                raise RuntimeError("interrupted")
        assert list(tmp_path.iterdir()) == []

    def test_failed_figure_keeps_csv_out(self, estimate, tmp_path, monkeypatch):
        def broken_figure(*args, **kwargs):
            raise OSError("renderer unavailable")

        monkeypatch.setattr("semirange_cli.io.render_range_figure", broken_figure)
        with pytest.raises(OSError, match="renderer"):
            write_range_artifacts(estimate, np.array([1.0]), tmp_path / "range")
        assert list(tmp_path.iterdir()) == []

    def test_failed_svg_save_keeps_csv_out(self, estimate, tmp_path, monkeypatch):
        def broken_save(self, *args, **kwargs):
            raise OSError("disk full")

        monkeypatch.setattr(Figure, "savefig", broken_save)
        with pytest.raises(OSError, match="disk full"):
            write_range_artifacts(estimate, np.array([1.0]), tmp_path / "range")
        assert list(tmp_path.iterdir()) == []
