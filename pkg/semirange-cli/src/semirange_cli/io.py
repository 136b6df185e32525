"""Matrix-file ingestion and run artifacts (boundary CSV, range SVG)."""

import json
import logging
import os
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from pydantic import BaseModel, ValidationError, model_validator
from semirange_core.errors import ParseError
from semirange_core.schemas import RangeEstimate

logger = logging.getLogger(__name__)

Pair = tuple[float, float]

Q_SLACK = 1e-12
CSV_COLUMNS = ["theta", "support", "boundary_re", "boundary_im"]
SVG_SIZE_PX = 800
_SVG_RC = {
    "svg.hashsalt": "semirange",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "axes.unicode_minus": False,
}


def _to_complex(rows) -> np.ndarray:
    pairs = np.asarray(rows, dtype=float)
    return pairs[..., 0] + 1j * pairs[..., 1]


class MatrixFile(BaseModel):
    """JSON document holding A, T and an optional q, complex entries as [re, im] pairs."""

    A: list[list[Pair]]
    T: list[list[Pair]]
    q: Pair | None = None

    @model_validator(mode="after")
    def check_shapes(self) -> "MatrixFile":
        n = len(self.A)
        if n == 0:
            raise ValueError("A must have at least one row")
        for name, rows in (("A", self.A), ("T", self.T)):
            if any(len(row) != len(rows) for row in rows):
                raise ValueError(f"{name} must be square")
            if len(rows) != n:
                raise ValueError(f"A is {n}x{n} but {name} is {len(rows)}x{len(rows)}")
        if self.q is not None and abs(complex(*self.q)) > 1.0 + Q_SLACK:
            raise ValueError(f"|q| must not exceed 1, got {abs(complex(*self.q)):.6g}")
        return self

    @property
    def weight(self) -> np.ndarray:
        return _to_complex(self.A).reshape(len(self.A), len(self.A))

    @property
    def operator(self) -> np.ndarray:
        return _to_complex(self.T).reshape(len(self.T), len(self.T))

    @property
    def q_value(self) -> complex | None:
        return None if self.q is None else complex(*self.q)


def load_matrix_file(path: Path) -> MatrixFile:
    """Reads and validates a matrix file.

    Raises:
        ParseError: Unreadable file, malformed JSON (with the byte offset) or invalid contents.
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e.strerror}") from e

    text = raw.decode("utf-8", errors="replace")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[: e.pos].encode("utf-8"))
        raise ParseError(f"{path}: {e.msg} at byte offset {offset}") from e

    try:
        document = MatrixFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise ParseError(f"{path}: {location}: {first['msg']}") from e

    logger.debug("Loaded %s: n=%d, q=%s", path, len(document.A), document.q_value)
    return document


def parse_q(text: str) -> complex:
    """Parses ``"re,im"`` (or a bare real part) into q with |q| <= 1."""
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 2:
        raise ParseError(f"Expected q as 're,im', got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError as e:
        raise ParseError(f"Expected q as 're,im', got {text!r}") from e
    q = complex(values[0], values[1] if len(values) == 2 else 0.0)
    if not np.isfinite(q.real) or not np.isfinite(q.imag):
        raise ParseError("q must be finite")
    if abs(q) > 1.0 + Q_SLACK:
        raise ParseError(f"|q| must not exceed 1, got {abs(q):.6g}")
    return q


### Atomic output
@contextmanager
def atomic_paths(*targets: Path) -> Iterator[list[Path]]:
    """Yields temporary paths next to ``targets``; all are moved into place only if the block succeeds."""
    targets = tuple(Path(t) for t in targets)
    temporaries: list[Path] = []
    try:
        for target in targets:
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
            os.close(fd)
            temporaries.append(Path(tmp_name))
        yield list(temporaries)
        for tmp, target in zip(temporaries, targets, strict=True):
            os.replace(tmp, target)
    finally:
        for tmp in temporaries:
            if tmp.exists():
                tmp.unlink()


def boundary_frame(estimate: RangeEstimate) -> pd.DataFrame:
    support = np.asarray(estimate.support_pairs, dtype=float).reshape(-1, 2)
    return pd.DataFrame(
        {
            "theta": support[:, 0],
            "support": support[:, 1],
            "boundary_re": estimate.boundary.real,
            "boundary_im": estimate.boundary.imag,
        },
        columns=CSV_COLUMNS,
    )


def _save_csv(estimate: RangeEstimate, path: Path):
    boundary_frame(estimate).to_csv(path, index=False, float_format="%.12e", lineterminator="\n")


def _closed(points: np.ndarray) -> np.ndarray:
    return np.append(points, points[:1]) if points.size else points


def render_range_figure(estimate: RangeEstimate, markers: np.ndarray) -> Figure:
    """Hull polyline, support envelope and the q-scaled spectrum markers on a square canvas."""
    size = SVG_SIZE_PX / 72.0
    fig = Figure(figsize=(size, size), dpi=72)
    ax = fig.add_subplot()

    envelope = _closed(estimate.boundary)
    ax.plot(envelope.real, envelope.imag, color="tab:blue", linewidth=0.8, linestyle="--", label="support envelope")
    hull = _closed(estimate.hull)
    if estimate.hull.size > 1:
        ax.plot(hull.real, hull.imag, color="black", linewidth=1.2, label="hull")
    else:
        ax.plot(hull.real, hull.imag, "o", color="black", label="hull")
    if markers.size:
        ax.plot(markers.real, markers.imag, "x", color="tab:red", markersize=8, label="q * A-spectrum")

    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"W_qA(T), q = {estimate.q.real:.4g}{estimate.q.imag:+.4g}i ({estimate.method})")
    ax.legend(loc="upper right", fontsize=9)
    return fig


def write_range_artifacts(estimate: RangeEstimate, markers: np.ndarray, prefix: Path) -> list[Path]:
    """Writes ``<prefix>.csv`` and ``<prefix>.svg``. Neither file appears unless both were produced."""
    prefix = Path(prefix)
    targets = [prefix.with_name(prefix.name + ".csv"), prefix.with_name(prefix.name + ".svg")]
    with matplotlib.rc_context(_SVG_RC):
        fig = render_range_figure(estimate, np.asarray(markers, dtype=complex))
        with atomic_paths(*targets) as (csv_tmp, svg_tmp):
            _save_csv(estimate, csv_tmp)
            fig.savefig(svg_tmp, format="svg", metadata={"Date": None})
    logger.debug("Wrote %s", ", ".join(str(t) for t in targets))
    return targets
