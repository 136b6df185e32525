import logging
from collections.abc import Callable
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console
from semirange_core.configs import Config, SampleConfig, get_config
from semirange_core.errors import (
    DimensionMismatch,
    EmptyRange,
    NegativeEigenvalue,
    NotABounded,
    NotHermitian,
    ParseError,
    RankTooSmall,
    SemiRangeError,
)
from semirange_core.logging_config import setup_logging
from semirange_core.qrange import range_disk_union
from semirange_core.schemas import PsdContext, Suite
from semirange_core.semicore import build_context, classify
from semirange_core.spectra import a_spectrum
from semirange_core.verification import run_suite

from .io import MatrixFile, load_matrix_file, parse_q, write_range_artifacts
from .utils import RichReportRenderer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID_A = 3
EXIT_EMPTY_RANGE = 4
EXIT_CHECK_FAILED = 5

# First match wins, so subclasses go before SemiRangeError
EXIT_CODES: list[tuple[type[Exception], int]] = [
    (ParseError, EXIT_PARSE),
    (DimensionMismatch, EXIT_PARSE),
    (NotHermitian, EXIT_INVALID_A),
    (NegativeEigenvalue, EXIT_INVALID_A),
    (NotABounded, EXIT_INVALID_A),
    (EmptyRange, EXIT_EMPTY_RANGE),
    (RankTooSmall, EXIT_EMPTY_RANGE),
    (SemiRangeError, EXIT_PARSE),
]


def exit_code_for(error: Exception) -> int:
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    raise error


class SemiRangeCLI:
    def __init__(self, settings: Config):
        self._console = Console()
        self._err_console = Console(stderr=True)
        self.settings = settings
        self.verbose = False
        self.renderer = RichReportRenderer(self._console)
        self.app = typer.Typer(help="Numerical ranges and radii on semi-Hilbertian spaces", no_args_is_help=True)

        self._register_commands()

    def _register_commands(self):
        @self.app.callback()
        def main_callback(
            config: Annotated[
                Path | None,
                typer.Option("--config", help="YAML file overriding tolerances and sampling"),
            ] = None,
            verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Enable DEBUG logging")] = False,
        ):
            if config is not None:
                self.settings = get_config(config)
            self.verbose = verbose
            setup_logging("DEBUG" if verbose else self.settings.log_level)

        @self.app.command(name="classify")
        def classify_cmd(
            file: Annotated[Path, typer.Argument(help="JSON matrix file with A and T")],
        ):
            """Classify T relative to the weight A."""

            def run() -> int:
                document = load_matrix_file(file)
                ctx = self._context(document)
                report = classify(ctx, document.operator, self.settings.max_index)
                self.renderer.classification(ctx, report)
                return EXIT_OK

            self._dispatch(run)

        @self.app.command(name="range")
        def range_cmd(
            file: Annotated[Path, typer.Argument(help="JSON matrix file with A and T")],
            q: Annotated[str | None, typer.Option("--q", help="q as 're,im' (overrides the file)")] = None,
            samples: Annotated[int | None, typer.Option("--samples", min=1, help="Random unit vectors")] = None,
            angles: Annotated[int | None, typer.Option("--angles", min=3, help="Support-function grid size")] = None,
            seed: Annotated[int | None, typer.Option("--seed", help="Random seed")] = None,
            out: Annotated[Path, typer.Option("--out", help="Output prefix for .csv and .svg")] = Path("range"),
        ):
            """Compute W_qA(T) and write the boundary CSV and SVG figure."""

            def run() -> int:
                document = load_matrix_file(file)
                ctx = self._context(document)
                q_value = self._q(q, document)
                cfg = self._sampling(samples=samples, angles=angles, seed=seed)

                estimate = range_disk_union(ctx, document.operator, q_value, cfg)
                markers = q_value * a_spectrum(ctx, document.operator)
                outputs = write_range_artifacts(estimate, markers, out)
                self.renderer.range_summary(estimate, outputs)
                return EXIT_OK

            self._dispatch(run)

        @self.app.command()
        def verify(
            file: Annotated[Path, typer.Argument(help="JSON matrix file with A and T")],
            suite: Annotated[Suite, typer.Option("--suite", help="Which checks to run")] = Suite.ALL,
            q: Annotated[str | None, typer.Option("--q", help="q as 're,im' (overrides the file)")] = None,
            seed: Annotated[int | None, typer.Option("--seed", help="Random seed")] = None,
        ):
            """Run a verification suite and exit non-zero if any check fails."""

            def run() -> int:
                document = load_matrix_file(file)
                ctx = self._context(document)
                q_value = self._q(q, document)
                cfg = self._sampling(seed=seed)

                report = run_suite(ctx, document.operator, q_value, suite, cfg, max_index=self.settings.max_index)
                self.renderer.verification(report)
                return EXIT_OK if report.passed else EXIT_CHECK_FAILED

            self._dispatch(run)

    def _context(self, document: MatrixFile) -> PsdContext:
        return build_context(document.weight, self.settings.tolerance)

    def _q(self, flag: str | None, document: MatrixFile) -> complex:
        if flag is not None:
            return parse_q(flag)
        if document.q_value is not None:
            return document.q_value
        return 1.0 + 0.0j

    def _sampling(self, **overrides: int | None) -> SampleConfig:
        names = {"samples": "n_x", "angles": "n_angles", "seed": "seed"}
        update = {names[k]: v for k, v in overrides.items() if v is not None}
        return self.settings.effective_sampling.model_copy(update=update)

    def _dispatch(self, run: Callable[[], int]):
        try:
            code = run()
        except (SemiRangeError, OSError) as e:
            if self.verbose:
                logger.exception("Command failed")
            code = EXIT_PARSE if isinstance(e, OSError) else exit_code_for(e)
            self._err_console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(code)

    def __call__(self):
        self.app()
