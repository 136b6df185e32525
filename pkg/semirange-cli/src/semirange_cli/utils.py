from pathlib import Path

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from semirange_core.schemas import (
    CheckResult,
    CheckStatus,
    ClassificationReport,
    PsdContext,
    RangeEstimate,
    VerificationReport,
)

_STATUS_STYLE = {
    CheckStatus.PASSED: "[green]pass[/green]",
    CheckStatus.FAILED: "[bold red]FAIL[/bold red]",
    CheckStatus.SKIPPED: "[dim]skip[/dim]",
}


def _number(value: float | None) -> str:
    return "-" if value is None else f"{value:.3e}"


class RichReportRenderer:
    def __init__(self, console: Console):
        self.console = console

    def classification(self, ctx: PsdContext, report: ClassificationReport):
        table = Table(show_header=False, box=None, padding=(0, 2))
        table.add_column("Key", style="dim")
        table.add_column("Value", style="green")
        table.add_row("n", str(ctx.n))
        table.add_row("rank(A)", str(ctx.rank))
        for key, value in report.model_dump().items():
            table.add_row(key, str(value))

        self.console.print(
            Panel(
                table,
                title="[bold cyan]Classification[/bold cyan]",
                title_align="left",
                border_style="cyan",
            ),
        )

    def range_summary(self, estimate: RangeEstimate, outputs: list[Path]):
        table = Table(show_header=False, box=None, padding=(0, 2))
        table.add_column("Key", style="dim")
        table.add_column("Value", style="green")
        table.add_row("q", f"{estimate.q.real:.6g}{estimate.q.imag:+.6g}i")
        table.add_row("method", str(estimate.method))
        table.add_row("radius_est", f"{estimate.radius_est:.10g}")
        disks = estimate.disks
        widest = max(disks, key=lambda disk: disk.radius, default=None)
        if widest is None:
            table.add_row("disks", "0")
        else:
            table.add_row("disks", f"{len(disks)}, widest radius {widest.radius:.6g} at {widest.center:.6g}")
        table.add_row("hull vertices", str(estimate.hull.size))
        for path in outputs:
            table.add_row("wrote", str(path))

        self.console.print(
            Panel(
                table,
                title="[bold green]Numerical range[/bold green]",
                title_align="left",
                border_style="green",
            ),
        )

    def verification(self, report: VerificationReport):
        table = Table(
            title=f"Verification suite: {report.suite}",
            title_style="bold magenta",
            show_header=True,
            header_style="bold cyan",
            box=box.SIMPLE,
        )
        table.add_column("Check", style="bright_blue")
        table.add_column("Statement")
        table.add_column("Measured", justify="right")
        table.add_column("Slack", justify="right")
        table.add_column("Status", justify="center")

        for check in report.checks:
            table.add_row(
                check.name,
                check.anchor,
                _number(check.measured),
                _number(check.slack),
                _STATUS_STYLE[check.status],
            )
        self.console.print(table)

        for check in report.checks:
            if check.status == CheckStatus.FAILED:
                self._failure(check)

        passed = sum(c.status == CheckStatus.PASSED for c in report.checks)
        skipped = sum(c.status == CheckStatus.SKIPPED for c in report.checks)
        self.console.print(
            f"{passed} passed, {len(report.failures)} failed, {skipped} skipped",
            style="bold green" if report.passed else "bold red",
        )

    def _failure(self, check: CheckResult):
        self.console.print(
            f"[bold red]Failed:[/bold red] {check.name} ({check.anchor}): "
            f"measured {_number(check.measured)}, bound {_number(check.bound)}, "
            f"tolerance {_number(check.tolerance)}. {check.detail}"
        )
