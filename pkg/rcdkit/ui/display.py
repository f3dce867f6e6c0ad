"""Rich-based rendering of profiles, verdicts and campaign reports."""

from typing import Dict, Iterable, List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from rcdkit.models import (
    LawReport,
    OracleResult,
    PropertyProfile,
    PropertyVerdict,
    RcdVerdict,
    Witness,
)

console = Console()
err_console = Console(stderr=True)


def _blocks(blocks: Sequence[Sequence[int]]) -> str:
    return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in blocks) + "}"


def _witness_text(witness: Optional[Witness]) -> str:
    if witness is None:
        return ""
    parts = []
    for name in ("x", "y", "z"):
        value = getattr(witness, name)
        if value is not None:
            parts.append(f"{name}={value}")
    if witness.set_a is not None:
        parts.append(f"A={_blocks([witness.set_a])[1:-1]}")
    if witness.set_b is not None:
        parts.append(f"B={_blocks([witness.set_b])[1:-1]}")
    if witness.lhs is not None or witness.rhs is not None:
        parts.append(f"{witness.lhs} vs {witness.rhs}")
    if witness.note:
        parts.append(witness.note)
    return escape("  ".join(parts))


def _mark(holds: bool) -> Text:
    return Text("✓", style="green") if holds else Text("✗", style="red")


class KernelUI:
    """UI components for rcdkit using Rich."""

    @classmethod
    def show_profile(cls, profile: PropertyProfile, names: dict):
        console.print()
        console.print(
            f"[bold]sigma(R)[/bold] {_blocks(profile.sigma)}   "
            f"[bold]partition[/bold] {_blocks(profile.partition)} "
            f"[dim]({profile.partition_source})[/dim]"
        )
        console.print()

        table = Table(show_header=True, header_style="bold magenta", box=None)
        table.add_column("Property", style="cyan")
        table.add_column("", width=2)
        table.add_column("Witness / certificate", style="white")
        for code, verdict in profile.verdicts.items():
            detail = _witness_text(verdict.witness)
            if verdict.holds and verdict.certificate is not None:
                detail = f"[dim]on {_blocks([verdict.certificate])[1:-1]}[/dim]"
            table.add_row(f"{code}  {names.get(code, '')}", _mark(verdict.holds), detail)
        console.print(table)
        console.print()

    @classmethod
    def show_block_kernel(cls, atoms: Sequence[Sequence[int]], rows: Sequence[Sequence[str]]):
        """Mass each sigma(R) atom sends to each atom; the identity on positive atoms iff (T)."""
        labels = [_blocks([atom])[1:-1] for atom in atoms]
        table = Table(title="Q between atoms", header_style="bold magenta", box=None)
        table.add_column("from", style="cyan")
        for label in labels:
            table.add_column(label, justify="right")
        for label, row in zip(labels, rows):
            table.add_row(label, *row)
        console.print(table)
        console.print()

    @classmethod
    def show_verdict(cls, verdict: PropertyVerdict, name: str = ""):
        label = f"{verdict.prop} {name}".strip()
        if verdict.holds:
            console.print(f"[bold green]✓[/bold green] {label} holds")
        else:
            detail = _witness_text(verdict.witness)
            console.print(f"[bold red]✗[/bold red] {label} fails: {detail}")

    @classmethod
    def show_rcd(cls, verdict: RcdVerdict):
        if verdict.is_rcd:
            blocks = _blocks(verdict.conditioning)
            console.print(f"[bold green]✓ r.c.d.[/bold green] conditioning on {blocks}")
        else:
            condition = verdict.failed_condition.value if verdict.failed_condition else "?"
            console.print(f"[bold red]✗ not an r.c.d.[/bold red] ({condition})")
            if verdict.witness is not None:
                console.print(f"  [dim]{_witness_text(verdict.witness)}[/dim]")
        if verdict.abs_continuous is not None:
            console.print(f"  rows absolutely continuous: {verdict.abs_continuous}")

    @classmethod
    def show_measure(cls, weights: Iterable[str], title: str = "pi"):
        console.print(f"[bold]{title}[/bold] = ({', '.join(weights)})")

    @classmethod
    def show_measure_summary(cls, summary: Dict):
        cls.show_measure(summary["nu"], "nu")
        console.print(f"support {_blocks([summary['support']])[1:-1]}")
        if "partition" in summary:
            console.print(f"partition {_blocks(summary['partition'])}")
            console.print(f"trace on support {_blocks(summary['trace'])}")
        console.print("[dim]no kernel R: properties not evaluated[/dim]")

    @classmethod
    def show_oracle(cls, result: OracleResult):
        console.print(f"[dim]scanned {result.partitions_scanned} partitions[/dim]")
        if not result.accepted:
            console.print("[bold red]✗[/bold red] no partition makes R an r.c.d.")
            return
        for blocks in result.accepted:
            console.print(f"[bold green]✓[/bold green] {_blocks(blocks)}")

    @classmethod
    def show_law_report(cls, report: LawReport):
        console.print()
        status = "[green]as expected[/green]" if report.passed else "[red]UNEXPECTED[/red]"
        console.print(f"[bold]{report.law}[/bold]  {escape(report.statement)}  {status}")
        console.print(
            f"[dim]trials {report.trials}  premise hits {report.premise_hits} "
            f"({report.premise_rate:.1%})  seed {report.seed}  n in {report.n_range}  "
            f"{report.generator_version}  {report.elapsed_seconds:.2f}s[/dim]"
        )
        if report.counterexamples:
            first = report.counterexamples[0]
            console.print(
                Panel(
                    f"trial {first.trial}, n = {first.instance.n}\n"
                    f"{_witness_text(first.witness)}",
                    title=f"[bold]{len(report.counterexamples)} counterexample(s)[/bold]",
                    border_style="red" if not report.expect_counterexample else "yellow",
                )
            )
        console.print()

    @classmethod
    def show_laws(cls, laws: List):
        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("Law", style="cyan")
        table.add_column("Statement", style="white")
        table.add_column("Generators", style="dim")
        table.add_column("Expect", width=8)
        for law in laws:
            table.add_row(
                law.id,
                escape(law.statement),
                ", ".join(law.generator_hint),
                "refuted" if law.expect_counterexample else "holds",
            )
        console.print(table)

    @classmethod
    def show_reports(cls, entries: List):
        if not entries:
            console.print("[dim]No recorded campaigns yet.[/dim]")
            return

        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("Time", style="cyan", width=16)
        table.add_column("Law", style="white")
        table.add_column("Trials", justify="right")
        table.add_column("Premise", justify="right")
        table.add_column("CEs", justify="right")
        table.add_column("Seed", justify="right", style="dim")
        for entry in entries:
            report = entry.report
            table.add_row(
                entry.timestamp[:16].replace("T", " "),
                report.law,
                str(report.trials),
                f"{report.premise_rate:.0%}",
                Text(str(len(report.counterexamples)), style="green" if report.passed else "red"),
                str(report.seed),
            )
        console.print(table)

    @classmethod
    def show_error(cls, message: str):
        """Display an error message."""
        err_console.print(f"[bold red]Error:[/bold red] {escape(message)}", highlight=False)

    @classmethod
    def show_warning(cls, message: str):
        """Display a warning message."""
        err_console.print(f"[bold yellow]Warning:[/bold yellow] {escape(message)}", highlight=False)
