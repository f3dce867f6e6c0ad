"""Falsification commands: falsify, laws, history."""

from typing import Optional

import typer

from rcdkit.commands.common import emit_json
from rcdkit.core.config import ConfigManager
from rcdkit.core.falsifier import run_law
from rcdkit.core.history import ReportStore
from rcdkit.core.laws import LAWS, get_law
from rcdkit.ui.display import KernelUI
from rcdkit.ui.log import configure_logging
from rcdkit.ui.progress import ProgressSpinner

falsify_app = typer.Typer()


@falsify_app.command("falsify")
def falsify(
    law_id: str = typer.Argument(..., metavar="LAW", help="Law id, e.g. L8 or SANITY-2"),
    trials: Optional[int] = typer.Option(None, "--trials", "-t", min=1, help="Number of trials"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Campaign seed"),
    n_min: Optional[int] = typer.Option(None, "--n-min", min=1, max=10, help="Smallest n"),
    n_max: Optional[int] = typer.Option(None, "--n-max", min=1, max=10, help="Largest n"),
    workers: Optional[int] = typer.Option(
        None, "--workers", "-w", min=1, max=64, help="Threads evaluating trials"
    ),
    expect_counterexample: bool = typer.Option(
        False, "--expect-counterexample", help="Succeed only if a counterexample is found"
    ),
    shrink: bool = typer.Option(False, "--shrink", help="Shrink every counterexample"),
    record: bool = typer.Option(True, "--record/--no-record", help="Store the report"),
    json_output: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Run a seeded falsification campaign for one law.

    Exits 0 when the outcome matches the expectation (no counterexample for a
    theorem, at least one for a sanity law or with --expect-counterexample),
    3 otherwise.
    """
    configure_logging(verbose)
    law = get_law(law_id)
    config = ConfigManager().load()
    low = n_min if n_min is not None else config.n_min
    high = n_max if n_max is not None else config.n_max
    if low > high:
        raise typer.BadParameter(f"--n-min {low} exceeds --n-max {high}")

    with ProgressSpinner(f"Falsifying {law.id}..."):
        report = run_law(
            law.id,
            trials if trials is not None else config.trials,
            seed if seed is not None else config.seed,
            (low, high),
            workers=workers if workers is not None else config.workers,
            shrink_found=shrink,
            expect_counterexample=expect_counterexample,
        )

    if record:
        ReportStore(keep=config.keep_reports).add_report(report)

    if json_output:
        emit_json(report)
    else:
        KernelUI.show_law_report(report)

    raise typer.Exit(0 if report.passed else 3)


@falsify_app.command("laws")
def laws(
    json_output: bool = typer.Option(False, "--json", help="Print the registry as JSON"),
):
    """List the registered laws."""
    if json_output:
        emit_json(
            [
                {
                    "id": law.id,
                    "statement": law.statement,
                    "anchor": law.anchor,
                    "generator_hint": list(law.generator_hint),
                    "expect_counterexample": law.expect_counterexample,
                }
                for law in LAWS.values()
            ]
        )
    else:
        KernelUI.show_laws(list(LAWS.values()))


@falsify_app.command("history")
def history(
    limit: int = typer.Option(10, "--limit", "-n", min=1, help="Number of campaigns to show"),
    json_output: bool = typer.Option(False, "--json", help="Print the reports as JSON"),
):
    """View recorded falsification campaigns."""
    entries = ReportStore().get_reports(limit=limit)
    if json_output:
        emit_json([entry.model_dump(mode="json", exclude_none=True) for entry in entries])
    else:
        KernelUI.show_reports(entries)
