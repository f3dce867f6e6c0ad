"""Property analysis commands: analyze and check."""

from typing import Dict, Optional

import typer

from rcdkit.commands.common import emit_json, load, load_with_kernel
from rcdkit.core.instance import Instance, parse_partition_spec
from rcdkit.core.measures import support
from rcdkit.core.partitions import trace
from rcdkit.core.props import (
    PROPERTY_CODES,
    PROPERTY_NAMES,
    UNRESTRICTED,
    RestrictionScope,
    profile,
    run_check,
)
from rcdkit.core.rational import format_rat
from rcdkit.core.rcd import block_kernel, sigma_of_kernel
from rcdkit.ui.display import KernelUI
from rcdkit.ui.log import configure_logging

analyze_app = typer.Typer()

NEEDS_PARTITION = ("P", "T", "trivial")


def _measure_summary(inst: Instance, partition: Optional[str]) -> Dict[str, object]:
    """What analyze reports for a document without a kernel."""
    carrier = support(inst.nu)
    summary: Dict[str, object] = {
        "n": inst.n,
        "nu": [format_rat(w) for w in inst.nu.weights],
        "support": carrier.sorted(),
    }
    chosen = parse_partition_spec(partition, inst.n) if partition is not None else inst.partition
    if chosen is not None:
        summary["partition"] = chosen.as_lists()
        summary["trace"] = trace(chosen, carrier).as_lists()
    return summary


@analyze_app.command("analyze")
def analyze(
    file: str = typer.Argument(..., help="Instance document, or - for stdin"),
    sigma: bool = typer.Option(False, "--sigma", help="Ignore the document's partition"),
    blocks: bool = typer.Option(
        False, "--blocks", help="Also show the kernel between sigma(R) atoms"
    ),
    partition: Optional[str] = typer.Option(
        None, "--partition", "-p", help="Partition as [[0],[1,2]] or 0/1,2"
    ),
    json_output: bool = typer.Option(False, "--json", help="Print the profile as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Full property profile of R and nu against sigma(R) or a partition.

    Documents without R get a summary of nu and the partition's trace on its support.
    """
    configure_logging(verbose)
    inst = load(file)
    if inst.kernel is None:
        summary = _measure_summary(inst, partition)
        if json_output:
            emit_json(summary, inst)
        else:
            KernelUI.show_measure_summary(summary)
        return
    kernel = inst.kernel

    if partition is not None:
        chosen, source = parse_partition_spec(partition, inst.n), "argument"
    elif inst.partition is not None and not sigma:
        chosen, source = inst.partition, "document"
    else:
        chosen, source = None, "sigma"

    result = profile(kernel, inst.nu, chosen, source)
    block_rows = None
    if blocks:
        q = block_kernel(kernel, sigma_of_kernel(kernel))
        block_rows = [[format_rat(v) for v in row] for row in q.rows]

    if json_output:
        payload = result.model_dump(mode="json", exclude_none=True)
        if block_rows is not None:
            payload["block_kernel"] = block_rows
        emit_json(payload, inst)
    else:
        KernelUI.show_profile(result, PROPERTY_NAMES)
        if block_rows is not None:
            KernelUI.show_block_kernel(result.sigma, block_rows)


@analyze_app.command("check")
def check(
    prop: str = typer.Argument(..., help=f"One of {', '.join(PROPERTY_CODES)}"),
    file: str = typer.Argument(..., help="Instance document, or - for stdin"),
    partition: Optional[str] = typer.Option(
        None, "--partition", "-p", help="Partition as [[0],[1,2]] or 0/1,2"
    ),
    restricted: bool = typer.Option(
        False, "--restricted", help="Check S/R only on events of the partition (default sigma(R))"
    ),
    json_output: bool = typer.Option(False, "--json", help="Print the verdict as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Check a single property; exits 0 when it holds, 3 when it fails."""
    if prop not in PROPERTY_CODES:
        raise typer.BadParameter(f"unknown property {prop!r}", param_hint="PROP")
    configure_logging(verbose)
    inst, kernel = load_with_kernel(file)

    sigma = sigma_of_kernel(kernel)
    explicit = parse_partition_spec(partition, inst.n) if partition is not None else None
    chosen = explicit if explicit is not None else inst.partition
    if chosen is None and prop in NEEDS_PARTITION:
        chosen = sigma
    if restricted and prop not in ("S", "R"):
        KernelUI.show_warning("--restricted only affects S and R")
    scope = UNRESTRICTED
    if restricted:
        scope = RestrictionScope(explicit if explicit is not None else sigma)

    verdict = run_check(prop, kernel, inst.nu, chosen, scope)

    if json_output:
        emit_json(verdict, inst)
    else:
        KernelUI.show_verdict(verdict, PROPERTY_NAMES[prop])
    raise typer.Exit(0 if verdict.holds else 3)
