"""r.c.d. commands: make-rcd, is-rcd, stationarize, oracle."""

from typing import Optional

import typer

from rcdkit.commands.common import emit_json, load, load_with_kernel
from rcdkit.core.config import ConfigManager
from rcdkit.core.errors import MalformedDocument
from rcdkit.core.instance import Instance, document_text, to_document
from rcdkit.core.oracle import oracle_is_rcd
from rcdkit.core.rational import format_rat
from rcdkit.core.rcd import (
    NULL_BLOCK_CONVENTION,
    is_rcd,
    is_rcd_gcp,
    make_rcd,
    stationarize,
)
from rcdkit.ui.display import KernelUI
from rcdkit.ui.log import configure_logging
from rcdkit.ui.progress import ProgressSpinner

rcd_app = typer.Typer()


@rcd_app.command("make-rcd")
def make_rcd_command(
    file: str = typer.Argument(..., help="Document with nu and a partition, or - for stdin"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Emit the instance document of nu( . | G) for the document's partition G."""
    configure_logging(verbose)
    inst = load(file)
    if inst.partition is None:
        raise MalformedDocument(f"{file}: make-rcd needs a partition")

    kernel = make_rcd(inst.nu, inst.partition)
    out = Instance(inst.n, inst.nu, kernel, inst.partition, inst.mode, inst.epsilon)
    doc = to_document(out).model_copy(update={"meta": {"null_blocks": NULL_BLOCK_CONVENTION}})
    typer.echo(document_text(doc), nl=False)


@rcd_app.command("is-rcd")
def is_rcd_command(
    file: str = typer.Argument(..., help="Instance document, or - for stdin"),
    gcp: bool = typer.Option(
        False, "--gcp", help="Also require nu-a.e. rows to be absolutely continuous"
    ),
    json_output: bool = typer.Option(False, "--json", help="Print the verdict as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Decide whether R is an r.c.d. for nu; exits 0 if so, 3 if not."""
    configure_logging(verbose)
    inst, kernel = load_with_kernel(file)
    verdict = is_rcd_gcp(kernel, inst.nu) if gcp else is_rcd(kernel, inst.nu)

    if json_output:
        emit_json(verdict, inst)
    else:
        KernelUI.show_rcd(verdict)
    raise typer.Exit(0 if verdict.is_rcd else 3)


@rcd_app.command("stationarize")
def stationarize_command(
    file: str = typer.Argument(..., help="Instance document, or - for stdin"),
    json_output: bool = typer.Option(False, "--json", help="Print pi and the verdict as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Compute pi = nu R and decide whether R is an r.c.d. for pi."""
    configure_logging(verbose)
    inst, kernel = load_with_kernel(file)
    pi = stationarize(kernel, inst.nu)
    verdict = is_rcd(kernel, pi)
    weights = [format_rat(w) for w in pi.weights]

    if json_output:
        verdict_json = verdict.model_dump(mode="json", exclude_none=True)
        emit_json({"pi": weights, "verdict": verdict_json}, inst)
    else:
        KernelUI.show_measure(weights, "pi")
        KernelUI.show_rcd(verdict)
    raise typer.Exit(0 if verdict.is_rcd else 3)


@rcd_app.command("oracle")
def oracle_command(
    file: str = typer.Argument(..., help="Instance document, or - for stdin"),
    max_n: Optional[int] = typer.Option(
        None, "--max-n", min=1, max=10, help="Refuse instances with more states"
    ),
    json_output: bool = typer.Option(False, "--json", help="Print the result as JSON"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Scan every partition; exits 0 if any makes R an r.c.d., 3 otherwise."""
    configure_logging(verbose)
    inst, kernel = load_with_kernel(file)
    cap = max_n if max_n is not None else ConfigManager().load().oracle_max_n

    with ProgressSpinner(f"Scanning partitions of {inst.n} states..."):
        result = oracle_is_rcd(kernel, inst.nu, cap)

    if json_output:
        emit_json(result, inst)
    else:
        KernelUI.show_oracle(result)
    raise typer.Exit(0 if result.accepted else 3)
