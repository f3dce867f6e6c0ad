"""Random instance generation."""

from enum import Enum

import typer

from rcdkit.core.generators import (
    KernelStructure,
    draw_kernel,
    draw_measure,
    draw_partition,
    rng_for,
)
from rcdkit.core.instance import Instance, serialize_instance
from rcdkit.ui.log import configure_logging

gen_app = typer.Typer()


class GenKind(str, Enum):
    MEASURE = "measure"
    KERNEL = "kernel"
    PARTITION = "partition"
    RCD = "rcd"
    NEAR_RCD = "near-rcd"


class KernelShape(str, Enum):
    DENSE = "dense"
    BLOCK = "block"


@gen_app.command("gen")
def gen(
    kind: GenKind = typer.Option(..., "--kind", "-k", help="What to generate"),
    n: int = typer.Option(..., "--n", min=1, max=64, help="Number of states"),
    seed: int = typer.Option(..., "--seed", "-s", help="Seed"),
    structure: KernelShape = typer.Option(
        KernelShape.DENSE, "--structure", help="Kernel shape for --kind kernel"
    ),
    zeros: bool = typer.Option(False, "--zeros", help="Allow nu-null states"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Emit a random, always valid, instance document."""
    configure_logging(verbose)
    rng = rng_for(seed)
    nu = draw_measure(rng, n, zeros)
    partition = None
    kernel = None

    if kind != GenKind.MEASURE:
        partition = draw_partition(rng, n)
    if kind == GenKind.KERNEL:
        if structure == KernelShape.BLOCK:
            kernel = draw_kernel(rng, n, KernelStructure.block(partition))
        else:
            kernel = draw_kernel(rng, n, KernelStructure.dense())
            partition = None
    elif kind == GenKind.RCD:
        kernel = draw_kernel(rng, n, KernelStructure.rcd(nu, partition))
    elif kind == GenKind.NEAR_RCD:
        kernel = draw_kernel(rng, n, KernelStructure.near_rcd(nu, partition))

    typer.echo(serialize_instance(Instance(n, nu, kernel, partition)), nl=False)
