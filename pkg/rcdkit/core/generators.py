"""Seeded random measures, kernels and partitions.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence``. A campaign derives trial i's stream from the entropy pair
(seed, i), so trials are independent of each other and of evaluation order.
Weights are drawn as small integers and normalized exactly, so every output
is a valid rational object.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from rcdkit.core.errors import DimensionMismatch
from rcdkit.core.measures import Kernel, Measure
from rcdkit.core.partitions import Partition
from rcdkit.core.rcd import make_rcd

GENERATOR_VERSION = "pcg64-seedseq/1"

_SEED_MASK = 2**64 - 1
_MAX_WEIGHT = 9
_MAX_ROW_WEIGHT = 4


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for ``seed`` and an optional stream path (e.g. a trial index)."""
    entropy = [seed & _SEED_MASK, *(s & _SEED_MASK for s in stream)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def _below(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound), exact for arbitrarily large bounds."""
    if bound < 2**63:
        return int(rng.integers(bound))
    bits = bound.bit_length()
    nbytes = (bits + 7) // 8
    while True:
        value = int.from_bytes(rng.bytes(nbytes), "big") >> (nbytes * 8 - bits)
        if value < bound:
            return value


def _normalize(weights: Sequence[int]) -> tuple:
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def _row_weights(rng: np.random.Generator, size: int) -> List[int]:
    weights = [int(w) for w in rng.integers(0, _MAX_ROW_WEIGHT + 1, size=size)]
    if not any(weights):
        weights[_below(rng, size)] = 1 + _below(rng, _MAX_ROW_WEIGHT)
    return weights


class StructureKind(str, Enum):
    """How a random kernel is shaped."""

    DENSE = "dense"
    BLOCK = "block"
    RCD = "rcd"
    NEAR_RCD = "near_rcd"


@dataclass(frozen=True)
class KernelStructure:
    kind: StructureKind = StructureKind.DENSE
    nu: Optional[Measure] = None
    partition: Optional[Partition] = None

    @classmethod
    def dense(cls) -> "KernelStructure":
        return cls(StructureKind.DENSE)

    @classmethod
    def block(cls, partition: Partition) -> "KernelStructure":
        return cls(StructureKind.BLOCK, partition=partition)

    @classmethod
    def rcd(cls, nu: Measure, partition: Partition) -> "KernelStructure":
        return cls(StructureKind.RCD, nu=nu, partition=partition)

    @classmethod
    def near_rcd(cls, nu: Measure, partition: Partition) -> "KernelStructure":
        return cls(StructureKind.NEAR_RCD, nu=nu, partition=partition)


def draw_measure(rng: np.random.Generator, n: int, allow_zeros: bool) -> Measure:
    weights = [1 + _below(rng, _MAX_WEIGHT) for _ in range(n)]
    if allow_zeros:
        for x in range(n):
            if _below(rng, 4) == 0:
                weights[x] = 0
        if not any(weights):
            weights[_below(rng, n)] = 1 + _below(rng, _MAX_WEIGHT)
    return Measure(_normalize(weights))


@lru_cache(maxsize=None)
def _completions(remaining: int, blocks: int) -> int:
    """Ways to finish a restricted growth string with ``remaining`` slots and ``blocks`` used."""
    if remaining == 0:
        return 1
    return blocks * _completions(remaining - 1, blocks) + _completions(remaining - 1, blocks + 1)


def draw_partition(rng: np.random.Generator, n: int) -> Partition:
    """Uniform over all partitions of [0, n), via weighted restricted growth strings."""
    labels: List[int] = []
    blocks = 0
    for i in range(n):
        remaining = n - 1 - i
        per_existing = _completions(remaining, blocks)
        total = blocks * per_existing + _completions(remaining, blocks + 1)
        pick = _below(rng, total)
        if pick < blocks * per_existing:
            labels.append(pick // per_existing)
        else:
            labels.append(blocks)
            blocks += 1
    return Partition.from_labels(labels)


def _check_structure(n: int, structure: KernelStructure) -> None:
    for component in (structure.nu, structure.partition):
        if component is not None and component.n != n:
            raise DimensionMismatch(f"structure component on {component.n} states, n is {n}")
    if structure.kind != StructureKind.DENSE and structure.partition is None:
        raise ValueError(f"{structure.kind.value} kernels need a partition")
    if structure.kind in (StructureKind.RCD, StructureKind.NEAR_RCD) and structure.nu is None:
        raise ValueError(f"{structure.kind.value} kernels need a measure")


def _perturb(rng: np.random.Generator, kernel: Kernel, nu: Measure, partition: Partition):
    n = kernel.n
    if n < 2:
        return kernel
    candidates = [
        x
        for block in partition.blocks
        if any(nu.weights[y] > 0 for y in block.members)
        for x in block
    ]
    x = candidates[_below(rng, len(candidates))]
    row = list(kernel.rows[x])
    sources = [y for y, value in enumerate(row) if value > 0]
    source = sources[_below(rng, len(sources))]
    target = _below(rng, n - 1)
    if target >= source:
        target += 1
    moved = row[source] * Fraction(1 + _below(rng, 4), 4)
    row[source] -= moved
    row[target] += moved
    rows = list(kernel.rows)
    rows[x] = tuple(row)
    return Kernel(tuple(rows))


def draw_kernel(rng: np.random.Generator, n: int, structure: KernelStructure) -> Kernel:
    _check_structure(n, structure)
    kind = structure.kind
    if kind == StructureKind.DENSE:
        return Kernel(tuple(_normalize(_row_weights(rng, n)) for _ in range(n)))
    if kind == StructureKind.BLOCK:
        rows: List[tuple] = [()] * n
        for block in structure.partition.blocks:
            members = block.sorted()
            weights = _row_weights(rng, len(members))
            row = [0] * n
            for x, w in zip(members, weights):
                row[x] = w
            normalized = _normalize(row)
            for x in members:
                rows[x] = normalized
        return Kernel(tuple(rows))
    synthesized = make_rcd(structure.nu, structure.partition)
    if kind == StructureKind.RCD:
        return synthesized
    return _perturb(rng, synthesized, structure.nu, structure.partition)


def gen_measure(n: int, seed: int, allow_zeros: bool = False) -> Measure:
    """Random measure on [0, n); with ``allow_zeros`` each weight is zeroed w.p. 1/4."""
    return draw_measure(rng_for(seed), n, allow_zeros)


def gen_partition(n: int, seed: int) -> Partition:
    return draw_partition(rng_for(seed), n)


def gen_kernel(n: int, seed: int, structure: Optional[KernelStructure] = None) -> Kernel:
    return draw_kernel(rng_for(seed), n, structure or KernelStructure.dense())
