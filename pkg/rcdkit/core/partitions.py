"""Partitions of [0, n) standing in for sub-sigma-algebras.

On a finite space every sigma-algebra is atomic, so it is fully described by
its atoms, and those atoms partition the space. Inclusion of sigma-algebras
becomes refinement of partitions, and the trace of a sigma-algebra on a set C
becomes the partition of C cut out by the blocks.

Essential equality is decided on the support of the measure: on a finite
space ``nu(C) = 1`` holds exactly when ``C`` contains ``support(nu)``, and any
such C sees the same trace once the support does, so two partitions agree on
some full-measure set iff their traces on the support coincide.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from rcdkit.core.errors import (
    DimensionMismatch,
    EmptyBlock,
    OverlappingBlocks,
    UncoveredStates,
)
from rcdkit.core.measures import EventSet, Measure, _check_state, _same_n, support


def _canonical(blocks: Iterable[EventSet]) -> Tuple[EventSet, ...]:
    return tuple(sorted(blocks, key=lambda block: min(block.members)))


@dataclass(frozen=True)
class Partition:
    """Blocks are nonempty, disjoint, cover [0, n) and are sorted by minimal element."""

    n: int
    blocks: Tuple[EventSet, ...]
    labels: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels: List[int] = [-1] * self.n
        for block in self.blocks:
            if block.n != self.n:
                raise DimensionMismatch(f"block on {block.n} states in a partition of {self.n}")
            if not block:
                raise EmptyBlock("partition blocks must be nonempty")
            for x in block.members:
                if labels[x] != -1:
                    raise OverlappingBlocks(f"state {x} appears in more than one block")
                labels[x] = 0
        missing = [x for x, label in enumerate(labels) if label == -1]
        if missing:
            raise UncoveredStates(f"states {missing} are in no block")

        blocks = _canonical(self.blocks)
        for index, block in enumerate(blocks):
            for x in block.members:
                labels[x] = index
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]], n: int) -> "Partition":
        return from_blocks([EventSet.of(members, n) for members in lists], n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Build from a label per state (e.g. a restricted growth string)."""
        n = len(labels)
        groups: Dict[int, List[int]] = {}
        for x, label in enumerate(labels):
            groups.setdefault(label, []).append(x)
        return cls(n, tuple(EventSet.of(members, n) for members in groups.values()))

    def as_lists(self) -> List[List[int]]:
        return [block.sorted() for block in self.blocks]

    def block_index(self, x: int) -> int:
        _check_state(x, self.n)
        return self.labels[x]

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class TracePartition:
    """Partition of ``carrier`` by the nonempty intersections with some partition's blocks."""

    carrier: EventSet
    blocks: Tuple[EventSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", _canonical(self.blocks))

    def as_lists(self) -> List[List[int]]:
        return [block.sorted() for block in self.blocks]


def from_blocks(blocks: Sequence[EventSet], n: int) -> Partition:
    return Partition(n, tuple(blocks))


def discrete(n: int) -> Partition:
    return Partition(n, tuple(EventSet.of([x], n) for x in range(n)))


def trivial(n: int) -> Partition:
    return Partition(n, (EventSet.full(n),))


def generated_by(sets: Sequence[EventSet], n: int) -> Partition:
    """Atoms of sigma(sets): states grouped by their membership signature."""
    for event in sets:
        _same_n(event.n, n)
    signatures = [tuple(x in event for event in sets) for x in range(n)]
    index: Dict[Tuple[bool, ...], int] = {}
    labels = [index.setdefault(signature, len(index)) for signature in signatures]
    return Partition.from_labels(labels)


def block_of(partition: Partition, x: int) -> EventSet:
    return partition.blocks[partition.block_index(x)]


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of p sits inside a block of q."""
    _same_n(p.n, q.n)
    return all(len({q.labels[x] for x in block.members}) == 1 for block in p.blocks)


def meet(p: Partition, q: Partition) -> Partition:
    """Coarsest common refinement: nonempty blockwise intersections."""
    n = _same_n(p.n, q.n)
    index: Dict[Tuple[int, int], int] = {}
    labels = [index.setdefault((p.labels[x], q.labels[x]), len(index)) for x in range(n)]
    return Partition.from_labels(labels)


def join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening: transitive closure of block overlap."""
    n = _same_n(p.n, q.n)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for partition in (p, q):
        for block in partition.blocks:
            members = block.sorted()
            root = find(members[0])
            for x in members[1:]:
                other = find(x)
                if other != root:
                    parent[other] = root
    return Partition.from_labels([find(x) for x in range(n)])


def trace(partition: Partition, carrier: EventSet) -> TracePartition:
    _same_n(partition.n, carrier.n)
    pieces = (block.intersection(carrier) for block in partition.blocks)
    return TracePartition(carrier, tuple(piece for piece in pieces if piece))


def essentially_equal(p: Partition, q: Partition, nu: Measure) -> bool:
    """p and q agree on a nu-full set, i.e. their traces on support(nu) coincide."""
    _same_n(p.n, q.n, nu.n)
    carrier = support(nu)
    return trace(p, carrier) == trace(q, carrier)


def bell_number(n: int) -> int:
    """Number of partitions of an n-set (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
