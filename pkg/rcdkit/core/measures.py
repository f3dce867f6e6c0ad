"""Event sets, probability measures and kernels on the finite space [0, n).

All values are immutable. Measures and kernels validate themselves on
construction, so every arithmetic result below is re-checked for
non-negativity and normalization as soon as it is built.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from rcdkit.core.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotAProbability,
    ZeroMassEvent,
)
from rcdkit.core.rational import ONE, ZERO, close, format_rat


def _check_state(x: int, n: int) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
        raise IndexOutOfRange(f"state {x!r} outside [0, {n})")


def _same_n(*sizes: int) -> int:
    if len(set(sizes)) != 1:
        raise DimensionMismatch(f"incompatible sizes {sorted(set(sizes))}")
    return sizes[0]


@dataclass(frozen=True)
class EventSet:
    """A subset of [0, n)."""

    n: int
    members: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for x in self.members:
            _check_state(x, self.n)

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> "EventSet":
        return cls(n, frozenset(members))

    @classmethod
    def full(cls, n: int) -> "EventSet":
        return cls(n, frozenset(range(n)))

    @classmethod
    def empty(cls, n: int) -> "EventSet":
        return cls(n, frozenset())

    @property
    def mask(self) -> int:
        """Bitset view: bit x is set iff x is a member."""
        bits = 0
        for x in self.members:
            bits |= 1 << x
        return bits

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def sorted(self) -> List[int]:
        return sorted(self.members)

    def union(self, other: "EventSet") -> "EventSet":
        return EventSet(_same_n(self.n, other.n), self.members | other.members)

    def intersection(self, other: "EventSet") -> "EventSet":
        return EventSet(_same_n(self.n, other.n), self.members & other.members)

    def difference(self, other: "EventSet") -> "EventSet":
        return EventSet(_same_n(self.n, other.n), self.members - other.members)

    def complement(self) -> "EventSet":
        return EventSet(self.n, frozenset(range(self.n)) - self.members)

    def issubset(self, other: "EventSet") -> bool:
        _same_n(self.n, other.n)
        return self.members <= other.members

    def isdisjoint(self, other: "EventSet") -> bool:
        _same_n(self.n, other.n)
        return self.members.isdisjoint(other.members)


def _validate_distribution(values: Sequence[Fraction], epsilon: Fraction, what: str) -> None:
    for index, value in enumerate(values):
        if value < 0:
            raise NotAProbability(f"{what} has negative entry {format_rat(value)} at {index}")
    total = sum(values, ZERO)
    if not close(total, ONE, epsilon):
        raise NotAProbability(f"{what} sums to {format_rat(total)}, not 1")


@dataclass(frozen=True)
class Measure:
    """Probability vector over [0, n).

    ``epsilon`` is zero for exact (rational-mode) measures; float-mode
    documents set it and the sum check becomes a tolerance check.
    """

    weights: Tuple[Fraction, ...]
    epsilon: Fraction = ZERO

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if not weights:
            raise NotAProbability("measure on an empty space")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        _validate_distribution(weights, self.epsilon, "measure")

    @property
    def n(self) -> int:
        return len(self.weights)

    def __getitem__(self, x: int) -> Fraction:
        return self.weights[x]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Kernel:
    """Row-stochastic n x n matrix; row x is the measure R_x."""

    rows: Tuple[Tuple[Fraction, ...], ...]
    epsilon: Fraction = ZERO

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        n = len(rows)
        if n == 0:
            raise NotAProbability("kernel on an empty space")
        for x, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch(f"row {x} has {len(row)} entries, expected {n}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        for x, row in enumerate(rows):
            _validate_distribution(row, self.epsilon, f"kernel row {x}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, x: int) -> Tuple[Fraction, ...]:
        return self.rows[x]

    def entry(self, x: int, y: int) -> Fraction:
        return self.rows[x][y]

    def row_measure(self, x: int) -> Measure:
        _check_state(x, self.n)
        return Measure(self.rows[x], self.epsilon)

    def mass(self, x: int, event: EventSet) -> Fraction:
        """R_x(event)."""
        _same_n(self.n, event.n)
        row = self.rows[x]
        return sum((row[y] for y in event.members), ZERO)


def point_mass(x: int, n: int) -> Measure:
    """delta_x on [0, n)."""
    _check_state(x, n)
    return Measure(tuple(ONE if y == x else ZERO for y in range(n)))


def uniform(n: int) -> Measure:
    return Measure(tuple(Fraction(1, n) for _ in range(n)))


def identity_kernel(n: int) -> Kernel:
    return Kernel(tuple(point_mass(x, n).weights for x in range(n)))


def constant_kernel(mu: Measure) -> Kernel:
    """Kernel whose every row is mu."""
    return Kernel(tuple(mu.weights for _ in range(mu.n)), mu.epsilon)


def measure_of_set(m: Measure, event: EventSet) -> Fraction:
    _same_n(m.n, event.n)
    return sum((m.weights[x] for x in event.members), ZERO)


def conditional_measure(nu: Measure, event: EventSet) -> Measure:
    """nu( . | event), supported inside event."""
    mass = measure_of_set(nu, event)
    if mass == 0:
        raise ZeroMassEvent(f"cannot condition on null event {event.sorted()}")
    return Measure(
        tuple(nu.weights[x] / mass if x in event else ZERO for x in range(nu.n)),
        nu.epsilon,
    )


def propagate(nu: Measure, kernel: Kernel) -> Measure:
    """The measure y -> sum_x nu(x) r_xy."""
    n = _same_n(nu.n, kernel.n)
    return Measure(
        tuple(sum((nu.weights[x] * kernel.rows[x][y] for x in range(n)), ZERO) for y in range(n)),
        nu.epsilon + kernel.epsilon,
    )


def compose(first: Kernel, second: Kernel) -> Kernel:
    """Kernel product: entry (x, z) is sum_y first_xy * second_yz."""
    n = _same_n(first.n, second.n)
    rows = []
    for x in range(n):
        row = first.rows[x]
        rows.append(
            tuple(
                sum((row[y] * second.rows[y][z] for y in range(n) if row[y]), ZERO)
                for z in range(n)
            )
        )
    return Kernel(tuple(rows), first.epsilon + second.epsilon)


def support(nu: Measure) -> EventSet:
    """States of positive mass."""
    return EventSet(nu.n, frozenset(x for x, w in enumerate(nu.weights) if w > 0))
