"""Exact property checks for a kernel R and a measure nu on [0, n).

Conventions on a finite space:

- "for nu-a.e. x" means every x with nu({x}) > 0 (all subsets are measurable,
  so the exceptional set is unconstrained);
- "outside an exceptional set in G" means every point of every G-block of
  positive mass, zero-mass points of such blocks included. The smallest
  admissible full-measure set is the union of the positive-mass blocks, and
  that union is returned as the certificate;
- equalities of measures on the square are tested on ordered singleton pairs;
  restricted (S) and (R) are tested on blocks and block pairs, which covers
  every block union by additivity.

A failed verdict always carries a witness; ``recheck_witness`` re-evaluates
the defining equation there.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional

from rcdkit.core.errors import DimensionMismatch
from rcdkit.core.measures import EventSet, Kernel, Measure, _same_n, support
from rcdkit.core.partitions import Partition
from rcdkit.core.rational import ONE, ZERO, close, format_rat
from rcdkit.models import PropertyProfile, PropertyVerdict, Witness

logger = logging.getLogger(__name__)

PROPERTY_CODES = ("S", "R", "SC", "SR", "P", "T", "trivial", "ac")

PROPERTY_NAMES = {
    "S": "stationary",
    "R": "reversible",
    "SC": "self-compatible",
    "SR": "self-reversible",
    "P": "a.e. proper",
    "T": "a.e. total",
    "trivial": "a.e. trivial",
    "ac": "rows absolutely continuous",
}


@dataclass(frozen=True)
class RestrictionScope:
    """Restrict (S)/(R) to events measurable w.r.t. ``partition`` (None = all events)."""

    partition: Optional[Partition] = None


UNRESTRICTED = RestrictionScope()


def _tolerance(kernel: Kernel, nu: Measure) -> Fraction:
    _same_n(kernel.n, nu.n)
    return max(kernel.epsilon, nu.epsilon)


def _check_partition(partition: Partition, n: int) -> None:
    if partition.n != n:
        raise DimensionMismatch(f"partition has {partition.n} states, kernel has {n}")


def _holds(prop: str, certificate: Optional[EventSet] = None) -> PropertyVerdict:
    return PropertyVerdict(
        prop=prop,
        holds=True,
        certificate=certificate.sorted() if certificate is not None else None,
    )


def _fails(prop: str, **witness) -> PropertyVerdict:
    for side in ("lhs", "rhs"):
        if isinstance(witness.get(side), Fraction):
            witness[side] = format_rat(witness[side])
    return PropertyVerdict(prop=prop, holds=False, witness=Witness(**witness))


def _inflow(kernel: Kernel, nu: Measure, target: EventSet, source: Optional[EventSet] = None):
    """sum over x in source (default all) of nu(x) R_x(target)."""
    states = source.members if source is not None else range(kernel.n)
    return sum((nu.weights[x] * kernel.mass(x, target) for x in states), ZERO)


def _positive_blocks(partition: Partition, nu: Measure) -> Iterator[EventSet]:
    for block in partition.blocks:
        if any(nu.weights[x] > 0 for x in block.members):
            yield block


def _positive_union(partition: Partition, nu: Measure) -> EventSet:
    members = set()
    for block in _positive_blocks(partition, nu):
        members |= block.members
    return EventSet.of(members, nu.n)


def check_stationary(
    kernel: Kernel, nu: Measure, scope: RestrictionScope = UNRESTRICTED
) -> PropertyVerdict:
    """(S): nu R = nu, on singletons or on the blocks of the scope partition."""
    eps = _tolerance(kernel, nu)
    n = kernel.n
    if scope.partition is None:
        events = [EventSet.of([y], n) for y in range(n)]
    else:
        _check_partition(scope.partition, n)
        events = list(scope.partition.blocks)
    for event in events:
        lhs = _inflow(kernel, nu, event)
        rhs = sum((nu.weights[y] for y in event.members), ZERO)
        if not close(lhs, rhs, eps):
            return _fails("S", set_b=event.sorted(), lhs=lhs, rhs=rhs)
    return _holds("S")


def check_reversible(
    kernel: Kernel, nu: Measure, scope: RestrictionScope = UNRESTRICTED
) -> PropertyVerdict:
    """(R): detailed balance, or its block-pair form under a restriction scope."""
    eps = _tolerance(kernel, nu)
    n = kernel.n
    if scope.partition is None:
        for x in range(n):
            for y in range(x + 1, n):
                lhs = nu.weights[x] * kernel.rows[x][y]
                rhs = nu.weights[y] * kernel.rows[y][x]
                if not close(lhs, rhs, eps):
                    return _fails("R", x=x, y=y, lhs=lhs, rhs=rhs)
        return _holds("R")

    _check_partition(scope.partition, n)
    blocks = scope.partition.blocks
    for i, e in enumerate(blocks):
        for d in blocks[i + 1 :]:
            lhs = _inflow(kernel, nu, d, source=e)
            rhs = _inflow(kernel, nu, e, source=d)
            if not close(lhs, rhs, eps):
                return _fails("R", set_a=e.sorted(), set_b=d.sorted(), lhs=lhs, rhs=rhs)
    return _holds("R")


def _two_step(kernel: Kernel, x: int, z: int) -> Fraction:
    row = kernel.rows[x]
    return sum((row[y] * kernel.rows[y][z] for y in range(kernel.n) if row[y]), ZERO)


def check_self_compatible(kernel: Kernel, nu: Measure) -> PropertyVerdict:
    """(SC): row x of R^2 equals row x of R for nu-a.e. x."""
    eps = _tolerance(kernel, nu)
    for x in support(nu):
        for z in range(kernel.n):
            lhs = _two_step(kernel, x, z)
            rhs = kernel.rows[x][z]
            if not close(lhs, rhs, eps):
                return _fails("SC", x=x, z=z, lhs=lhs, rhs=rhs)
    return _holds("SC")


def check_self_reversible(kernel: Kernel, nu: Measure) -> PropertyVerdict:
    """(SR): r_xy r_yz = r_xz r_zy for nu-a.e. x and all y, z."""
    eps = _tolerance(kernel, nu)
    n = kernel.n
    for x in support(nu):
        row = kernel.rows[x]
        for y in range(n):
            for z in range(y + 1, n):
                lhs = row[y] * kernel.rows[y][z]
                rhs = row[z] * kernel.rows[z][y]
                if not close(lhs, rhs, eps):
                    return _fails("SR", x=x, y=y, z=z, lhs=lhs, rhs=rhs)
    return _holds("SR")


def check_proper(kernel: Kernel, nu: Measure, partition: Partition) -> PropertyVerdict:
    """(P): R_x agrees with delta_x on every block, at every point of a positive-mass block."""
    eps = _tolerance(kernel, nu)
    _check_partition(partition, kernel.n)
    for block in _positive_blocks(partition, nu):
        for x in block:
            for event in partition.blocks:
                lhs = kernel.mass(x, event)
                rhs = ONE if x in event else ZERO
                if not close(lhs, rhs, eps):
                    return _fails("P", x=x, set_a=event.sorted(), lhs=lhs, rhs=rhs)
    return _holds("P", _positive_union(partition, nu))


def check_total(kernel: Kernel, nu: Measure, partition: Partition) -> PropertyVerdict:
    """(T): R_x([x]) = 1 at every point of a positive-mass block."""
    eps = _tolerance(kernel, nu)
    _check_partition(partition, kernel.n)
    for block in _positive_blocks(partition, nu):
        for x in block:
            lhs = kernel.mass(x, block)
            if not close(lhs, ONE, eps):
                return _fails("T", x=x, set_a=block.sorted(), lhs=lhs, rhs=ONE)
    return _holds("T", _positive_union(partition, nu))


def check_trivial(kernel: Kernel, nu: Measure, partition: Partition) -> PropertyVerdict:
    """R_x([x]) is 0 or 1 for nu-a.e. x."""
    eps = _tolerance(kernel, nu)
    _check_partition(partition, kernel.n)
    for x in support(nu):
        block = partition.blocks[partition.labels[x]]
        value = kernel.mass(x, block)
        if not (close(value, ZERO, eps) or close(value, ONE, eps)):
            return _fails("trivial", x=x, set_a=block.sorted(), lhs=value, note="not in {0, 1}")
    return _holds("trivial")


def check_abs_continuous(kernel: Kernel, nu: Measure) -> PropertyVerdict:
    """R_x << nu for nu-a.e. x: rows of support points stay inside support(nu)."""
    _tolerance(kernel, nu)
    for x in support(nu):
        for y, value in enumerate(kernel.rows[x]):
            if value > 0 and nu.weights[y] == 0:
                return _fails("ac", x=x, y=y, lhs=value, rhs=ZERO, note="nu(y) = 0 < r_xy")
    return _holds("ac")


def profile(
    kernel: Kernel,
    nu: Measure,
    partition: Optional[Partition] = None,
    source: str = "argument",
) -> PropertyProfile:
    """Run every check once; partition defaults to sigma(R)."""
    from rcdkit.core.rcd import sigma_of_kernel

    sigma = sigma_of_kernel(kernel)
    if partition is None:
        partition, source = sigma, "sigma"
    _check_partition(partition, kernel.n)
    verdicts: Dict[str, PropertyVerdict] = {
        "S": check_stationary(kernel, nu),
        "R": check_reversible(kernel, nu),
        "SC": check_self_compatible(kernel, nu),
        "SR": check_self_reversible(kernel, nu),
        "P": check_proper(kernel, nu, partition),
        "T": check_total(kernel, nu, partition),
        "trivial": check_trivial(kernel, nu, partition),
        "ac": check_abs_continuous(kernel, nu),
    }
    failing = [code for code, verdict in verdicts.items() if not verdict.holds]
    logger.debug("profile on %d states: failing %s", kernel.n, failing or "none")
    return PropertyProfile(
        sigma=sigma.as_lists(),
        partition=partition.as_lists(),
        partition_source=source,
        verdicts=verdicts,
    )


def run_check(
    prop: str,
    kernel: Kernel,
    nu: Measure,
    partition: Optional[Partition] = None,
    scope: RestrictionScope = UNRESTRICTED,
) -> PropertyVerdict:
    """Dispatch a single check by its code; (P)/(T)/trivial need ``partition``."""
    if prop == "S":
        return check_stationary(kernel, nu, scope)
    if prop == "R":
        return check_reversible(kernel, nu, scope)
    if prop == "SC":
        return check_self_compatible(kernel, nu)
    if prop == "SR":
        return check_self_reversible(kernel, nu)
    if prop == "ac":
        return check_abs_continuous(kernel, nu)
    if partition is None:
        raise ValueError(f"property {prop} needs a partition")
    if prop == "P":
        return check_proper(kernel, nu, partition)
    if prop == "T":
        return check_total(kernel, nu, partition)
    if prop == "trivial":
        return check_trivial(kernel, nu, partition)
    raise ValueError(f"unknown property {prop!r}")


def _event(members: Optional[List[int]], n: int) -> EventSet:
    return EventSet.of(members or [], n)


def recheck_witness(verdict: PropertyVerdict, kernel: Kernel, nu: Measure) -> bool:
    """Recompute the defining equation at a failed verdict's witness.

    Returns True when the stored sides are reproduced and they violate the
    property. Holding verdicts have nothing to recheck and return False.
    """
    w = verdict.witness
    if verdict.holds or w is None:
        return False
    n = kernel.n
    eps = _tolerance(kernel, nu)
    prop = verdict.prop

    if prop == "S":
        b = _event(w.set_b, n)
        lhs = _inflow(kernel, nu, b)
        rhs = sum((nu.weights[y] for y in b.members), ZERO)
    elif prop == "R" and w.set_a is not None:
        e, d = _event(w.set_a, n), _event(w.set_b, n)
        lhs = _inflow(kernel, nu, d, source=e)
        rhs = _inflow(kernel, nu, e, source=d)
    elif prop == "R":
        lhs = nu.weights[w.x] * kernel.rows[w.x][w.y]
        rhs = nu.weights[w.y] * kernel.rows[w.y][w.x]
    elif prop == "SC":
        lhs = _two_step(kernel, w.x, w.z)
        rhs = kernel.rows[w.x][w.z]
    elif prop == "SR":
        lhs = kernel.rows[w.x][w.y] * kernel.rows[w.y][w.z]
        rhs = kernel.rows[w.x][w.z] * kernel.rows[w.z][w.y]
    elif prop == "P":
        a = _event(w.set_a, n)
        lhs = kernel.mass(w.x, a)
        rhs = ONE if w.x in a else ZERO
    elif prop == "T":
        lhs = kernel.mass(w.x, _event(w.set_a, n))
        rhs = ONE
    elif prop == "trivial":
        value = kernel.mass(w.x, _event(w.set_a, n))
        return format_rat(value) == w.lhs and not (
            close(value, ZERO, eps) or close(value, ONE, eps)
        )
    elif prop == "ac":
        value = kernel.rows[w.x][w.y]
        return format_rat(value) == w.lhs and value > 0 and nu.weights[w.y] == 0
    else:
        raise ValueError(f"unknown property {prop!r}")

    return format_rat(lhs) == w.lhs and format_rat(rhs) == w.rhs and not close(lhs, rhs, eps)
