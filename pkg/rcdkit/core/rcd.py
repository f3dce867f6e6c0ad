"""Regular conditional distributions on a finite space.

sigma(R) is the partition of states by identical rows. A kernel R is an r.c.d.
for nu (given some sigma-algebra) exactly when it is stationary for nu and
total on the atoms of sigma(R); in that case sigma(R) itself is a conditioning
sigma-algebra, unique up to nu-null sets.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from rcdkit.core.errors import AmbiguousAtoms
from rcdkit.core.measures import (
    Kernel,
    Measure,
    _same_n,
    conditional_measure,
    point_mass,
    propagate,
)
from rcdkit.core.partitions import Partition
from rcdkit.core.props import UNRESTRICTED, check_abs_continuous, check_stationary, check_total
from rcdkit.core.rational import ZERO
from rcdkit.models import FailedCondition, RcdVerdict

logger = logging.getLogger(__name__)

NULL_BLOCK_CONVENTION = "point-mass"


def _row_distance(a: Tuple[Fraction, ...], b: Tuple[Fraction, ...]) -> Fraction:
    return max(abs(u - v) for u, v in zip(a, b))


def sigma_of_kernel(kernel: Kernel, epsilon: Optional[Fraction] = None) -> Partition:
    """Atoms of sigma(R): x and y share a block iff their rows are equal.

    With a positive epsilon (float mode) rows are clustered in max norm and the
    clustering must be unambiguous: every pair inside a cluster within epsilon,
    every pair across clusters farther apart.

    Raises:
        AmbiguousAtoms: float-mode clustering is inconsistent
    """
    eps = kernel.epsilon if epsilon is None else Fraction(epsilon)
    rows = kernel.rows

    if eps == 0:
        index: Dict[Tuple[Fraction, ...], int] = {}
        return Partition.from_labels([index.setdefault(row, len(index)) for row in rows])

    clusters: List[List[int]] = []
    for x, row in enumerate(rows):
        for cluster in clusters:
            if _row_distance(rows[cluster[0]], row) <= eps:
                cluster.append(x)
                break
        else:
            clusters.append([x])

    for cluster in clusters:
        for i, x in enumerate(cluster):
            for y in cluster[i + 1 :]:
                if _row_distance(rows[x], rows[y]) > eps:
                    raise AmbiguousAtoms(f"rows {x} and {y} share a cluster but differ by > eps")
    for i, first in enumerate(clusters):
        for second in clusters[i + 1 :]:
            for x in first:
                for y in second:
                    if _row_distance(rows[x], rows[y]) <= eps:
                        raise AmbiguousAtoms(f"rows {x} and {y} are within eps across clusters")
    if any(len(cluster) > 1 for cluster in clusters):
        logger.warning("float mode merged near-equal rows into %d atoms", len(clusters))

    labels = [0] * kernel.n
    for label, cluster in enumerate(clusters):
        for x in cluster:
            labels[x] = label
    return Partition.from_labels(labels)


def make_rcd(nu: Measure, partition: Partition) -> Kernel:
    """nu( . | G): row x is nu conditioned on the block of x.

    Rows on nu-null blocks are the point mass at x, which keeps the kernel
    proper and total everywhere.
    """
    n = _same_n(nu.n, partition.n)
    rows: List[Tuple[Fraction, ...]] = [()] * n
    for block in partition.blocks:
        mass = sum((nu.weights[x] for x in block.members), ZERO)
        if mass > 0:
            conditional = conditional_measure(nu, block).weights
            for x in block.members:
                rows[x] = conditional
        else:
            for x in block.members:
                rows[x] = point_mass(x, n).weights
    return Kernel(tuple(rows), nu.epsilon)


def is_rcd(kernel: Kernel, nu: Measure) -> RcdVerdict:
    """Decide whether R is an r.c.d. for nu: (S) and (T) w.r.t. sigma(R)."""
    sigma = sigma_of_kernel(kernel)
    stationary = check_stationary(kernel, nu, UNRESTRICTED)
    if not stationary.holds:
        return RcdVerdict(
            is_rcd=False,
            failed_condition=FailedCondition.STATIONARITY,
            witness=stationary.witness,
        )
    total = check_total(kernel, nu, sigma)
    if not total.holds:
        return RcdVerdict(
            is_rcd=False,
            failed_condition=FailedCondition.TOTALITY,
            witness=total.witness,
        )
    return RcdVerdict(is_rcd=True, conditioning=sigma.as_lists())


def is_rcd_gcp(kernel: Kernel, nu: Measure) -> RcdVerdict:
    """is_rcd plus absolute continuity of nu-a.e. row (partition-generated conditioning)."""
    verdict = is_rcd(kernel, nu)
    ac = check_abs_continuous(kernel, nu)
    if verdict.is_rcd and not ac.holds:
        return RcdVerdict(
            is_rcd=False,
            failed_condition=FailedCondition.ABS_CONTINUITY,
            witness=ac.witness,
            abs_continuous=False,
        )
    return verdict.model_copy(update={"abs_continuous": ac.holds})


def stationarize(kernel: Kernel, nu: Measure) -> Measure:
    """pi = nu R; if R is total on sigma(R) under nu, R is an r.c.d. for pi."""
    return propagate(nu, kernel)


def block_kernel(kernel: Kernel, partition: Partition) -> Kernel:
    """Kernel between blocks: entry (A, B) is R_x(B) for any x in A.

    Raises:
        ValueError: rows are not constant on some block
    """
    _same_n(kernel.n, partition.n)
    rows = []
    for block in partition.blocks:
        members = block.sorted()
        first = kernel.rows[members[0]]
        if any(_row_distance(kernel.rows[x], first) > kernel.epsilon for x in members[1:]):
            raise ValueError(f"rows are not constant on block {members}")
        rows.append(tuple(kernel.mass(members[0], target) for target in partition.blocks))
    return Kernel(tuple(rows), kernel.epsilon)
