"""Brute-force r.c.d. oracle.

Scans every partition G of [0, n) and accepts G when R satisfies the
definition of nu( . | G) directly:

  (iii) rows of R are constant on every block of G (null blocks included);
  (iv)  for every block A and state b: sum_{x in A} nu(x) r_xb = nu(A & {b}).

(iv) on (block, singleton) pairs covers every (A, B) by additivity. This module
deliberately shares no code with the sigma(R)/property path it cross-checks.
"""

import logging
from typing import Iterator, List

from rcdkit.core.errors import DimensionMismatch, FloatModeRefused, TooLarge
from rcdkit.core.measures import Kernel, Measure
from rcdkit.core.partitions import Partition
from rcdkit.models import OracleResult

logger = logging.getLogger(__name__)

MAX_ENUMERATION_N = 10


def enumerate_partitions(n: int, max_n: int = MAX_ENUMERATION_N) -> Iterator[Partition]:
    """Every partition of [0, n) once, in restricted-growth-string order.

    Raises:
        TooLarge: n exceeds ``max_n`` (at most 10, Bell(10) = 115975)
    """
    cap = min(max_n, MAX_ENUMERATION_N)
    if n > cap:
        raise TooLarge(f"refusing to enumerate partitions of {n} states (cap {cap})")
    if n < 1:
        return

    labels = [0] * n
    while True:
        yield Partition.from_labels(labels)
        # next restricted growth string: bump the rightmost position that may grow
        i = n - 1
        while i > 0:
            ceiling = max(labels[:i]) + 1
            if labels[i] < ceiling:
                labels[i] += 1
                for j in range(i + 1, n):
                    labels[j] = 0
                break
            i -= 1
        else:
            return


def _accepts(kernel: Kernel, nu: Measure, partition: Partition) -> bool:
    n = kernel.n
    for block in partition.blocks:
        members = block.sorted()
        first = kernel.rows[members[0]]
        if any(kernel.rows[x] != first for x in members[1:]):
            return False
        for b in range(n):
            inflow = sum(nu.weights[x] * kernel.rows[x][b] for x in members)
            if inflow != (nu.weights[b] if b in block else 0):
                return False
    return True


def oracle_is_rcd(
    kernel: Kernel, nu: Measure, max_n: int = MAX_ENUMERATION_N
) -> OracleResult:
    """All partitions G for which R is exactly an r.c.d. for nu given G.

    Raises:
        TooLarge: n exceeds the enumeration cap
        FloatModeRefused: kernel or measure carries a float-mode tolerance
        DimensionMismatch: kernel and measure sizes differ
    """
    if kernel.n != nu.n:
        raise DimensionMismatch(f"kernel on {kernel.n} states, measure on {nu.n}")
    if kernel.epsilon or nu.epsilon:
        raise FloatModeRefused("the oracle runs on exact rational instances only")

    accepted: List[List[List[int]]] = []
    scanned = 0
    for partition in enumerate_partitions(kernel.n, max_n):
        scanned += 1
        if _accepts(kernel, nu, partition):
            accepted.append(partition.as_lists())
    logger.debug("oracle scanned %d partitions, accepted %d", scanned, len(accepted))
    return OracleResult(accepted=accepted, partitions_scanned=scanned)
