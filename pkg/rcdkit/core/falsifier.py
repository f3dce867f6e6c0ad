"""Randomized falsification of the law registry, plus a counterexample shrinker."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from rcdkit.core.errors import FloatModeRefused, NotACounterexample, TooLarge
from rcdkit.core.generators import GENERATOR_VERSION, _below, rng_for
from rcdkit.core.instance import Instance, to_document
from rcdkit.core.laws import ORACLE_LAWS, Law, LawCase, draw_case, get_law
from rcdkit.core.measures import Kernel, Measure
from rcdkit.core.oracle import MAX_ENUMERATION_N
from rcdkit.core.partitions import Partition
from rcdkit.models import CounterexampleRecord, LawReport, Mode, Witness

logger = logging.getLogger(__name__)

MAX_N = 10
LOW_PREMISE_RATE = 0.10


@dataclass(frozen=True)
class Counterexample:
    """A case on which a law's premise holds and its conclusion fails."""

    law_id: str
    trial: int
    case: LawCase
    witness: Optional[Witness] = None

    @property
    def n(self) -> int:
        return self.case.n

    def to_record(self) -> CounterexampleRecord:
        case = self.case
        instance = Instance(case.n, case.nu, case.kernel, case.partition)
        return CounterexampleRecord(
            trial=self.trial,
            instance=to_document(instance),
            aux_partition=case.aux.as_lists() if case.aux is not None else None,
            witness=self.witness,
        )


def _check_range(n_range: Sequence[int]) -> Tuple[int, int]:
    n_min, n_max = n_range
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"invalid size range [{n_min}, {n_max}]")
    if n_max > MAX_N:
        raise TooLarge(f"random instances are capped at {MAX_N} states, got {n_max}")
    return n_min, n_max


def _trial_case(law: Law, trial: int, seed: int, n_min: int, n_max: int) -> LawCase:
    if trial == 0 and law.fixture is not None:
        fixture = law.fixture()
        if n_min <= fixture.n <= n_max:
            return fixture
    rng = rng_for(seed, trial)
    n = n_min + _below(rng, n_max - n_min + 1)
    hint = law.generator_hint[trial % len(law.generator_hint)]
    return draw_case(rng, n, hint)


def _run_trial(
    law: Law, trial: int, seed: int, n_min: int, n_max: int
) -> Tuple[bool, Optional[Counterexample]]:
    case = _trial_case(law, trial, seed, n_min, n_max)
    if not law.premise(case):
        return False, None
    verdict = law.conclusion(case)
    if verdict.holds:
        return True, None
    return True, Counterexample(law.id, trial, case, verdict.witness)


def _campaign(
    law: Law, trials: int, seed: int, n_min: int, n_max: int, workers: int = 1
) -> Tuple[int, List[Counterexample]]:
    """Premise hit count and counterexamples, in trial order for any worker count."""
    indices = range(trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda i: _run_trial(law, i, seed, n_min, n_max), indices))
    else:
        outcomes = [_run_trial(law, i, seed, n_min, n_max) for i in indices]
    hits = sum(1 for hit, _ in outcomes if hit)
    return hits, [ce for _, ce in outcomes if ce is not None]


def run_law(
    law_id: str,
    trials: int,
    seed: int,
    n_range: Sequence[int] = (2, 5),
    mode: str = "rational",
    workers: int = 1,
    shrink_found: bool = False,
    expect_counterexample: bool = False,
) -> LawReport:
    """Run ``trials`` seeded trials of one law and report every counterexample.

    Trial i draws from the stream (seed, i), so the report (timing aside) is
    identical for any worker count. With ``shrink_found`` every counterexample
    is shrunk before it is recorded. ``expect_counterexample`` turns a theorem
    campaign into one that passes only when a counterexample is found.

    Raises:
        UnknownLaw: no law with this id
        FloatModeRefused: mode is not rational
        TooLarge: the size range exceeds the cap
    """
    law = get_law(law_id)
    if Mode(mode) != Mode.RATIONAL:
        raise FloatModeRefused("laws are falsified in exact rational arithmetic only")
    n_min, n_max = _check_range(n_range)
    if law.id in ORACLE_LAWS and n_max > MAX_ENUMERATION_N:
        raise TooLarge(f"{law.id} enumerates partitions; n_max is capped at {MAX_ENUMERATION_N}")

    started = time.perf_counter()
    hits, found = _campaign(law, trials, seed, n_min, n_max, workers)
    if shrink_found:
        found = [shrink(ce) for ce in found]
    elapsed = time.perf_counter() - started

    rate = hits / trials if trials else 0.0
    if trials and rate < LOW_PREMISE_RATE:
        logger.warning("%s: premise held in only %.1f%% of trials", law.id, 100 * rate)
    logger.info(
        "%s: %d trials, %d premise hits, %d counterexamples in %.2fs",
        law.id, trials, hits, len(found), elapsed,
    )

    return LawReport(
        law=law.id,
        statement=law.statement,
        anchor=law.anchor,
        trials=trials,
        premise_hits=hits,
        premise_rate=rate,
        counterexamples=[ce.to_record() for ce in found],
        seed=seed,
        n_range=[n_min, n_max],
        generator_version=GENERATOR_VERSION,
        expect_counterexample=expect_counterexample or law.expect_counterexample,
        elapsed_seconds=elapsed,
    )


def find_counterexamples(
    law_id: str, trials: int, seed: int, n_range: Sequence[int] = (2, 5)
) -> List[Counterexample]:
    """The counterexamples run_law would report, as live objects."""
    n_min, n_max = _check_range(n_range)
    return _campaign(get_law(law_id), trials, seed, n_min, n_max)[1]


def _drop_state(case: LawCase, x: int) -> Optional[LawCase]:
    """Remove state x and renormalize, or None when that is impossible."""
    kernel, nu = case.kernel, case.nu
    n = kernel.n
    if n < 2 or nu.weights[x] >= 1:
        return None
    if any(kernel.rows[y][x] >= 1 for y in range(n) if y != x):
        return None

    keep = [y for y in range(n) if y != x]
    rows = []
    for y in keep:
        scale = 1 - kernel.rows[y][x]
        rows.append(tuple(kernel.rows[y][z] / scale for z in keep))
    scale = 1 - nu.weights[x]
    weights = tuple(nu.weights[y] / scale for y in keep)

    def project(partition: Optional[Partition]) -> Optional[Partition]:
        if partition is None:
            return None
        return Partition.from_labels([partition.labels[y] for y in keep])

    return LawCase(
        Kernel(tuple(rows)),
        Measure(weights),
        project(case.partition),
        project(case.aux),
    )


def shrink(ce: Counterexample, law_id: Optional[str] = None) -> Counterexample:
    """Greedily delete states while the law stays violated.

    After each successful deletion the scan restarts at state 0, so the result
    is deterministic and shrinking it again changes nothing.

    Raises:
        NotACounterexample: the case does not violate the law
    """
    law = get_law(law_id or ce.law_id)
    verdict = law.violated_by(ce.case)
    if verdict is None:
        raise NotACounterexample(f"case does not violate {law.id}")

    case = ce.case
    removed = 0
    x = 0
    while x < case.n:
        smaller = _drop_state(case, x)
        failed = law.violated_by(smaller) if smaller is not None else None
        if failed is not None:
            case, verdict = smaller, failed
            removed += 1
            x = 0
        else:
            x += 1
    logger.debug("shrink %s: removed %d states, %d left", law.id, removed, case.n)
    return Counterexample(law.id, ce.trial, case, verdict.witness)


def revalidate(ce: Counterexample) -> bool:
    """True iff the counterexample still violates its law."""
    return get_law(ce.law_id).violated_by(ce.case) is not None
