"""Registry of implications between kernel properties, checked by the falsifier.

Each law pairs a premise with a conclusion over a random case (kernel, measure,
partition, second partition). Theorem-style laws must never produce a counterexample;
the two sanity laws are false on purpose and must.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from rcdkit.core.errors import UnknownLaw
from rcdkit.core.fixtures import (
    three_state_block_kernel,
    trivial_not_total_kernel,
    unbalanced_three_state_measure,
)
from rcdkit.core.generators import (
    KernelStructure,
    _below,
    draw_kernel,
    draw_measure,
    draw_partition,
)
from rcdkit.core.measures import Kernel, Measure, conditional_measure, support, uniform
from rcdkit.core.oracle import oracle_is_rcd
from rcdkit.core.partitions import Partition, essentially_equal, refines
from rcdkit.core.props import (
    RestrictionScope,
    check_abs_continuous,
    check_proper,
    check_reversible,
    check_self_compatible,
    check_self_reversible,
    check_stationary,
    check_total,
    check_trivial,
)
from rcdkit.core.rcd import is_rcd, is_rcd_gcp, make_rcd, sigma_of_kernel, stationarize
from rcdkit.core.rational import format_rat
from rcdkit.models import PropertyVerdict, Witness


@dataclass(frozen=True)
class LawCase:
    """One random instance: R, nu, a partition G and a second partition H."""

    kernel: Kernel
    nu: Measure
    partition: Partition
    aux: Optional[Partition] = None

    @property
    def n(self) -> int:
        return self.kernel.n


@dataclass(frozen=True)
class Law:
    id: str
    statement: str
    anchor: str
    generator_hint: Tuple[str, ...]
    premise: Callable[[LawCase], bool]
    conclusion: Callable[[LawCase], PropertyVerdict]
    expect_counterexample: bool = False
    fixture: Optional[Callable[[], LawCase]] = None

    def violated_by(self, case: LawCase) -> Optional[PropertyVerdict]:
        """The failed conclusion when premise holds and conclusion fails, else None."""
        if not self.premise(case):
            return None
        verdict = self.conclusion(case)
        return None if verdict.holds else verdict


# ---------------------------------------------------------------------------
# Case generation
# ---------------------------------------------------------------------------
HINTS = (
    "dense",
    "block",
    "rcd",
    "near_rcd",
    "dense_full",
    "block_full",
    "rcd_full",
    "twin",
)


def _twin_partition(rng: np.random.Generator, partition: Partition, nu: Measure) -> Partition:
    """Move some nu-null states to other (or new) blocks; the trace on the support is kept."""
    labels = list(partition.labels)
    fresh = len(partition)
    for x in range(partition.n):
        if nu.weights[x] == 0 and _below(rng, 2):
            labels[x] = _below(rng, fresh + 1)
            fresh += 1
    return Partition.from_labels(labels)


def draw_case(rng: np.random.Generator, n: int, hint: str) -> LawCase:
    full_support = hint.endswith("_full")
    shape = hint[: -len("_full")] if full_support else hint
    allow_zeros = not full_support and bool(_below(rng, 2))
    if shape == "twin":
        allow_zeros = True
    nu = draw_measure(rng, n, allow_zeros)
    partition = draw_partition(rng, n)

    if shape == "dense":
        structure = KernelStructure.dense()
    elif shape == "block":
        structure = KernelStructure.block(partition)
    elif shape in ("rcd", "twin"):
        structure = KernelStructure.rcd(nu, partition)
    elif shape == "near_rcd":
        structure = KernelStructure.near_rcd(nu, partition)
    else:
        raise ValueError(f"unknown generator hint {hint!r}")
    kernel = draw_kernel(rng, n, structure)

    if shape == "twin":
        aux = _twin_partition(rng, partition, nu)
    else:
        aux = draw_partition(rng, n)
    return LawCase(kernel, nu, partition, aux)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------
def _ok(law_id: str) -> PropertyVerdict:
    return PropertyVerdict(prop=law_id, holds=True)


def _bad(law_id: str, note: str, **fields) -> PropertyVerdict:
    return PropertyVerdict(prop=law_id, holds=False, witness=Witness(note=note, **fields))


def _first_failure(*verdicts: PropertyVerdict) -> PropertyVerdict:
    for verdict in verdicts:
        if not verdict.holds:
            return verdict
    return verdicts[-1]


def _sigma(case: LawCase) -> Partition:
    return sigma_of_kernel(case.kernel)


def _sigma_scope(case: LawCase) -> RestrictionScope:
    return RestrictionScope(_sigma(case))


def _total_on_sigma(case: LawCase) -> bool:
    return check_total(case.kernel, case.nu, _sigma(case)).holds


def _always(case: LawCase) -> bool:
    return True


def _full_support(case: LawCase) -> bool:
    return len(support(case.nu)) == case.n


def _rows_constant_on(kernel: Kernel, partition: Partition) -> bool:
    return all(
        len({kernel.rows[x] for x in block.members}) == 1 for block in partition.blocks
    )


def _reversible_implies_stationary(case: LawCase) -> PropertyVerdict:
    return check_stationary(case.kernel, case.nu)


def _total_iff_proper(case: LawCase) -> PropertyVerdict:
    total = check_total(case.kernel, case.nu, case.partition)
    proper = check_proper(case.kernel, case.nu, case.partition)
    if total.holds == proper.holds:
        return _ok("L3")
    return _bad("L3", f"(T) {total.holds} but (P) {proper.holds}")


def _synthesized_proper_and_total(case: LawCase) -> PropertyVerdict:
    kernel = make_rcd(case.nu, case.partition)
    return _first_failure(
        check_proper(kernel, case.nu, case.partition),
        check_total(kernel, case.nu, case.partition),
    )


def _sr_and_restricted_s(case: LawCase) -> bool:
    return (
        check_self_reversible(case.kernel, case.nu).holds
        and check_stationary(case.kernel, case.nu, _sigma_scope(case)).holds
    )


def _total_on_sigma_verdict(case: LawCase) -> PropertyVerdict:
    return check_total(case.kernel, case.nu, _sigma(case))


def _sr_and_restricted_r(case: LawCase) -> PropertyVerdict:
    return _first_failure(
        check_self_reversible(case.kernel, case.nu),
        check_reversible(case.kernel, case.nu, _sigma_scope(case)),
    )


def _full_support_and_sr(case: LawCase) -> bool:
    return _full_support(case) and check_self_reversible(case.kernel, case.nu).holds


def _trivial_on_sigma(case: LawCase) -> PropertyVerdict:
    return check_trivial(case.kernel, case.nu, _sigma(case))


def _positive_self_mass_is_full(case: LawCase) -> PropertyVerdict:
    sigma = _sigma(case)
    for x in range(case.n):
        block = sigma.blocks[sigma.labels[x]]
        value = case.kernel.mass(x, block)
        if 0 < value < 1:
            return _bad(
                "L7P", "0 < R_x([x]) < 1", x=x, set_a=block.sorted(), lhs=format_rat(value)
            )
    return _ok("L7P")


def _rcd_matches_oracle(case: LawCase) -> PropertyVerdict:
    decided = is_rcd(case.kernel, case.nu).is_rcd
    accepted = oracle_is_rcd(case.kernel, case.nu).accepted
    if decided == bool(accepted):
        return _ok("L8")
    return _bad("L8", f"is_rcd={decided} but oracle accepted {len(accepted)} partitions")


def _rcd_of_stationarized(case: LawCase) -> PropertyVerdict:
    pi = stationarize(case.kernel, case.nu)
    verdict = is_rcd(case.kernel, pi)
    if verdict.is_rcd:
        return _ok("L9")
    return _bad(
        "L9",
        f"not an r.c.d. for pi: {verdict.failed_condition.value}",
        lhs=verdict.witness.lhs if verdict.witness else None,
        rhs=verdict.witness.rhs if verdict.witness else None,
    )


def _is_rcd(case: LawCase) -> bool:
    return is_rcd(case.kernel, case.nu).is_rcd


def _rcd_has_four_properties(case: LawCase) -> PropertyVerdict:
    return _first_failure(
        check_stationary(case.kernel, case.nu),
        check_reversible(case.kernel, case.nu),
        check_self_compatible(case.kernel, case.nu),
        check_self_reversible(case.kernel, case.nu),
    )


def _self_compatible_everywhere(case: LawCase) -> bool:
    return check_self_compatible(case.kernel, uniform(case.n)).holds


def _block_masses_determine_rows(case: LawCase) -> PropertyVerdict:
    kernel = case.kernel
    blocks = _sigma(case).blocks
    masses = [tuple(kernel.mass(x, block) for block in blocks) for x in range(case.n)]
    for x in range(case.n):
        for y in range(x + 1, case.n):
            if masses[x] == masses[y] and kernel.rows[x] != kernel.rows[y]:
                return _bad("L11", "equal sigma(R)-block masses, different rows", x=x, y=y)
    return _ok("L11")


def _self_mass_constant_on_atoms(case: LawCase) -> PropertyVerdict:
    for block in _sigma(case).blocks:
        members = block.sorted()
        values = [case.kernel.mass(x, block) for x in members]
        for x, value in zip(members[1:], values[1:]):
            if value != values[0]:
                return _bad("L12", "R_x([x]) differs inside an atom", x=members[0], y=x)
    return _ok("L12")


def _refinement_iff_constant_rows(case: LawCase) -> PropertyVerdict:
    inside = refines(case.partition, _sigma(case))
    constant = _rows_constant_on(case.kernel, case.partition)
    if inside == constant:
        return _ok("L13")
    return _bad("L13", f"G refines sigma(R): {inside}, rows constant on G: {constant}")


def _oracle_nonempty(case: LawCase) -> bool:
    return bool(oracle_is_rcd(case.kernel, case.nu).accepted)


def _oracle_partitions_essentially_sigma(case: LawCase) -> PropertyVerdict:
    sigma = _sigma(case)
    for blocks in oracle_is_rcd(case.kernel, case.nu).accepted:
        if not essentially_equal(Partition.from_lists(blocks, case.n), sigma, case.nu):
            return _bad("L14", f"accepted {blocks} differs from sigma(R) on the support")
    return _ok("L14")


def _synthesized_rows_constant_on_blocks(case: LawCase) -> PropertyVerdict:
    kernel = make_rcd(case.nu, case.partition)
    for block in case.partition.blocks:
        if not any(case.nu.weights[x] > 0 for x in block.members):
            continue
        members = block.sorted()
        for x in members[1:]:
            if kernel.rows[x] != kernel.rows[members[0]]:
                return _bad("L15", "rows differ inside a block", x=members[0], y=x)
    return _ok("L15")


def _synthesized_rows_are_conditionals(case: LawCase) -> PropertyVerdict:
    kernel = make_rcd(case.nu, case.partition)
    for block in case.partition.blocks:
        if not any(case.nu.weights[x] > 0 for x in block.members):
            continue
        expected = conditional_measure(case.nu, block).weights
        for x in block:
            if kernel.rows[x] != expected:
                return _bad("L16", "row is not nu( . | block)", x=x, set_a=block.sorted())
    return _ok("L16")


def _twins_essentially_equal(case: LawCase) -> bool:
    return case.aux is not None and essentially_equal(case.partition, case.aux, case.nu)


def _twin_conditionals_agree(case: LawCase) -> PropertyVerdict:
    first = make_rcd(case.nu, case.partition)
    second = make_rcd(case.nu, case.aux)
    for x in support(case.nu):
        if first.rows[x] != second.rows[x]:
            return _bad("L17", "conditional rows differ at a support point", x=x)
    return _ok("L17")


def _is_rcd_gcp(case: LawCase) -> bool:
    return is_rcd_gcp(case.kernel, case.nu).is_rcd


def _abs_continuous(case: LawCase) -> PropertyVerdict:
    return check_abs_continuous(case.kernel, case.nu)


def _reversible(case: LawCase) -> bool:
    return check_reversible(case.kernel, case.nu).holds


def _self_reversible(case: LawCase) -> bool:
    return check_self_reversible(case.kernel, case.nu).holds


def _self_compatible(case: LawCase) -> PropertyVerdict:
    return check_self_compatible(case.kernel, case.nu)


def _stationary(case: LawCase) -> PropertyVerdict:
    return check_stationary(case.kernel, case.nu)


def _sanity_total_not_stationary() -> LawCase:
    kernel = three_state_block_kernel()
    return LawCase(kernel, unbalanced_three_state_measure(), sigma_of_kernel(kernel))


def _sanity_sr_not_total() -> LawCase:
    kernel = trivial_not_total_kernel()
    return LawCase(kernel, uniform(4), sigma_of_kernel(kernel))


_STRUCTURED = ("rcd", "block", "near_rcd", "dense")

_REGISTRY: List[Law] = [
    Law("L1", "(R) implies (S)", "Trivially, (R) implies (S)",
        ("rcd", "dense", "block", "near_rcd"), _reversible, _reversible_implies_stationary),
    Law("L2", "(SR) implies (SC)", "(SR) implies (SC)",
        _STRUCTURED, _self_reversible, _self_compatible),
    Law("L3", "(T) iff (P) for any partition", "The converse result is easily established",
        ("block", "rcd", "dense", "near_rcd"), _always, _total_iff_proper),
    Law("L4", "nu( . | G) is proper and total w.r.t. G", "G is c.g. under nu",
        ("rcd",), _always, _synthesized_proper_and_total),
    Law("L5", "(SR) and (S) on sigma(R) imply (T) on sigma(R)", "imply (T) w.r.t. sigma(R)",
        _STRUCTURED, _sr_and_restricted_s, _total_on_sigma_verdict),
    Law("L6", "(T) on sigma(R) implies (SR) and (R) on sigma(R)",
        "implies (SR) and (R) w.r.t. nu_sigma(R)",
        ("block", "rcd", "near_rcd", "dense"), _total_on_sigma, _sr_and_restricted_r),
    Law("L7", "full support and (SR) imply trivial on sigma(R)",
        "R_x([x]_sigma(R)) in {0,1}",
        ("rcd_full", "block_full", "near_rcd_full", "dense_full"),
        _full_support_and_sr, _trivial_on_sigma),
    Law("L7P", "full support and (SR): positive self-mass on an atom is full",
        "R_x([x]_sigma(R)) in {0,1}",
        ("rcd_full", "block_full", "near_rcd_full", "dense_full"),
        _full_support_and_sr, _positive_self_mass_is_full),
    Law("L8", "is_rcd agrees with the brute-force oracle", "(i) iff (ii)",
        ("rcd", "near_rcd", "block", "dense"), _always, _rcd_matches_oracle),
    Law("L9", "(T) on sigma(R) implies R is an r.c.d. for nu R", "R( . ) = pi( . | sigma(R))",
        ("block", "rcd", "near_rcd", "dense"), _total_on_sigma, _rcd_of_stationarized),
    Law("L10", "r.c.d.s satisfy (S), (R), (SC), (SR)",
        "follow from standard results on conditional distributions",
        ("rcd", "near_rcd", "block", "dense"), _is_rcd, _rcd_has_four_properties),
    Law("L11", "(SC) everywhere: sigma(R)-block masses determine rows",
        "atoms are determined by R",
        ("rcd", "block", "near_rcd", "dense"), _self_compatible_everywhere,
        _block_masses_determine_rows),
    Law("L12", "R_x([x]) is constant on sigma(R)-atoms", "is sigma(R)-measurable",
        ("dense", "block", "near_rcd"), _always, _self_mass_constant_on_atoms),
    Law("L13", "G refines sigma(R) iff rows are constant on G-blocks",
        "if and only if R_x'(dz)=R_x(dz)",
        ("block", "dense", "near_rcd", "rcd"), _always, _refinement_iff_constant_rows),
    Law("L14", "oracle partitions essentially equal sigma(R)", "nu-essentially unique",
        ("rcd", "near_rcd", "block"), _oracle_nonempty, _oracle_partitions_essentially_sigma),
    Law("L15", "nu( . | G) is constant on positive-mass G-atoms",
        "nu( . |G)(x) = nu( . |G)(y) when [x]_G = [y]_G",
        ("rcd",), _always, _synthesized_rows_constant_on_blocks),
    Law("L16", "nu( . | G) is nu( . | B) on a positive-mass block B",
        "nu( . |G)(x) = nu( . |G) for nu-a.e. x in G",
        ("rcd",), _always, _synthesized_rows_are_conditionals),
    Law("L17", "essentially equal partitions give a.e. equal conditionals",
        "nu-a.e. of their atoms coincide",
        ("twin",), _twins_essentially_equal, _twin_conditionals_agree),
    Law("L18", "partition-generated r.c.d.s have nu-a.e. rows << nu",
        "R_x << nu for nu-a.e. x",
        ("rcd", "near_rcd", "block"), _is_rcd_gcp, _abs_continuous),
    Law("SANITY-1", "(T) on sigma(R) implies (S) [false]", "will not satisfy (S)",
        ("block", "rcd", "dense"), _total_on_sigma, _stationary,
        expect_counterexample=True, fixture=_sanity_total_not_stationary),
    Law("SANITY-2", "(SR) implies (T) on sigma(R) [false]", "trivial, but not total",
        _STRUCTURED, _self_reversible, _total_on_sigma_verdict,
        expect_counterexample=True, fixture=_sanity_sr_not_total),
]

LAWS: Dict[str, Law] = {law.id: law for law in _REGISTRY}

ORACLE_LAWS = frozenset({"L8", "L14"})


def get_law(law_id: str) -> Law:
    key = law_id.strip().upper()
    if key not in LAWS:
        raise UnknownLaw(f"no law {law_id!r}; known: {', '.join(LAWS)}")
    return LAWS[key]


