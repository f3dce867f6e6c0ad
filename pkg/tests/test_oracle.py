from fractions import Fraction

import pytest

from rcdkit.core.errors import DimensionMismatch, FloatModeRefused, TooLarge
from rcdkit.core.generators import (
    KernelStructure,
    draw_kernel,
    draw_measure,
    draw_partition,
    rng_for,
)
from rcdkit.core.measures import Kernel, Measure, uniform
from rcdkit.core.oracle import enumerate_partitions, oracle_is_rcd
from rcdkit.core.partitions import Partition, bell_number, essentially_equal
from rcdkit.core.rcd import is_rcd, sigma_of_kernel


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_enumeration_visits_each_partition_once(n):
    seen = [tuple(map(tuple, p.as_lists())) for p in enumerate_partitions(n)]
    assert len(seen) == bell_number(n)
    assert len(set(seen)) == len(seen)


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        next(enumerate_partitions(11))
    with pytest.raises(TooLarge):
        next(enumerate_partitions(5, max_n=4))


def test_oracle_accepts_sigma_under_stationary_measure(four_state, four_state_stationary):
    result = oracle_is_rcd(four_state, four_state_stationary)
    assert result.accepted == [[[0], [1], [2, 3]]]
    assert result.partitions_scanned == 15


def test_oracle_rejects_everything_under_uniform(four_state, uniform4):
    assert oracle_is_rcd(four_state, uniform4).accepted == []


def test_oracle_refuses_float_instances():
    eps = Fraction(1, 10**6)
    kernel = Kernel(((1, 0), (0, 1)), eps)
    with pytest.raises(FloatModeRefused):
        oracle_is_rcd(kernel, uniform(2))
    with pytest.raises(FloatModeRefused):
        oracle_is_rcd(Kernel(((1, 0), (0, 1))), Measure((Fraction(1, 2),) * 2, eps))


def test_oracle_dimension_mismatch(three_state, uniform4):
    with pytest.raises(DimensionMismatch):
        oracle_is_rcd(three_state, uniform4)


def _seeded_instance(seed):
    rng = rng_for(seed)
    n = 2 + int(rng.integers(4))
    nu = draw_measure(rng, n, allow_zeros=True)
    partition = draw_partition(rng, n)
    shape = seed % 4
    if shape == 0:
        structure = KernelStructure.dense()
    elif shape == 1:
        structure = KernelStructure.block(partition)
    elif shape == 2:
        structure = KernelStructure.rcd(nu, partition)
    else:
        structure = KernelStructure.near_rcd(nu, partition)
    return rng, nu, draw_kernel(rng, n, structure)


def test_oracle_agrees_with_is_rcd_on_seeded_instances():
    for seed in range(500):
        _, nu, kernel = _seeded_instance(seed)
        result = oracle_is_rcd(kernel, nu)
        assert bool(result.accepted) == is_rcd(kernel, nu).is_rcd, seed
        sigma = sigma_of_kernel(kernel)
        for blocks in result.accepted:
            assert essentially_equal(Partition.from_lists(blocks, kernel.n), sigma, nu), seed


def test_accepted_partitions_hold_on_random_events():
    checked = 0
    for seed in range(200):
        rng, nu, kernel = _seeded_instance(seed)
        n = kernel.n
        for blocks in oracle_is_rcd(kernel, nu).accepted:
            for _ in range(4):
                a = [x for block in blocks if rng.integers(2) for x in block]
                b = [y for y in range(n) if rng.integers(2)]
                lhs = sum(nu.weights[x] * sum(kernel.rows[x][y] for y in b) for x in a)
                rhs = sum(nu.weights[x] for x in a if x in b)
                assert lhs == rhs, seed
                checked += 1
    assert checked > 0


def test_three_state_sweep_matches_oracle(three_state):
    for q in range(1, 7):
        for a in range(q + 1):
            for b in range(q + 1 - a):
                nu = Measure((Fraction(a, q), Fraction(b, q), Fraction(q - a - b, q)))
                balanced = nu.weights[1] == nu.weights[2]
                assert bool(oracle_is_rcd(three_state, nu).accepted) == balanced, nu
                assert is_rcd(three_state, nu).is_rcd == balanced, nu
