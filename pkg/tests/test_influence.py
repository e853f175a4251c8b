"""Tests for influence, expected influence profiles and relative influences."""
# Third party imports
import pytest

# First party imports
from inexactlab.boolean.bitvector import BitIndexError, BitVector
from inexactlab.boolean.function import builtin_function, output_range
from inexactlab.boolean.influence import (InfluenceMethod, InfluenceProfile, SampleCountError, ZeroInfluenceError, beta_profile, expected_influence,
                                          influence_at)


def test_binary_evaluation_influence_is_the_bit_weight() -> None:
    be = builtin_function("be", 4)
    assert influence_at(be, BitVector(4, 0b1010), 1) == 1
    assert influence_at(be, BitVector(4, 0b1010), 4) == 8
    assert expected_influence(be).means == (1.0, 2.0, 4.0, 8.0)


def test_xor_influence_is_always_one() -> None:
    xor = builtin_function("xor", 8)
    assert all(influence_at(xor, BitVector(8, value), i) == 1 for value in (0, 37, 255) for i in range(1, 9))
    assert expected_influence(xor).means == (1.0,) * 8


def test_majority_profile_is_symmetric() -> None:
    profile: InfluenceProfile = expected_influence(builtin_function("majority", 3))
    assert profile.means == (0.5, 0.5, 0.5)


def test_influence_index_checked() -> None:
    with pytest.raises(BitIndexError):
        influence_at(builtin_function("xor", 3), BitVector(3, 0), 4)


def test_beta_profile() -> None:
    betas = beta_profile(expected_influence(builtin_function("be", 5)))
    assert betas.betas == (2.0, 2.0, 2.0, 2.0)
    assert betas.common_beta == 2.0
    symmetric = beta_profile(expected_influence(builtin_function("xor", 3)))
    assert symmetric.betas == (1.0, 1.0)
    assert symmetric.common_beta == 1.0
    assert beta_profile(InfluenceProfile.of([1.0, 3.0, 4.0])).common_beta is None


def test_beta_profile_rejects_zero_influence() -> None:
    with pytest.raises(ZeroInfluenceError):
        beta_profile(expected_influence(builtin_function("constant", 3)))


def test_order_by_influence_is_stable() -> None:
    assert InfluenceProfile.of([3.0, 1.0, 3.0, 2.0]).order_by_influence() == (2, 4, 1, 3)


@pytest.mark.parametrize("name", ["be", "xor", "or", "and", "majority", "dictator", "threshold:3"])
def test_monte_carlo_converges(name: str) -> None:
    f = builtin_function(name, 8)
    exact: InfluenceProfile = expected_influence(f)
    sampled: InfluenceProfile = expected_influence(f, InfluenceMethod.MONTE_CARLO, 100000, seed = 20240611)
    assert sampled.method == InfluenceMethod.MONTE_CARLO
    assert sampled.samples == 100000
    for mean, stderr, expected in zip(sampled.means, sampled.stderrs, exact.means):
        assert abs(mean - expected) <= 4 * stderr + 1e-12


def test_monte_carlo_is_thread_invariant() -> None:
    f = builtin_function("be", 6)
    single: InfluenceProfile = expected_influence(f, InfluenceMethod.MONTE_CARLO, 140000, seed = 7, threads = 1)
    pooled: InfluenceProfile = expected_influence(f, InfluenceMethod.MONTE_CARLO, 140000, seed = 7, threads = 4)
    assert single == pooled


def test_monte_carlo_needs_samples() -> None:
    with pytest.raises(SampleCountError):
        expected_influence(builtin_function("xor", 3), InfluenceMethod.MONTE_CARLO, 0, seed = 1)


@pytest.mark.parametrize("name", ["be", "xor", "or", "and", "majority", "dictator", "constant", "threshold:3"])
@pytest.mark.parametrize("n", [4, 9])
def test_exact_influence_is_bounded_by_the_output_range(name: str, n: int) -> None:
    f = builtin_function(name, n)
    bound: int = output_range(f)
    assert all(0.0 <= mean <= bound for mean in expected_influence(f).means)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["be", "xor", "or", "and", "majority", "dictator", "threshold:3"])
def test_monte_carlo_agrees_for_most_seeds(name: str) -> None:
    f = builtin_function(name, 12)
    exact: InfluenceProfile = expected_influence(f)
    agreeing: int = 0
    for seed in range(20):
        sampled: InfluenceProfile = expected_influence(f, InfluenceMethod.MONTE_CARLO, 100000, seed = seed)
        agreeing += all(abs(mean - expected) <= 4 * stderr + 1e-12 for mean, stderr, expected in zip(sampled.means, sampled.stderrs, exact.means))
    assert agreeing >= 19
