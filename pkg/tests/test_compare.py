"""Tests for energy schemes and the noisy comparator."""
# Third party imports
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# First party imports
from inexactlab.boolean.bitvector import WidthError
from inexactlab.error import ParameterError
from inexactlab.rng import substream
from inexactlab.sort import bounds
from inexactlab.sort.compare import (Ordering, PairErrorEstimate, comparison_error_probability, first_differing_bit, noisy_compare,
                                     pair_error_estimate)
from inexactlab.sort.instance import SortInstance, generate_instance
from inexactlab.sort.scheme import EnergyScheme, InvalidSchemeError, SchemeKind


def test_aware_and_oblivious_spend_the_same_budget() -> None:
    aware: EnergyScheme = EnergyScheme.aware(6)
    oblivious: EnergyScheme = EnergyScheme.oblivious(6)
    assert aware.energy.entries == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
    assert oblivious.energy.entries == (3.5,) * 6
    assert aware.energy.total == oblivious.energy.total == 21.0
    assert aware.probs.entries[0] == 0.5


def test_truncated_scheme() -> None:
    scheme: EnergyScheme = EnergyScheme.truncated(12, 3)
    assert scheme.energy.entries == (0.0,) * 8 + (18.0,) * 4
    assert scheme.label == "truncated(k=3)"
    assert scheme.energy.total == pytest.approx(12 ** 2 / 2)
    assert EnergyScheme.truncated(12, 1).energy.entries == (6.0,) * 12
    with pytest.raises(InvalidSchemeError):
        EnergyScheme.truncated(4, 5)
    with pytest.raises(InvalidSchemeError):
        EnergyScheme.truncated(4, 0)


def test_named_schemes() -> None:
    assert EnergyScheme.named("aware", 4).kind == SchemeKind.AWARE
    assert EnergyScheme.named("oblivious", 4).kind == SchemeKind.OBLIVIOUS
    assert EnergyScheme.named("truncated", 4, 2).k == 2
    with pytest.raises(InvalidSchemeError):
        EnergyScheme.named("truncated", 4)
    with pytest.raises(InvalidSchemeError):
        EnergyScheme.named("greedy", 4)


def test_first_differing_bit() -> None:
    assert first_differing_bit(0b1000, 0b0111) == 4
    assert first_differing_bit(0b0101, 0b0100) == 1
    assert first_differing_bit(9, 9) == 0


def test_near_noiseless_comparisons_are_correct() -> None:
    scheme: EnergyScheme = EnergyScheme.uniform(8, 40.0)
    estimate: PairErrorEstimate = pair_error_estimate(17, 200, scheme, 100000, seed = 5)
    assert estimate.error == 0.0
    assert noisy_compare(17, 200, scheme, 1) == Ordering.LESS
    assert noisy_compare(200, 17, scheme, 1) == Ordering.GREATER


def test_zero_energy_reverses_every_comparison() -> None:
    scheme: EnergyScheme = EnergyScheme.uniform(4, 0.0)
    assert comparison_error_probability(3, 12, scheme) == pytest.approx(1.0)
    assert noisy_compare(3, 12, scheme, 8) == Ordering.GREATER


def test_comparator_validation() -> None:
    scheme: EnergyScheme = EnergyScheme.aware(4)
    with pytest.raises(WidthError):
        noisy_compare(16, 1, scheme, 0)
    with pytest.raises(ParameterError):
        comparison_error_probability(5, 5, scheme)
    with pytest.raises(ParameterError):
        pair_error_estimate(5, 5, scheme, 10, 0)


@given(st.integers(min_value = 2, max_value = 10), st.data())
def test_ties_count_as_less(n: int, data: st.DataObject) -> None:
    a: int = data.draw(st.integers(min_value = 0, max_value = (1 << n) - 1))
    b: int = data.draw(st.integers(min_value = 0, max_value = (1 << n) - 1).filter(lambda value: value != a))
    scheme: EnergyScheme = EnergyScheme.aware(n)
    # Swapping the operands moves the tie probability from one error to the other
    low, high = min(a, b), max(a, b)
    tie: float = 1.0
    for i, p in enumerate(scheme.probs.entries):
        same: bool = (low >> i) & 1 == (high >> i) & 1
        tie *= p * p + (1 - p) * (1 - p) if same else 2 * p * (1 - p)
    error_high: float = comparison_error_probability(high, low, scheme)
    error_low: float = comparison_error_probability(low, high, scheme)
    assert 0.0 <= error_low <= error_high <= 1.0
    assert error_high - error_low == pytest.approx(tie, abs = 1e-12)


@given(st.integers(min_value = 0, max_value = 2 ** 32 - 1))
@settings(max_examples = 20, deadline = None)
def test_simulation_matches_exact_probability(seed: int) -> None:
    scheme: EnergyScheme = EnergyScheme.oblivious(6)
    pair: SortInstance = generate_instance(6, 2, substream(seed, 0))
    a, b = pair.elements
    estimate: PairErrorEstimate = pair_error_estimate(a, b, scheme, 20000, seed)
    exact: float = comparison_error_probability(a, b, scheme)
    assert abs(estimate.error - exact) <= 5 * max(estimate.stderr, (exact * (1 - exact) / 20000) ** 0.5) + 1e-9


def test_pair_estimate_is_thread_invariant() -> None:
    scheme: EnergyScheme = EnergyScheme.aware(10)
    assert pair_error_estimate(100, 101, scheme, 150000, 3, threads = 1) == pair_error_estimate(100, 101, scheme, 150000, 3, threads = 3)


@pytest.mark.slow
def test_aware_scaled_pair_error_is_bounded() -> None:
    scheme: EnergyScheme = EnergyScheme.aware(12)
    for index in range(1000):
        a, b = generate_instance(12, 2, substream(2024, index)).elements
        estimate: PairErrorEstimate = pair_error_estimate(a, b, scheme, 100000, index)
        assert estimate.scaled_error < bounds.PAIR_ERROR_CONSTANT


def test_aware_scheme_protects_the_most_significant_bit() -> None:
    scheme: EnergyScheme = EnergyScheme.aware(8)
    assert comparison_error_probability(0, 128, scheme) * 128 < bounds.PAIR_ERROR_CONSTANT


@pytest.mark.slow
def test_aware_most_significant_bit_pair_error_is_bounded() -> None:
    estimate: PairErrorEstimate = pair_error_estimate(0, 128, EnergyScheme.aware(8), 1000000, 41)
    assert estimate.scaled_error < bounds.PAIR_ERROR_CONSTANT
