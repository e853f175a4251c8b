"""Tests for the Low-Degree learning algorithm and its degree cap."""
from math import comb
from typing import List, Tuple

# Third party imports
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

# First party imports
from inexactlab.boolean.bitvector import BitVector
from inexactlab.boolean.function import builtin_function
from inexactlab.boolean.influence import expected_influence
from inexactlab.energy.allocation import InvalidBetaError
from inexactlab.error import ParameterError
from inexactlab.fourier.spectrum import FourierSpectrum, fourier_transform
from inexactlab.fourier.learning import (EmptyExampleSetError, LabelError, LearnedHypothesis, LearningParameters, compute_k, draw_examples,
                                         estimate_coefficients, hypothesis_error, learning_parameters, low_degree_learn, subset_masks)
from inexactlab.rng import substream


def _learn(name: str, n: int, k: int, m: int, seed: int) -> Tuple[LearnedHypothesis, float]:
    f = builtin_function(name, n)
    values, labels = draw_examples(f, m, substream(seed, 0))
    h: LearnedHypothesis = estimate_coefficients(values, labels, n, k)
    return h, hypothesis_error(h, f, 10000, substream(seed, 1))


def test_subset_masks_order() -> None:
    assert subset_masks(3, 1) == (0b000, 0b001, 0b010, 0b100)
    assert subset_masks(3, 2) == (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110)
    with pytest.raises(ParameterError):
        subset_masks(3, 4)


@given(st.integers(min_value = 1, max_value = 12), st.data())
def test_subset_mask_count(n: int, data: st.DataObject) -> None:
    k: int = data.draw(st.integers(min_value = 0, max_value = n))
    masks: Tuple[int, ...] = subset_masks(n, k)
    assert len(masks) == sum(comb(n, j) for j in range(k + 1))
    assert len(set(masks)) == len(masks)
    assert all(bin(mask).count("1") <= k for mask in masks)


def test_compute_k() -> None:
    assert compute_k(1.0, 2.0, 0.1) == 5
    assert compute_k(0.01, 10.0, 1.0) == 0
    with pytest.raises(InvalidBetaError):
        compute_k(1.0, 1.0, 0.1)
    with pytest.raises(ParameterError):
        compute_k(0.0, 2.0, 0.1)
    with pytest.raises(ParameterError):
        compute_k(1.0, 2.0, 0.0)


@given(st.floats(min_value = 1e-3, max_value = 1e3), st.floats(min_value = 1.01, max_value = 10.0), st.floats(min_value = 1e-3, max_value = 1.0))
def test_compute_k_is_the_smallest_cap(inf_bound: float, beta1: float, epsilon: float) -> None:
    k: int = compute_k(inf_bound, beta1, epsilon)
    assert inf_bound * beta1 ** -k / (beta1 - 1) < epsilon / 2
    if k > 0:
        assert inf_bound * beta1 ** -(k - 1) / (beta1 - 1) >= epsilon / 2


def test_learning_parameters() -> None:
    parameters: LearningParameters = learning_parameters(expected_influence(builtin_function("be", 4)))
    assert parameters == LearningParameters(8.0, 2.0, 2.0)
    with pytest.raises(ParameterError):
        learning_parameters(expected_influence(builtin_function("dictator", 1)))


def test_dictator_is_learned_at_degree_one() -> None:
    h, error = _learn("dictator", 8, 1, 10000, seed = 99)
    assert error <= 0.05
    assert h.coefficient(0b1) == pytest.approx(1.0)
    assert h.coefficient(0b11) == 0.0
    assert h(BitVector(8, 0b1)) == -1
    assert h(BitVector(8, 0b10)) == 1


def test_xor_is_not_learned_at_degree_one() -> None:
    _, error = _learn("xor", 8, 1, 10000, seed = 99)
    assert error == pytest.approx(0.5, abs = 0.05)


def test_majority_is_learned_from_its_full_spectrum() -> None:
    _, error = _learn("majority", 5, 5, 20000, seed = 4)
    assert error == 0.0


def test_low_degree_learn_on_bit_vectors() -> None:
    f = builtin_function("dictator", 3)
    examples: List[Tuple[BitVector, int]] = [(BitVector(3, value), int(f.evaluate_signed(np.array([value]))[0])) for value in range(8)]
    h: LearnedHypothesis = low_degree_learn(examples, 3, 1)
    assert h.coefficients == pytest.approx((0.0, 1.0, 0.0, 0.0))
    assert low_degree_learn(examples, 3, 1, m = 4).examples == 4


def test_estimates_are_thread_invariant() -> None:
    f = builtin_function("majority", 7)
    values, labels = draw_examples(f, 200000, substream(3, 0))
    assert estimate_coefficients(values, labels, 7, 3, threads = 1) == estimate_coefficients(values, labels, 7, 3, threads = 4)


def test_example_validation() -> None:
    with pytest.raises(EmptyExampleSetError):
        estimate_coefficients(np.zeros(0, dtype = np.uint64), np.zeros(0, dtype = np.int64), 3, 1)
    with pytest.raises(LabelError):
        estimate_coefficients(np.array([0, 1], dtype = np.uint64), np.array([1, 0]), 3, 1)
    with pytest.raises(EmptyExampleSetError):
        low_degree_learn([], 3, 1)


@pytest.mark.slow
def test_learning_holds_across_seeds() -> None:
    dictator_passes: int = sum(1 for seed in range(20) if _learn("dictator", 8, 1, 10000, seed)[1] <= 0.05)
    xor_passes: int = sum(1 for seed in range(20) if abs(_learn("xor", 8, 1, 10000, seed)[1] - 0.5) <= 0.05)
    assert dictator_passes >= 18
    assert xor_passes >= 18


def test_majority_is_learned_at_degree_three() -> None:
    _, error = _learn("majority", 5, 3, 100000, seed = 5)
    assert error <= 0.1


@pytest.mark.slow
def test_coefficient_estimates_converge_at_root_m() -> None:
    f = builtin_function("majority", 5)
    spectrum: FourierSpectrum = fourier_transform(f)
    deviations: List[float] = []
    for m in (100, 1000, 10000, 100000):
        worst: List[float] = []
        for seed in range(5):
            values, labels = draw_examples(f, m, substream(seed, m))
            h: LearnedHypothesis = estimate_coefficients(values, labels, 5, 5)
            worst.append(max(abs(h.coefficient(mask) - spectrum.coefficient(mask)) for mask in h.masks))
        assert max(worst) * np.sqrt(m) <= 6.0
        deviations.append(float(np.mean(worst)))
    assert deviations == sorted(deviations, reverse = True)
    assert deviations[-1] <= deviations[0] / 10
