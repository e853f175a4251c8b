"""Tests for wkt estimation, α*, input classification and truncation sweeps."""
import math
from typing import List

# Third party imports
import pytest

# First party imports
from inexactlab.boolean.influence import SampleCountError
from inexactlab.rng import generator, substream
from inexactlab.sort import bounds
from inexactlab.sort.experiment import (RatioEstimate, WktEstimate, alpha_star_estimate, classify_inputs, compare_schemes, expected_wkt,
                                        truncation_sweep)
from inexactlab.sort.instance import SortInstance, generate_instance
from inexactlab.sort.quicksort import NoiseMode
from inexactlab.sort.scheme import EnergyScheme


def test_bounds() -> None:
    assert bounds.aware_wkt_bound(8) == pytest.approx(50 * 64 * 3)
    assert bounds.pair_error_bound(3, 11) == pytest.approx(1.0)
    assert bounds.good_threshold(12, 16) == pytest.approx(4 / 64)
    assert bounds.good_threshold(12, 16, 2.0, k = 2) == pytest.approx(2 * 2 ** (12 * (2 - 5 / 3) / 6) / 64)
    assert bounds.bad_fraction_bound(24, 8) == pytest.approx(0.25)
    assert bounds.alpha_star_shape(8, 32) == pytest.approx(16 / 160)


def test_expected_wkt_is_thread_invariant() -> None:
    instance: SortInstance = generate_instance(10, 16, generator(8))
    scheme: EnergyScheme = EnergyScheme.oblivious(10)
    single: WktEstimate = expected_wkt(instance, scheme, 40, seed = 6, threads = 1)
    pooled: WktEstimate = expected_wkt(instance, scheme, 40, seed = 6, threads = 4)
    assert single == pooled
    assert single.mean > 0.0
    assert single.stderr > 0.0


def test_expected_wkt_needs_trials() -> None:
    with pytest.raises(SampleCountError):
        expected_wkt(SortInstance(3, (1, 2)), EnergyScheme.aware(3), 0, seed = 1)


def test_aware_beats_oblivious_at_small_scale() -> None:
    estimate: RatioEstimate = alpha_star_estimate(10, 16, instances = 10, trials = 50, seed = 31)
    assert estimate.numerator == "oblivious"
    assert estimate.denominator == "aware"
    assert estimate.ratio > 1.0
    assert estimate.ci_low <= estimate.ratio <= estimate.ci_high
    assert estimate.good_count + estimate.bad_count == 10
    assert estimate.threshold == pytest.approx(bounds.good_threshold(10, 16))
    assert estimate.to_json()["ratio"] == pytest.approx(estimate.ratio)


def test_ratio_estimate_is_thread_invariant() -> None:
    single: RatioEstimate = alpha_star_estimate(8, 8, instances = 6, trials = 20, seed = 12, threads = 1)
    pooled: RatioEstimate = alpha_star_estimate(8, 8, instances = 6, trials = 20, seed = 12, threads = 3)
    assert single == pooled


def test_degenerate_denominator() -> None:
    noiseless: EnergyScheme = EnergyScheme.uniform(8, 60.0)
    estimate: RatioEstimate = compare_schemes(8, 8, 3, 5, 1, EnergyScheme.oblivious(8), noiseless, 1.0)
    assert estimate.degenerate
    assert math.isinf(estimate.ratio)
    assert estimate.good_count == 3
    assert estimate.to_json()["ratio"] is None


def test_classify_matches_alpha_star() -> None:
    classified: RatioEstimate = classify_inputs(10, 8, 5, 1.0, 10, seed = 2)
    assert classified == alpha_star_estimate(10, 8, 5, 10, 2, 1.0)
    assert classified.bad_fraction == classified.bad_count / 5


def test_truncation_sweep_rows() -> None:
    rows = truncation_sweep([6, 8], 8, [1, 2], instances = 2, trials = 5, seed = 3, noise_mode = NoiseMode.PER_ELEMENT)
    assert [(row.n, row.denominator) for row in rows] == [(6, "truncated(k=1)"), (8, "truncated(k=1)"), (6, "truncated(k=2)"), (8, "truncated(k=2)")]
    assert all(row.numerator == "oblivious" for row in rows)
    # Every k is measured on the same instances, so the numerator doesn't change with k
    assert rows[0].mean_numerator == rows[2].mean_numerator


@pytest.mark.slow
def test_aware_wkt_bound_holds() -> None:
    scheme: EnergyScheme = EnergyScheme.aware(16)
    for index in range(50):
        instance: SortInstance = generate_instance(16, 64, generator(index))
        assert expected_wkt(instance, scheme, 500, seed = index, threads = 4).mean < bounds.aware_wkt_bound(64)


@pytest.mark.slow
def test_alpha_star_grows_with_n() -> None:
    small: RatioEstimate = alpha_star_estimate(8, 32, 50, 500, seed = 1, threads = 4)
    large: RatioEstimate = alpha_star_estimate(12, 32, 50, 500, seed = 1, threads = 4)
    assert small.ratio > 1.0
    assert large.ratio >= 2 * small.ratio


@pytest.mark.slow
def test_bad_inputs_are_rare() -> None:
    estimate: RatioEstimate = classify_inputs(24, 8, 200, 1.0, 200, seed = 5, threads = 4)
    assert estimate.bad_fraction <= 0.30


@pytest.mark.slow
def test_truncation_window() -> None:
    rows = truncation_sweep([12, 18], 16, [2, 6], 50, 500, seed = 9, threads = 4)
    k2_small, k2_large, k6_small, k6_large = rows
    assert k2_large.ratio >= 2 * k2_small.ratio
    assert k6_large.ratio < 2 * k6_small.ratio


@pytest.mark.slow
def test_oblivious_wkt_exceeds_aware_wkt() -> None:
    instance: SortInstance = generate_instance(16, 64, generator(16))
    oblivious: WktEstimate = expected_wkt(instance, EnergyScheme.oblivious(16), 1000, seed = 1)
    aware: WktEstimate = expected_wkt(instance, EnergyScheme.aware(16), 1000, seed = 2)
    assert oblivious.mean - aware.mean > 2.576 * math.hypot(oblivious.stderr, aware.stderr)


@pytest.mark.slow
def test_oblivious_wkt_grows_with_n() -> None:
    means: List[float] = []
    for n in (12, 16):
        estimates: List[float] = [expected_wkt(generate_instance(n, 32, substream(n, index)), EnergyScheme.oblivious(n), 200, seed = index).mean
                                  for index in range(10)]
        means.append(sum(estimates) / len(estimates))
    assert means[1] >= 2 * means[0]
