"""Tests for seeded substreams and the ordered worker pool."""
from typing import List

# Third party imports
import numpy as np
from hypothesis import given
from hypothesis import strategies as st

# First party imports
from inexactlab.parallel import default_threads, map_ordered
from inexactlab.rng import SEED_MASK, derive_seed, draw_seed, generator, splitmix64, substream

seeds = st.integers(min_value = 0, max_value = SEED_MASK)


def test_splitmix64_reference_value() -> None:
    # First output of the reference generator seeded with 0
    assert splitmix64(1) == 0xE220A8397B1DCDAF


@given(seeds, st.integers(min_value = 0, max_value = 10 ** 6))
def test_derived_seeds_fit_in_64_bits(seed: int, index: int) -> None:
    derived: int = derive_seed(seed, index)
    assert 0 <= derived <= SEED_MASK
    assert derived == seed ^ splitmix64(index + 1)


def test_substreams_are_reproducible_and_distinct() -> None:
    first: np.ndarray = substream(42, 3).integers(0, 1 << 32, size = 8)
    assert np.array_equal(first, substream(42, 3).integers(0, 1 << 32, size = 8))
    assert not np.array_equal(first, substream(42, 4).integers(0, 1 << 32, size = 8))
    assert generator(5).random() == generator(5).random()


def test_draw_seed_range() -> None:
    assert 0 <= draw_seed() <= SEED_MASK


def test_map_ordered_keeps_input_order() -> None:
    items: List[int] = list(range(50))
    assert map_ordered(lambda item: item * item, items, threads = 8) == [item * item for item in items]
    assert map_ordered(lambda item: item, [], threads = 4) == []


def test_default_threads(monkeypatch) -> None:
    monkeypatch.setenv("INEXACTLAB_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("INEXACTLAB_THREADS", "zero")
    assert default_threads() >= 1
