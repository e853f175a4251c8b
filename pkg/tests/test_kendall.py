"""Tests for the weighted Kendall τ and sort instances."""
import json
import pathlib
from itertools import permutations
from typing import Tuple

# Third party imports
import pytest
from hypothesis import given
from hypothesis import strategies as st

# First party imports
from inexactlab.boolean.bitvector import WidthError
from inexactlab.error import ParameterError
from inexactlab.rng import generator
from inexactlab.sort.instance import DuplicateElementsError, InstanceFileError, SortInstance, generate_instance, load_instance, save_instance
from inexactlab.sort.kendall import NotAPermutationError, weighted_kendall_tau


def test_weighted_kendall_tau_examples() -> None:
    assert weighted_kendall_tau([9, 2, 5], SortInstance(4, (5, 2, 9))) == 11
    assert weighted_kendall_tau([3, 2, 1], SortInstance(2, (1, 2, 3))) == 4
    assert weighted_kendall_tau([1, 2, 3], SortInstance(2, (3, 1, 2))) == 0


def test_output_must_be_a_permutation() -> None:
    with pytest.raises(NotAPermutationError):
        weighted_kendall_tau([1, 2], SortInstance(2, (1, 2, 3)))
    with pytest.raises(NotAPermutationError):
        weighted_kendall_tau([1, 1, 3], SortInstance(2, (1, 2, 3)))


def test_wide_elements_do_not_overflow() -> None:
    top: int = (1 << 63) - 1
    assert weighted_kendall_tau([top, 0, 1], SortInstance(63, (0, 1, top))) == 2 * top - 1


@given(st.lists(st.integers(min_value = 0, max_value = 255), min_size = 1, max_size = 6, unique = True), st.data())
def test_zero_exactly_when_sorted(elements: list, data: st.DataObject) -> None:
    instance: SortInstance = SortInstance(8, tuple(elements))
    output: Tuple[int, ...] = data.draw(st.sampled_from(list(permutations(elements))))
    wkt: int = weighted_kendall_tau(output, instance)
    assert wkt >= 0
    assert (wkt == 0) == (list(output) == sorted(elements))


def test_generated_instances_are_distinct() -> None:
    instance: SortInstance = generate_instance(4, 16, generator(1))
    assert instance.distinct
    assert sorted(instance.elements) == list(range(16))
    assert generate_instance(12, 32, generator(9)) == generate_instance(12, 32, generator(9))
    with pytest.raises(ParameterError):
        generate_instance(3, 9, generator(1))


def test_duplicates_are_named() -> None:
    instance: SortInstance = SortInstance(4, (3, 7, 3))
    assert not instance.distinct
    with pytest.raises(DuplicateElementsError):
        instance.require_distinct()
    with pytest.raises(WidthError):
        SortInstance(3, (8,))


def test_instance_files(tmp_path: pathlib.Path) -> None:
    path: pathlib.Path = tmp_path.joinpath("instance.json")
    instance: SortInstance = SortInstance(6, (40, 3, 17))
    save_instance(instance, path)
    assert load_instance(path) == instance

    path.write_text(json.dumps({"n": 6, "N": 4, "elements": [1, 2, 3]}), encoding = "utf-8")
    with pytest.raises(InstanceFileError):
        load_instance(path)
    path.write_text(json.dumps({"n": 2, "elements": [1, 9]}), encoding = "utf-8")
    with pytest.raises(InstanceFileError):
        load_instance(path)
    with pytest.raises(InstanceFileError):
        load_instance(tmp_path.joinpath("missing.json"))
