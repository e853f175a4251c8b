"""Tests for the built-in functions, truth-table files and function properties."""
import json
import pathlib

# Third party imports
import numpy as np
import pytest

# First party imports
from inexactlab.boolean.bitvector import BitVector
from inexactlab.boolean.function import (BUILTIN_NAMES, ArityTooLargeError, NonBooleanFunctionError, TruthTableError, UnknownFunctionError,
                                         builtin_function, is_symmetric, load_truth_table, output_range, resolve_function)


def test_binary_evaluation_returns_the_value() -> None:
    be = builtin_function("be", 5)
    assert be(BitVector(5, 23)) == 23
    assert output_range(be) == 31
    assert not be.boolean


def test_builtins_on_small_inputs() -> None:
    x: BitVector = BitVector.from_bits([1, 1, 0])
    assert builtin_function("xor", 3)(x) == 0
    assert builtin_function("or", 3)(x) == 1
    assert builtin_function("and", 3)(x) == 0
    assert builtin_function("majority", 3)(x) == 1
    assert builtin_function("dictator", 3)(x) == 1
    assert builtin_function("constant", 3)(x) == 0
    assert builtin_function("threshold:2", 3)(x) == 1
    assert builtin_function("threshold:3", 3)(x) == 0


def test_signed_view_maps_zero_to_plus_one() -> None:
    xor = builtin_function("xor", 2)
    assert list(xor.evaluate_signed(np.arange(4, dtype = np.uint64))) == [1, -1, -1, 1]
    assert xor.signed_view()(BitVector(2, 1)) == -1
    with pytest.raises(NonBooleanFunctionError):
        builtin_function("be", 3).signed_view()


@pytest.mark.parametrize("name", ["xor", "or", "and", "majority", "constant", "threshold:2"])
def test_symmetric_builtins(name: str) -> None:
    assert is_symmetric(builtin_function(name, 5))


@pytest.mark.parametrize("name", ["be", "dictator"])
def test_asymmetric_builtins(name: str) -> None:
    assert not is_symmetric(builtin_function(name, 4))


@pytest.mark.parametrize("name", ["nand", "threshold:x", "threshold:"])
def test_unknown_names(name: str) -> None:
    with pytest.raises(UnknownFunctionError):
        builtin_function(name, 3)


def test_builtin_names_are_listed() -> None:
    assert "be" in BUILTIN_NAMES
    assert "threshold:t" in BUILTIN_NAMES


def test_load_truth_table(tmp_path: pathlib.Path) -> None:
    path: pathlib.Path = tmp_path.joinpath("nand.json")
    path.write_text(json.dumps({"name": "nand", "n": 2, "outputs": [1, 1, 1, 0]}), encoding = "utf-8")
    nand = load_truth_table(path)
    assert nand.name == "nand"
    assert nand.boolean
    assert [nand(BitVector(2, value)) for value in range(4)] == [1, 1, 1, 0]
    assert resolve_function(None, None, path).name == "nand"


@pytest.mark.parametrize("document", [
    {"name": "short", "n": 2, "outputs": [0, 1, 1]},
    {"name": "negative", "n": 1, "outputs": [0, -1]},
    {"name": "wide", "n": 0, "outputs": [0]},
    {"n": 1, "outputs": [0, 1]},
    [0, 1],
])
def test_malformed_truth_tables(tmp_path: pathlib.Path, document: object) -> None:
    path: pathlib.Path = tmp_path.joinpath("table.json")
    path.write_text(json.dumps(document), encoding = "utf-8")
    with pytest.raises(TruthTableError):
        load_truth_table(path)


def test_unreadable_truth_table(tmp_path: pathlib.Path) -> None:
    with pytest.raises(TruthTableError):
        load_truth_table(tmp_path.joinpath("missing.json"))


def test_enumeration_limit() -> None:
    with pytest.raises(ArityTooLargeError):
        builtin_function("xor", 21).table()
