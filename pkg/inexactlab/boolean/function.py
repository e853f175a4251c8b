"""Boolean functions f:{0,1}^n -> N, the built-in function registry and truth-table files.

Functions are evaluated on NumPy arrays of unsigned input values so that whole truth tables or large
Monte Carlo batches are evaluated in one call.
"""
import json
import logging
import pathlib
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Dict, Optional, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import BitVector, WidthError, check_width
from inexactlab.error import InexactError

_log: logging.Logger = logging.getLogger(__name__)

EXACT_ARITY_MAX: int = 20

Evaluator = Callable[[np.ndarray], np.ndarray]


# *** ArityTooLargeError ****************************************************

class ArityTooLargeError(InexactError):
    """Exception which is raised when an operation would enumerate more inputs than it allows.

    Attributes:
        arity (int): The arity of the function.
        limit (int): The largest arity the operation accepts.
    """

    def __init__(self, arity: int, limit: int, operation: str) -> None:
        """Initialize an ArityTooLargeError exception, including the arity and the limit in the error message.

        Args:
            arity (int): The arity of the function.
            limit (int): The largest arity the operation accepts.
            operation (str): The name of the operation which was refused.
        """
        self.arity: int = arity
        self.limit: int = limit
        super().__init__(f"{operation} requires n <= {limit}, got n = {arity}")


# *** NonBooleanFunctionError ***********************************************

class NonBooleanFunctionError(InexactError):
    """Exception which is raised when a {0,1}-valued function is required but the function has other outputs."""

    def __init__(self, name: str) -> None:
        """Initialize a NonBooleanFunctionError exception.

        Args:
            name (str): The name of the function.
        """
        super().__init__(f"Function {name} is not {{0,1}}-valued, so it has no signed view")


# *** UnknownFunctionError **************************************************

class UnknownFunctionError(InexactError):
    """Exception which is raised when a function name doesn't match any built-in function."""

    def __init__(self, name: str) -> None:
        """Initialize an UnknownFunctionError exception.

        Args:
            name (str): The requested function name.
        """
        super().__init__(f"No built-in function named '{name}', expected one of {', '.join(BUILTIN_NAMES)}")


# *** TruthTableError *******************************************************

class TruthTableError(InexactError):
    """Exception which is raised when a truth-table file is malformed."""

    def __init__(self, path: pathlib.Path, reason: str) -> None:
        """Initialize a TruthTableError exception, including the file path in the error message.

        Args:
            path (pathlib.Path): The path of the truth-table file.
            reason (str): What was wrong with the file.
        """
        super().__init__(f"Invalid truth table {path}: {reason}")


# *** CodomainView **********************************************************

class CodomainView(Enum):
    """How the outputs of a function are presented."""

    NATURAL = "natural"
    SIGNED = "signed"


# *** FunctionDescriptor ****************************************************

@dataclass(frozen = True)
class FunctionDescriptor:
    """A deterministic, total function over {0,1}^n.

    Attributes:
        name (str): The identifier of the function.
        arity (int): The number of input bits n.
        evaluator (Evaluator): Maps an array of unsigned input values to an int64 array of non-negative outputs.
        boolean (bool): Whether every output is 0 or 1.
        view (CodomainView): Whether outputs are presented as naturals or as signs (0 -> +1, 1 -> -1).
    """

    name: str
    arity: int
    evaluator: Evaluator
    boolean: bool
    view: CodomainView = CodomainView.NATURAL

    def __post_init__(self) -> None:
        """Validate the arity."""
        check_width(self.arity)

    def __call__(self, x: BitVector) -> int:
        """Evaluate the function on a single input under the configured view.

        Args:
            x (BitVector): The input vector.

        Returns:
            int: The output.
        """
        if x.n != self.arity:
            raise WidthError(f"Function {self.name} has arity {self.arity} but the input has {x.n} bits")
        return int(self.evaluate_view(np.array([x.value], dtype = np.uint64))[0])

    def evaluate(self, values: np.ndarray) -> np.ndarray:
        """Evaluate the natural-valued function on an array of input values.

        Args:
            values (np.ndarray): Unsigned input values, each in [0, 2^n - 1].

        Returns:
            np.ndarray: The int64 outputs.
        """
        return np.asarray(self.evaluator(np.asarray(values, dtype = np.uint64)), dtype = np.int64)

    def evaluate_signed(self, values: np.ndarray) -> np.ndarray:
        """Evaluate the ±1 view of a {0,1}-valued function, mapping output 0 to +1 and output 1 to -1.

        Args:
            values (np.ndarray): Unsigned input values, each in [0, 2^n - 1].

        Raises:
            NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

        Returns:
            np.ndarray: The int64 outputs, each -1 or +1.
        """
        if not self.boolean:
            raise NonBooleanFunctionError(self.name)
        return 1 - 2 * self.evaluate(values)

    def evaluate_view(self, values: np.ndarray) -> np.ndarray:
        """Evaluate the function under its configured codomain view.

        Args:
            values (np.ndarray): Unsigned input values, each in [0, 2^n - 1].

        Returns:
            np.ndarray: The int64 outputs.
        """
        if self.view == CodomainView.SIGNED:
            return self.evaluate_signed(values)
        return self.evaluate(values)

    def signed_view(self) -> "FunctionDescriptor":
        """Return the same function presented with ±1 outputs.

        Raises:
            NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

        Returns:
            FunctionDescriptor: The signed view of the function.
        """
        if not self.boolean:
            raise NonBooleanFunctionError(self.name)
        return replace(self, view = CodomainView.SIGNED)

    def table(self, limit: int = EXACT_ARITY_MAX) -> np.ndarray:
        """Return the natural-valued outputs on all 2^n inputs, indexed by the input's unsigned value.

        Args:
            limit (int, optional): The largest arity to enumerate. Defaults to EXACT_ARITY_MAX.

        Raises:
            ArityTooLargeError: Raised if the arity exceeds the limit.

        Returns:
            np.ndarray: The int64 truth table of length 2^n.
        """
        if self.arity > limit:
            raise ArityTooLargeError(self.arity, limit, "Full enumeration")
        return self.evaluate(all_inputs(self.arity))


# *** all_inputs ************************************************************

def all_inputs(n: int) -> np.ndarray:
    """Return every n-bit input value in increasing order.

    Args:
        n (int): The bit width.

    Returns:
        np.ndarray: The uint64 array [0, 1, ..., 2^n - 1].
    """
    return np.arange(1 << n, dtype = np.uint64)


# *** popcount **************************************************************

def popcount(values: np.ndarray) -> np.ndarray:
    """Return the number of set bits of each value.

    Args:
        values (np.ndarray): Unsigned values.

    Returns:
        np.ndarray: The int64 bit counts.
    """
    return np.bitwise_count(np.asarray(values, dtype = np.uint64)).astype(np.int64)


# *** Built-in functions ****************************************************

def _binary_evaluation(n: int) -> FunctionDescriptor:
    return FunctionDescriptor("be", n, lambda values: values.astype(np.int64), boolean = n == 1)


def _parity(n: int) -> FunctionDescriptor:
    return FunctionDescriptor("xor", n, lambda values: popcount(values) & 1, boolean = True)


def _or(n: int) -> FunctionDescriptor:
    return FunctionDescriptor("or", n, lambda values: (values != 0).astype(np.int64), boolean = True)


def _and(n: int) -> FunctionDescriptor:
    full: np.uint64 = np.uint64((1 << n) - 1)
    return FunctionDescriptor("and", n, lambda values: (values == full).astype(np.int64), boolean = True)


def _majority(n: int) -> FunctionDescriptor:
    # Strict majority: more ones than zeros
    return FunctionDescriptor("majority", n, lambda values: (2 * popcount(values) > n).astype(np.int64), boolean = True)


def _dictator(n: int) -> FunctionDescriptor:
    return FunctionDescriptor("dictator", n, lambda values: (values & np.uint64(1)).astype(np.int64), boolean = True)


def _constant(n: int) -> FunctionDescriptor:
    return FunctionDescriptor("constant", n, lambda values: np.zeros(np.shape(values), dtype = np.int64), boolean = True)


def _threshold(n: int, t: int) -> FunctionDescriptor:
    if not 0 <= t <= n:
        raise WidthError(f"Threshold {t} is out of range, expected 0 <= t <= {n}")
    return FunctionDescriptor(f"threshold:{t}", n, lambda values: (popcount(values) >= t).astype(np.int64), boolean = True)


_BUILTINS: Dict[str, Callable[[int], FunctionDescriptor]] = {
    "be": _binary_evaluation,
    "xor": _parity,
    "or": _or,
    "and": _and,
    "majority": _majority,
    "dictator": _dictator,
    "constant": _constant,
}

BUILTIN_NAMES: Tuple[str, ...] = (*_BUILTINS.keys(), "threshold:t")


# *** builtin_function ******************************************************

def builtin_function(name: str, n: int) -> FunctionDescriptor:
    """Return the built-in function with the given name and arity.

    Args:
        name (str): One of be, xor, or, and, majority, dictator, constant or threshold:t.
        n (int): The arity.

    Raises:
        UnknownFunctionError: Raised if the name doesn't match a built-in function.

    Returns:
        FunctionDescriptor: The function.
    """
    if name.startswith("threshold:"):
        threshold: str = name.split(":", 1)[1]
        if not threshold.isdigit():
            raise UnknownFunctionError(name)
        return _threshold(n, int(threshold))
    if name not in _BUILTINS:
        raise UnknownFunctionError(name)
    return _BUILTINS[name](n)


# *** load_truth_table ******************************************************

def load_truth_table(path: pathlib.Path) -> FunctionDescriptor:
    """Load and validate a truth-table file of the form { "name": str, "n": int, "outputs": [2^n non-negative ints] }.

    Args:
        path (pathlib.Path): The path of the JSON file.

    Raises:
        TruthTableError: Raised if the file is unreadable or malformed.

    Returns:
        FunctionDescriptor: The function described by the table.
    """
    try:
        with open(path, "r", encoding = "utf-8") as file:
            document: Any = json.load(file)
    except (OSError, json.JSONDecodeError) as exception:
        raise TruthTableError(path, str(exception)) from exception

    if not isinstance(document, dict):
        raise TruthTableError(path, "expected a JSON object")
    name: Any = document.get("name")
    n: Any = document.get("n")
    outputs: Any = document.get("outputs")
    if not isinstance(name, str):
        raise TruthTableError(path, "'name' must be a string")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= EXACT_ARITY_MAX:
        raise TruthTableError(path, f"'n' must be an integer in [1, {EXACT_ARITY_MAX}]")
    if not isinstance(outputs, list) or len(outputs) != 1 << n:
        raise TruthTableError(path, f"'outputs' must be an array of length 2^{n} = {1 << n}")
    if any(not isinstance(output, int) or isinstance(output, bool) or output < 0 for output in outputs):
        raise TruthTableError(path, "'outputs' must contain non-negative integers")

    table: np.ndarray = np.array(outputs, dtype = np.int64)
    table.setflags(write = False)
    boolean: bool = bool(np.all((table == 0) | (table == 1)))
    _log.info("Loaded truth table %s (n = %d) from %s", name, n, path)
    return FunctionDescriptor(name, n, lambda values: table[values.astype(np.int64)], boolean = boolean)


# *** resolve_function ******************************************************

def resolve_function(name: Optional[str], n: Optional[int], table_path: Optional[pathlib.Path]) -> FunctionDescriptor:
    """Return the function named by a command: a truth-table file if given, otherwise a built-in function.

    Args:
        name (Optional[str]): The built-in function name.
        n (Optional[int]): The arity of the built-in function.
        table_path (Optional[pathlib.Path]): The path of a truth-table file.

    Raises:
        UnknownFunctionError: Raised if neither a table nor a complete built-in specification is given.

    Returns:
        FunctionDescriptor: The resolved function.
    """
    if table_path is not None:
        return load_truth_table(table_path)
    if name is None or n is None:
        raise UnknownFunctionError(str(name))
    return builtin_function(name, n)


# *** is_symmetric **********************************************************

def is_symmetric(f: FunctionDescriptor) -> bool:
    """Return whether f is invariant under every permutation of its input bits, i.e. depends only on the number of ones.

    Args:
        f (FunctionDescriptor): The function, with n <= 20.

    Returns:
        bool: Whether the function is symmetric.
    """
    table: np.ndarray = f.table()
    weights: np.ndarray = popcount(all_inputs(f.arity))
    for weight in range(f.arity + 1):
        if np.unique(table[weights == weight]).size > 1:
            return False
    return True


# *** output_range **********************************************************

def output_range(f: FunctionDescriptor) -> int:
    """Return max_x f(x) - min_x f(x), the largest influence any bit can have.

    Args:
        f (FunctionDescriptor): The function, with n <= 20.

    Returns:
        int: The output range.
    """
    table: np.ndarray = f.table()
    return int(table.max() - table.min())
