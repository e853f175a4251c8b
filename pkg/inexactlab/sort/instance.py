"""Arrays of n-bit elements to be sorted, their random generation and their JSON file form."""
import json
import logging
import pathlib
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Set, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import WidthError, check_width
from inexactlab.error import InexactError, ParameterError

_log: logging.Logger = logging.getLogger(__name__)


# *** DuplicateElementsError ************************************************

class DuplicateElementsError(InexactError):
    """Exception which is raised when an operation that needs distinct elements receives repeated ones."""

    def __init__(self, value: int) -> None:
        """Initialize a DuplicateElementsError exception.

        Args:
            value (int): A repeated element.
        """
        self.value: int = value
        super().__init__(f"Element {value} occurs more than once, elements must be distinct")


# *** InstanceFileError *****************************************************

class InstanceFileError(InexactError):
    """Exception which is raised when an instance file can't be read."""

    def __init__(self, path: pathlib.Path, reason: str) -> None:
        """Initialize an InstanceFileError exception.

        Args:
            path (pathlib.Path): The instance file.
            reason (str): What is wrong with it.
        """
        self.path: pathlib.Path = path
        super().__init__(f"Instance file {path} is invalid: {reason}")


# *** SortInstance **********************************************************

@dataclass(frozen = True)
class SortInstance:
    """An array of N elements, each in [0, 2^n - 1].

    Attributes:
        n (int): The element bit-width.
        elements (Tuple[int, ...]): The array, in its stored order.
        distinct (bool): Whether no element repeats, computed from the elements.
    """

    n: int
    elements: Tuple[int, ...]
    distinct: bool = field(init = False)

    def __post_init__(self) -> None:
        """Validate the element range and record distinctness."""
        check_width(self.n)
        for element in self.elements:
            if not 0 <= element < 1 << self.n:
                raise WidthError(f"Element {element} does not fit in {self.n} bits")
        object.__setattr__(self, "distinct", len(set(self.elements)) == len(self.elements))

    @property
    def N(self) -> int:  # pylint: disable=invalid-name
        """Return the array length."""
        return len(self.elements)

    def as_array(self) -> np.ndarray:
        """Return the elements as a uint64 array."""
        return np.array(self.elements, dtype = np.uint64)

    def require_distinct(self) -> None:
        """Raise a DuplicateElementsError naming a repeated element, if any."""
        if self.distinct:
            return
        seen: Set[int] = set()
        for element in self.elements:
            if element in seen:
                raise DuplicateElementsError(element)
            seen.add(element)

    def to_json(self) -> Dict[str, Any]:
        """Return the instance in its file form."""
        return {"n": self.n, "N": self.N, "elements": list(self.elements)}


# *** generate_instance *****************************************************

def generate_instance(n: int, N: int, rng: np.random.Generator) -> SortInstance:  # pylint: disable=invalid-name
    """Draw N distinct elements uniformly from [0, 2^n - 1], redrawing any element that repeats an earlier one.

    Args:
        n (int): The element bit-width.
        N (int): The array length, at most 2^n.
        rng (np.random.Generator): The generator to draw from.

    Raises:
        ParameterError: Raised if N is not in [1, 2^n].

    Returns:
        SortInstance: The instance.
    """
    check_width(n)
    if not 1 <= N <= 1 << n:
        raise ParameterError("N", N, f"must lie in [1, 2^{n}]")
    seen: Set[int] = set()
    elements: List[int] = []
    while len(elements) < N:
        candidate: int = int(rng.integers(0, 1 << n, dtype = np.uint64, endpoint = False))
        if candidate in seen:
            continue
        seen.add(candidate)
        elements.append(candidate)
    return SortInstance(n, tuple(elements))


# *** load_instance *********************************************************

def load_instance(path: pathlib.Path) -> SortInstance:
    """Read an instance from a JSON file of the form {"n": ..., "N": ..., "elements": [...]}.

    Args:
        path (pathlib.Path): The file.

    Raises:
        InstanceFileError: Raised if the file is unreadable or inconsistent.

    Returns:
        SortInstance: The instance.
    """
    try:
        with open(path, "r", encoding = "utf-8") as instance_file:
            document: Any = json.load(instance_file)
    except (OSError, json.JSONDecodeError) as error:
        raise InstanceFileError(path, str(error)) from error

    if not isinstance(document, dict) or not isinstance(document.get("n"), int) or not isinstance(document.get("elements"), list):
        raise InstanceFileError(path, "expected an object with integer 'n' and list 'elements'")
    elements: Sequence[Any] = document["elements"]
    if not all(isinstance(element, int) for element in elements):
        raise InstanceFileError(path, "elements must be integers")
    if "N" in document and document["N"] != len(elements):
        raise InstanceFileError(path, f"'N' is {document['N']} but {len(elements)} elements are listed")
    try:
        instance: SortInstance = SortInstance(document["n"], tuple(elements))
    except WidthError as error:
        raise InstanceFileError(path, str(error)) from error
    _log.info("Loaded a %d-element instance of %d-bit values from %s", instance.N, instance.n, path)
    return instance


# *** save_instance *********************************************************

def save_instance(instance: SortInstance, path: pathlib.Path) -> None:
    """Write an instance to a JSON file."""
    with open(path, "w", encoding = "utf-8") as instance_file:
        json.dump(instance.to_json(), instance_file, indent = 2, sort_keys = True)
        instance_file.write("\n")
