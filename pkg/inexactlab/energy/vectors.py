"""Energy vectors and the flip probabilities they induce through F(e) = 2^-e."""
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.error import InexactError

BUDGET_TOLERANCE: float = 1e-9


# *** NegativeEnergyError ***************************************************

class NegativeEnergyError(InexactError):
    """Exception which is raised when an energy entry or budget is negative or not finite."""

    def __init__(self, index: Optional[int], value: float) -> None:
        """Initialize a NegativeEnergyError exception, including the offending entry in the error message.

        Args:
            index (Optional[int]): The 1-based index of the offending entry, or None for the budget.
            value (float): The offending value.
        """
        self.index: Optional[int] = index
        self.value: float = value
        where: str = "Budget" if index is None else f"Energy e_{index}"
        super().__init__(f"{where} = {value} must be a finite non-negative number")


# *** BudgetExceededError ***************************************************

class BudgetExceededError(InexactError):
    """Exception which is raised when the entries of an energy vector sum to more than its budget."""

    def __init__(self, total: float, budget: float) -> None:
        """Initialize a BudgetExceededError exception.

        Args:
            total (float): The sum of the entries.
            budget (float): The declared budget.
        """
        super().__init__(f"Energy entries sum to {total}, exceeding the budget {budget}")


# *** ProbabilityRangeError *************************************************

class ProbabilityRangeError(InexactError):
    """Exception which is raised when a flip probability falls outside of its allowed range."""

    def __init__(self, index: int, value: float) -> None:
        """Initialize a ProbabilityRangeError exception.

        Args:
            index (int): The 1-based index of the offending entry.
            value (float): The offending value.
        """
        super().__init__(f"Flip probability p_{index} = {value} is outside of [0, 1]")


# *** LengthMismatchError ***************************************************

class LengthMismatchError(InexactError):
    """Exception which is raised when two per-bit vectors which must be paired have different lengths."""

    def __init__(self, expected: int, actual: int, what: str) -> None:
        """Initialize a LengthMismatchError exception.

        Args:
            expected (int): The expected length.
            actual (int): The actual length.
            what (str): Which vector had the wrong length.
        """
        self.expected: int = expected
        self.actual: int = actual
        super().__init__(f"{what} has length {actual}, expected {expected}")


# *** EnergyVector **********************************************************

@dataclass(frozen = True)
class EnergyVector:
    """A per-bit apportionment of an energy budget.

    Attributes:
        entries (Tuple[float, ...]): The energy e_i of each bit, bit 1 first.
        budget (float): The declared total budget.
    """

    entries: Tuple[float, ...]
    budget: float

    def __post_init__(self) -> None:
        """Validate non-negativity and the budget constraint."""
        if not math.isfinite(self.budget) or self.budget < 0:
            raise NegativeEnergyError(None, self.budget)
        for index, energy in enumerate(self.entries, start = 1):
            if not math.isfinite(energy) or energy < 0:
                raise NegativeEnergyError(index, energy)
        if self.total > self.budget + BUDGET_TOLERANCE:
            raise BudgetExceededError(self.total, self.budget)

    @classmethod
    def of(cls, entries: Sequence[float], budget: Optional[float] = None) -> "EnergyVector":
        """Build an energy vector, using the sum of the entries as the budget when none is declared.

        Args:
            entries (Sequence[float]): The per-bit energies.
            budget (Optional[float], optional): The declared budget. Defaults to the sum of the entries.

        Returns:
            EnergyVector: The energy vector.
        """
        values: Tuple[float, ...] = tuple(float(energy) for energy in entries)
        return cls(values, float(math.fsum(values)) if budget is None else float(budget))

    @property
    def n(self) -> int:
        """Return the number of bits."""
        return len(self.entries)

    @property
    def total(self) -> float:
        """Return the energy actually spent."""
        return math.fsum(self.entries)

    def as_array(self) -> np.ndarray:
        """Return the entries as a float64 array."""
        return np.array(self.entries, dtype = np.float64)

    def __iter__(self) -> Iterator[float]:
        """Iterate over the entries."""
        return iter(self.entries)

    def __len__(self) -> int:
        """Return the number of bits."""
        return len(self.entries)


# *** FlipProbabilityVector *************************************************

@dataclass(frozen = True)
class FlipProbabilityVector:
    """The per-bit probabilities with which the reader flips each bit.

    Probabilities derived from energy lie in (0, 1]; the reader itself also accepts 0 (a noiseless bit).

    Attributes:
        entries (Tuple[float, ...]): The flip probability p_i of each bit, bit 1 first.
    """

    entries: Tuple[float, ...]

    def __post_init__(self) -> None:
        """Validate the probability range."""
        for index, probability in enumerate(self.entries, start = 1):
            if not 0.0 <= probability <= 1.0:
                raise ProbabilityRangeError(index, probability)

    @classmethod
    def of(cls, entries: Sequence[float]) -> "FlipProbabilityVector":
        """Build a flip probability vector from any sequence of floats.

        Args:
            entries (Sequence[float]): The per-bit flip probabilities.

        Returns:
            FlipProbabilityVector: The vector.
        """
        return cls(tuple(float(probability) for probability in entries))

    @property
    def n(self) -> int:
        """Return the number of bits."""
        return len(self.entries)

    def correct_probabilities(self) -> Tuple[float, ...]:
        """Return q_i = 1 - p_i, the probability each bit is read correctly."""
        return tuple(1.0 - probability for probability in self.entries)

    def as_array(self) -> np.ndarray:
        """Return the entries as a float64 array."""
        return np.array(self.entries, dtype = np.float64)

    def __iter__(self) -> Iterator[float]:
        """Iterate over the entries."""
        return iter(self.entries)

    def __len__(self) -> int:
        """Return the number of bits."""
        return len(self.entries)


# *** energy_to_probs *******************************************************

def energy_to_probs(e: EnergyVector) -> FlipProbabilityVector:
    """Apply the transformation F(e) = 2^-e to every entry of an energy vector.

    Args:
        e (EnergyVector): The energy vector.

    Returns:
        FlipProbabilityVector: The induced flip probabilities p_i = 2^-e_i.
    """
    return FlipProbabilityVector(tuple(float(probability) for probability in np.exp2(-e.as_array())))
