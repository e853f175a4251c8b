"""Randomized quicksort whose every pivot comparison goes through the noisy comparator."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import WidthError
from inexactlab.boolean.reader import read_values
from inexactlab.energy.vectors import FlipProbabilityVector
from inexactlab.rng import generator
from inexactlab.sort.compare import noisy_less
from inexactlab.sort.instance import SortInstance
from inexactlab.sort.kendall import weighted_kendall_tau
from inexactlab.sort.scheme import EnergyScheme

_log: logging.Logger = logging.getLogger(__name__)


# *** NoiseMode *************************************************************

class NoiseMode(Enum):
    """When the elements are read through the noisy reader."""

    FRESH = "fresh"
    PER_ELEMENT = "per-element"


# *** SortTrialReport *******************************************************

@dataclass(frozen = True)
class SortTrialReport:
    """The outcome of one noisy quicksort run.

    Attributes:
        seed (int): The seed of the run.
        scheme (str): The label of the energy scheme.
        output (Tuple[int, ...]): The output order.
        wkt (int): The weighted Kendall τ of the output.
        comparisons (int): The number of noisy comparisons made.
        depth (int): The recursion depth reached.
        noise_mode (NoiseMode): When elements were read.
    """

    seed: int
    scheme: str
    output: Tuple[int, ...]
    wkt: int
    comparisons: int
    depth: int
    noise_mode: NoiseMode = NoiseMode.FRESH

    def to_json(self) -> Dict[str, Any]:
        """Return the report as a JSON-serializable dictionary."""
        return {
            "seed": self.seed,
            "scheme": self.scheme,
            "output": list(self.output),
            "wkt": self.wkt,
            "comparisons": self.comparisons,
            "depth": self.depth,
            "noise": self.noise_mode.value,
        }


# *** inexact_quicksort *****************************************************

def inexact_quicksort(instance: SortInstance, scheme: EnergyScheme, seed: int, noise_mode: NoiseMode = NoiseMode.FRESH) -> SortTrialReport:
    """Sort an instance with uniformly random pivots and noisy comparisons against the pivot.

    An element whose comparison with the pivot answers ``less`` goes to the left part, every other element to the right.
    In fresh mode each comparison re-reads both operands with independent noise; in per-element mode every element is
    read once before sorting and the noisy copies are compared exactly.

    Args:
        instance (SortInstance): The instance, with distinct elements.
        scheme (EnergyScheme): The energy scheme the elements are stored under.
        seed (int): The seed; identical seeds give identical reports.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.

    Raises:
        DuplicateElementsError: Raised if the instance repeats an element.
        WidthError: Raised if the scheme and instance widths differ.

    Returns:
        SortTrialReport: The output and its weighted Kendall τ.
    """
    instance.require_distinct()
    if scheme.n != instance.n:
        raise WidthError(f"Scheme {scheme.label} has {scheme.n} bits but the instance elements have {instance.n}")

    rng: np.random.Generator = generator(seed)
    probs: FlipProbabilityVector = scheme.probs
    values: np.ndarray = instance.as_array()
    noisy: np.ndarray = read_values(values, probs, rng) if noise_mode == NoiseMode.PER_ELEMENT else values
    order: np.ndarray = np.arange(instance.N, dtype = np.int64)
    comparisons: int = 0
    depth: int = 0

    # Segments [low, high) of `order` still to partition, with their recursion depth
    pending: List[Tuple[int, int, int]] = [(0, instance.N, 1)]
    while pending:
        low, high, level = pending.pop()
        if high - low < 2:
            continue
        depth = max(depth, level)
        pivot_at: int = low + int(rng.integers(0, high - low))
        pivot: np.int64 = order[pivot_at]
        others: np.ndarray = np.concatenate((order[low:pivot_at], order[pivot_at + 1:high]))
        if noise_mode == NoiseMode.FRESH:
            less: np.ndarray = noisy_less(values[others], values[pivot], probs, rng)
        else:
            less = noisy[others] <= noisy[pivot]
        comparisons += others.size
        left: np.ndarray = others[less]
        right: np.ndarray = others[~less]
        order[low:high] = np.concatenate((left, [pivot], right))
        split: int = low + left.size
        pending.append((split + 1, high, level + 1))
        pending.append((low, split, level + 1))

    output: Tuple[int, ...] = tuple(int(values[index]) for index in order)
    wkt: int = weighted_kendall_tau(output, instance)
    _log.debug("Quicksort of %d elements under %s: wkt %d after %d comparisons", instance.N, scheme.label, wkt, comparisons)
    return SortTrialReport(seed, scheme.label, output, wkt, comparisons, depth, noise_mode)
