"""Bitwise comparison of two values read through the noisy reader.

Scanning the noisy copies from the most significant bit down and answering at the first differing bit is the same as
comparing the noisy copies as unsigned integers. Equal noisy copies answer ``less``, so a comparison answers ``less``
exactly when noisy(a) <= noisy(b).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import WidthError
from inexactlab.boolean.influence import SAMPLE_CHUNK, SampleCountError
from inexactlab.boolean.reader import Probabilities, flip_masks
from inexactlab.energy.vectors import FlipProbabilityVector
from inexactlab.error import ParameterError
from inexactlab.parallel import map_ordered
from inexactlab.rng import generator, substream
from inexactlab.sort.scheme import EnergyScheme

_log: logging.Logger = logging.getLogger(__name__)


# *** Ordering **************************************************************

class Ordering(Enum):
    """The answer of a comparison."""

    LESS = "less"
    GREATER = "greater"


# *** PairErrorEstimate *****************************************************

@dataclass(frozen = True)
class PairErrorEstimate:
    """A Monte Carlo estimate of the probability that a noisy comparison misorders a pair.

    Attributes:
        a (int): The first value.
        b (int): The second value.
        error (float): The fraction of incorrect comparisons.
        stderr (float): The binomial standard error of the fraction.
        trials (int): The number of comparisons.
    """

    a: int
    b: int
    error: float
    stderr: float
    trials: int

    @property
    def scaled_error(self) -> float:
        """Return error·|b - a|, the quantity bounded by 8 under the aware scheme."""
        return self.error * abs(self.b - self.a)

    def to_json(self) -> Dict[str, Any]:
        """Return the estimate as a JSON-serializable dictionary."""
        return {"a": self.a, "b": self.b, "error": self.error, "stderr": self.stderr, "scaled_error": self.scaled_error, "trials": self.trials}


# *** check_value ***********************************************************

def check_value(value: int, n: int) -> None:
    """Raise a WidthError if the value isn't an n-bit unsigned integer."""
    if not 0 <= value < 1 << n:
        raise WidthError(f"Value {value} does not fit in {n} bits")


# *** first_differing_bit ***************************************************

def first_differing_bit(a: int, b: int) -> int:
    """Return the 1-based index of the most significant bit where a and b differ, or 0 if they are equal."""
    return (a ^ b).bit_length()


# *** noisy_less ************************************************************

def noisy_less(values: np.ndarray, pivots: np.ndarray, probabilities: Probabilities, rng: np.random.Generator) -> np.ndarray:
    """Compare every value against its pivot, reading both operands of each comparison with fresh noise.

    Args:
        values (np.ndarray): The left operands.
        pivots (np.ndarray): The right operands, broadcast against the values.
        probabilities (Probabilities): The per-bit flip probabilities.
        rng (np.random.Generator): The generator to draw from; value masks are drawn before pivot masks.

    Returns:
        np.ndarray: A boolean array, True where the comparison answered ``less``.
    """
    values = np.asarray(values, dtype = np.uint64)
    pivots = np.broadcast_to(np.asarray(pivots, dtype = np.uint64), values.shape)
    noisy_values: np.ndarray = values ^ flip_masks(probabilities, values.size, rng).reshape(values.shape)
    noisy_pivots: np.ndarray = pivots ^ flip_masks(probabilities, values.size, rng).reshape(values.shape)
    return noisy_values <= noisy_pivots


# *** noisy_compare *********************************************************

def noisy_compare(a: int, b: int, scheme: EnergyScheme, seed: int) -> Ordering:
    """Compare a and b bitwise after reading both through the noisy reader of the scheme.

    Args:
        a (int): The first n-bit value.
        b (int): The second n-bit value.
        scheme (EnergyScheme): The energy scheme the values are stored under.
        seed (int): The seed of the read noise.

    Raises:
        WidthError: Raised if a value doesn't fit in the scheme's width.

    Returns:
        Ordering: ``less`` when noisy(a) <= noisy(b), otherwise ``greater``.
    """
    check_value(a, scheme.n)
    check_value(b, scheme.n)
    less: np.ndarray = noisy_less(np.array([a], dtype = np.uint64), np.array([b], dtype = np.uint64), scheme.probs, generator(seed))
    return Ordering.LESS if bool(less[0]) else Ordering.GREATER


# *** comparison_error_probability ******************************************

def comparison_error_probability(a: int, b: int, scheme: EnergyScheme) -> float:
    """Return the exact probability Pr[I(a, b, e)] that a noisy comparison of distinct a and b answers incorrectly.

    Bits are processed from the most significant down, tracking the probability that the noisy copies are still equal.

    Args:
        a (int): The first n-bit value.
        b (int): The second n-bit value, b != a.
        scheme (EnergyScheme): The energy scheme.

    Raises:
        ParameterError: Raised if a == b.
        WidthError: Raised if a value doesn't fit in the scheme's width.

    Returns:
        float: The error probability.
    """
    check_value(a, scheme.n)
    check_value(b, scheme.n)
    if a == b:
        raise ParameterError("b", b, "must differ from a")

    probs: Tuple[float, ...] = scheme.probs.entries
    tied: float = 1.0
    less: float = 0.0
    for i in range(scheme.n, 0, -1):
        p: float = probs[i - 1]
        q: float = 1.0 - p
        bit_a: int = (a >> (i - 1)) & 1
        bit_b: int = (b >> (i - 1)) & 1
        if bit_a == bit_b:
            # One flipped copy decides either way with equal odds
            less += tied * p * q
            tied *= p * p + q * q
        elif bit_a < bit_b:
            less += tied * q * q
            tied *= 2 * p * q
        else:
            less += tied * p * p
            tied *= 2 * p * q
    less += tied
    return less if a > b else 1.0 - less


# *** pair_error_estimate ***************************************************

def pair_error_estimate(a: int, b: int, scheme: EnergyScheme, trials: int, seed: int, threads: int = 1) -> PairErrorEstimate:
    """Estimate Pr[I(a, b, e)] by running independent noisy comparisons.

    Trials run in fixed chunks, chunk c on substream c of the seed, so the estimate doesn't depend on the thread count.

    Args:
        a (int): The first n-bit value.
        b (int): The second n-bit value, b != a.
        scheme (EnergyScheme): The energy scheme.
        trials (int): The number of comparisons, >= 1.
        seed (int): The seed.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        ParameterError: Raised if a == b.
        SampleCountError: Raised if trials < 1.

    Returns:
        PairErrorEstimate: The estimate.
    """
    check_value(a, scheme.n)
    check_value(b, scheme.n)
    if a == b:
        raise ParameterError("b", b, "must differ from a")
    if trials < 1:
        raise SampleCountError(trials)

    chunks: List[Tuple[int, int]] = [(index, min(SAMPLE_CHUNK, trials - start)) for index, start in enumerate(range(0, trials, SAMPLE_CHUNK))]
    probabilities: FlipProbabilityVector = scheme.probs
    correct_less: bool = a < b

    def count_errors(chunk: Tuple[int, int]) -> int:
        values: np.ndarray = np.full(chunk[1], a, dtype = np.uint64)
        less: np.ndarray = noisy_less(values, np.uint64(b), probabilities, substream(seed, chunk[0]))
        return int(np.count_nonzero(less != correct_less))

    errors: int = sum(map_ordered(count_errors, chunks, threads))
    error: float = errors / trials
    stderr: float = float(np.sqrt(error * (1.0 - error) / trials))
    _log.debug("Pair (%d, %d): %d incorrect comparisons out of %d", a, b, errors, trials)
    return PairErrorEstimate(a, b, error, stderr, trials)
