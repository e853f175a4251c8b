"""The Low-Degree learning algorithm: estimate every Fourier coefficient of degree at most k from random examples
and predict with the sign of the truncated polynomial."""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import BitVector, WidthError
from inexactlab.boolean.function import FunctionDescriptor, NonBooleanFunctionError, popcount
from inexactlab.boolean.influence import SAMPLE_CHUNK, InfluenceProfile, SampleCountError, beta_profile
from inexactlab.energy.allocation import InvalidBetaError
from inexactlab.error import InexactError, ParameterError
from inexactlab.parallel import map_ordered

_log: logging.Logger = logging.getLogger(__name__)

CHARACTER_CELLS: int = 1 << 22


# *** EmptyExampleSetError **************************************************

class EmptyExampleSetError(InexactError):
    """Exception which is raised when a hypothesis is requested from zero examples."""

    def __init__(self) -> None:
        """Initialize an EmptyExampleSetError exception."""
        super().__init__("At least one labelled example is required to estimate Fourier coefficients")


# *** LabelError ************************************************************

class LabelError(InexactError):
    """Exception which is raised when an example label is not -1 or +1.

    Attributes:
        position (int): The 0-based position of the offending example.
        label (int): The offending label.
    """

    def __init__(self, position: int, label: int) -> None:
        """Initialize a LabelError exception.

        Args:
            position (int): The 0-based position of the offending example.
            label (int): The offending label.
        """
        self.position: int = position
        self.label: int = label
        super().__init__(f"Example {position} has label {label}, labels must be -1 or +1")


# *** LearnedHypothesis *****************************************************

@dataclass(frozen = True)
class LearnedHypothesis:
    """A degree-k polynomial over {-1,1}^n whose sign is the prediction.

    Attributes:
        n (int): The arity.
        degree_cap (int): The largest subset size estimated.
        masks (Tuple[int, ...]): The estimated subsets, by increasing cardinality.
        coefficients (Tuple[float, ...]): The estimated coefficient of each subset.
        examples (int): The number of examples the estimates were drawn from.
    """

    n: int
    degree_cap: int
    masks: Tuple[int, ...]
    coefficients: Tuple[float, ...]
    examples: int

    def coefficient(self, mask: int) -> float:
        """Return the estimated coefficient of a subset, 0 for subsets above the degree cap."""
        try:
            return self.coefficients[self.masks.index(mask)]
        except ValueError:
            return 0.0

    def polynomial(self, values: np.ndarray) -> np.ndarray:
        """Evaluate the truncated polynomial on an array of unsigned input values."""
        values = np.asarray(values, dtype = np.uint64)
        weights: np.ndarray = np.array(self.coefficients, dtype = np.float64)
        size: int = _chunk_size(len(self.masks))
        parts: List[np.ndarray] = [_characters(values[start:start + size], self.masks) @ weights for start in range(0, values.size, size)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype = np.float64)

    def predict(self, values: np.ndarray) -> np.ndarray:
        """Predict ±1 labels for an array of unsigned input values, with sign(0) = +1.

        Args:
            values (np.ndarray): The inputs.

        Returns:
            np.ndarray: The int64 predictions.
        """
        return np.where(self.polynomial(values) >= 0.0, 1, -1).astype(np.int64)

    def __call__(self, x: BitVector) -> int:
        """Predict the label of a single input."""
        if x.n != self.n:
            raise WidthError(f"Hypothesis has arity {self.n} but the input has {x.n} bits")
        return int(self.predict(np.array([x.value], dtype = np.uint64))[0])

    def to_json(self) -> Dict[str, Any]:
        """Return the hypothesis as a JSON-serializable dictionary."""
        return {
            "n": self.n,
            "k": self.degree_cap,
            "examples": self.examples,
            "coefficients": [{"mask": mask, "coef": coef} for mask, coef in zip(self.masks, self.coefficients)],
        }


# *** LearningParameters ****************************************************

@dataclass(frozen = True)
class LearningParameters:
    """The influence bounds that drive the choice of the degree cap.

    Attributes:
        inf_bound (float): The largest expected influence.
        beta1 (float): The smallest ratio between consecutive influences in increasing order.
        beta2 (float): The largest such ratio.
    """

    inf_bound: float
    beta1: float
    beta2: float

    def to_json(self) -> Dict[str, Any]:
        """Return the parameters as a JSON-serializable dictionary."""
        return {"inf_bound": self.inf_bound, "beta1": self.beta1, "beta2": self.beta2}


# *** compute_k *************************************************************

def compute_k(inf_bound: float, beta1: float, epsilon: float) -> int:
    """Return the smallest k >= 0 with inf_bound·β1^{-k} / (β1 - 1) < ε/2.

    Args:
        inf_bound (float): The influence bound, > 0.
        beta1 (float): The lower bound on the influence ratios, > 1.
        epsilon (float): The target error, > 0.

    Raises:
        InvalidBetaError: Raised if β1 <= 1.
        ParameterError: Raised if the influence bound or ε is not positive.

    Returns:
        int: The degree cap.
    """
    if not beta1 > 1.0:
        raise InvalidBetaError(beta1)
    if not inf_bound > 0.0:
        raise ParameterError("inf_bound", inf_bound, "must be positive")
    if not epsilon > 0.0:
        raise ParameterError("epsilon", epsilon, "must be positive")

    def holds(k: int) -> bool:
        return inf_bound * beta1 ** -k / (beta1 - 1.0) < epsilon / 2.0

    ratio: float = 2.0 * inf_bound / (epsilon * (beta1 - 1.0))
    k: int = max(0, math.floor(math.log(ratio, beta1)) + 1)
    # The logarithm is only a starting point; settle the boundary against the inequality itself
    while k > 0 and holds(k - 1):
        k -= 1
    while not holds(k):
        k += 1
    return k


# *** learning_parameters ***************************************************

def learning_parameters(profile: InfluenceProfile) -> LearningParameters:
    """Derive the influence bound and the ratio bounds β1, β2 from a profile taken in increasing-influence order.

    Args:
        profile (InfluenceProfile): The influence profile, n >= 2.

    Raises:
        ParameterError: Raised if the profile has a single bit.
        ZeroInfluenceError: Raised if any bit has zero expected influence.

    Returns:
        LearningParameters: The parameters.
    """
    if profile.n < 2:
        raise ParameterError("n", profile.n, "influence ratios need at least 2 bits")
    ordered: InfluenceProfile = InfluenceProfile.of(sorted(profile.means))
    betas: Tuple[float, ...] = beta_profile(ordered).betas
    return LearningParameters(ordered.means[-1], min(betas), max(betas))


# *** subset_masks **********************************************************

def subset_masks(n: int, k: int) -> Tuple[int, ...]:
    """Return the bitmask of every S ⊆ [n] with |S| <= k, by increasing cardinality then lexicographically.

    Args:
        n (int): The arity.
        k (int): The degree cap, 0 <= k <= n.

    Raises:
        ParameterError: Raised if k is out of range.

    Returns:
        Tuple[int, ...]: Σ_{j<=k} C(n, j) masks.
    """
    if not 0 <= k <= n:
        raise ParameterError("k", k, f"must lie in [0, {n}]")
    masks: List[int] = []
    for size in range(k + 1):
        for subset in itertools.combinations(range(n), size):
            masks.append(sum(1 << bit for bit in subset))
    return tuple(masks)


# *** estimate_coefficients *************************************************

def estimate_coefficients(values: np.ndarray, labels: np.ndarray, n: int, k: int, threads: int = 1) -> LearnedHypothesis:
    """Estimate \\hat f(S) ≈ (1/m)·Σ_j label_j·(x_j)^S for every |S| <= k from arrays of examples.

    Examples are processed in fixed chunks whose partial sums are added in order, so estimates don't depend on the thread count.

    Args:
        values (np.ndarray): The unsigned example inputs.
        labels (np.ndarray): The ±1 labels.
        n (int): The arity.
        k (int): The degree cap.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        EmptyExampleSetError: Raised if there are no examples.
        LabelError: Raised if a label is not ±1.

    Returns:
        LearnedHypothesis: The hypothesis.
    """
    values = np.asarray(values, dtype = np.uint64)
    labels = np.asarray(labels, dtype = np.int64)
    if values.size == 0:
        raise EmptyExampleSetError()
    if labels.shape != values.shape:
        raise ParameterError("labels", labels.shape, f"need one label per example, {values.size} examples given")
    invalid: np.ndarray = np.flatnonzero((labels != 1) & (labels != -1))
    if invalid.size:
        raise LabelError(int(invalid[0]), int(labels[invalid[0]]))

    masks: Tuple[int, ...] = subset_masks(n, k)
    size: int = _chunk_size(len(masks))
    starts: List[int] = list(range(0, values.size, size))
    partials: List[np.ndarray] = map_ordered(
        lambda start: labels[start:start + size].astype(np.float64) @ _characters(values[start:start + size], masks),
        starts, threads)
    totals: np.ndarray = np.zeros(len(masks), dtype = np.float64)
    for partial in partials:
        totals += partial
    _log.debug("Estimated %d coefficients of degree <= %d from %d examples", len(masks), k, values.size)
    return LearnedHypothesis(n, k, masks, tuple(float(total) / values.size for total in totals), int(values.size))


# *** low_degree_learn ******************************************************

def low_degree_learn(examples: Sequence[Tuple[BitVector, int]], n: int, k: int, m: Optional[int] = None, threads: int = 1) -> LearnedHypothesis:
    """Run the Low-Degree algorithm on labelled examples.

    Args:
        examples (Sequence[Tuple[BitVector, int]]): The examples and their ±1 labels.
        n (int): The arity.
        k (int): The degree cap, 0 <= k <= n.
        m (Optional[int], optional): How many of the examples to use. Defaults to all of them.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        EmptyExampleSetError: Raised if no examples are used.
        LabelError: Raised if a label is not ±1.
        SampleCountError: Raised if m exceeds the number of examples.
        WidthError: Raised if an example doesn't have n bits.

    Returns:
        LearnedHypothesis: The learned hypothesis.
    """
    count: int = len(examples) if m is None else m
    if count < 0 or count > len(examples):
        raise SampleCountError(count)
    used: Sequence[Tuple[BitVector, int]] = examples[:count]
    for x, _ in used:
        if x.n != n:
            raise WidthError(f"Example {x} has {x.n} bits, expected {n}")
    values: np.ndarray = np.array([x.value for x, _ in used], dtype = np.uint64)
    labels: np.ndarray = np.array([label for _, label in used], dtype = np.int64)
    return estimate_coefficients(values, labels, n, k, threads)


# *** draw_examples *********************************************************

def draw_examples(f: FunctionDescriptor, m: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Draw m uniform inputs and label them with the signed view of f.

    Args:
        f (FunctionDescriptor): A {0,1}-valued function.
        m (int): The number of examples.
        rng (np.random.Generator): The generator to draw from.

    Raises:
        NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

    Returns:
        Tuple[np.ndarray, np.ndarray]: The uint64 inputs and the int64 ±1 labels.
    """
    if not f.boolean:
        raise NonBooleanFunctionError(f.name)
    values: np.ndarray = rng.integers(0, 1 << f.arity, size = m, dtype = np.uint64, endpoint = False)
    return values, f.evaluate_signed(values)


# *** hypothesis_error ******************************************************

def hypothesis_error(h: LearnedHypothesis, f: FunctionDescriptor, samples: int, rng: np.random.Generator) -> float:
    """Return the fraction of fresh uniform inputs on which the hypothesis disagrees with f.

    Args:
        h (LearnedHypothesis): The hypothesis.
        f (FunctionDescriptor): The target function.
        samples (int): The number of held-out inputs.
        rng (np.random.Generator): The generator to draw from.

    Raises:
        SampleCountError: Raised if samples < 1.

    Returns:
        float: The empirical error.
    """
    if samples < 1:
        raise SampleCountError(samples)
    values, labels = draw_examples(f, samples, rng)
    return float(np.mean(h.predict(values) != labels))


# *** _characters ***********************************************************

def _characters(values: np.ndarray, masks: Sequence[int]) -> np.ndarray:
    """Return the matrix of x^S = (-1)^{popcount(x & S)}, one row per input and one column per subset."""
    subsets: np.ndarray = np.array(masks, dtype = np.uint64)
    parity: np.ndarray = popcount(values[:, None] & subsets[None, :]) & 1
    return (1 - 2 * parity).astype(np.float64)


def _chunk_size(mask_count: int) -> int:
    """Return how many inputs to expand at once so a character matrix stays near 2^22 entries."""
    return max(1, min(SAMPLE_CHUNK, CHARACTER_CELLS // mask_count))
