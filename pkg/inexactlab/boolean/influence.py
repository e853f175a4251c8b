"""Per-bit influence of Boolean functions: Inf(i) = |f(x) - f(x^{⊕i})| and its expectation over uniform x."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import BitVector, WidthError, check_index
from inexactlab.boolean.function import EXACT_ARITY_MAX, ArityTooLargeError, FunctionDescriptor, all_inputs
from inexactlab.error import InexactError
from inexactlab.parallel import map_ordered
from inexactlab.rng import draw_seed, substream

_log: logging.Logger = logging.getLogger(__name__)

SAMPLE_CHUNK: int = 1 << 16
BETA_TOLERANCE: float = 1e-9


# *** SampleCountError ******************************************************

class SampleCountError(InexactError):
    """Exception which is raised when a Monte Carlo estimate is requested with too few samples."""

    def __init__(self, samples: int) -> None:
        """Initialize a SampleCountError exception.

        Args:
            samples (int): The requested sample count.
        """
        super().__init__(f"Monte Carlo estimation requires at least 1 sample, got {samples}")


# *** ZeroInfluenceError ****************************************************

class ZeroInfluenceError(InexactError):
    """Exception which is raised when an influence ratio would divide by a zero influence.

    Attributes:
        indices (Tuple[int, ...]): The 1-based indices of the bits with zero expected influence.
    """

    def __init__(self, indices: Tuple[int, ...]) -> None:
        """Initialize a ZeroInfluenceError exception, including the zero-influence bits in the error message.

        Args:
            indices (Tuple[int, ...]): The 1-based indices of the bits with zero expected influence.
        """
        self.indices: Tuple[int, ...] = indices
        super().__init__(f"Bits {', '.join(str(index) for index in indices)} have zero expected influence, so influence ratios are undefined")


# *** InfluenceMethod *******************************************************

class InfluenceMethod(Enum):
    """How an influence profile was computed."""

    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"


# *** InfluenceProfile ******************************************************

@dataclass(frozen = True)
class InfluenceProfile:
    """The expected influence E[Inf(i)] of every bit of a function, in natural bit order.

    Attributes:
        n (int): The arity.
        means (Tuple[float, ...]): E[Inf(i)] for each bit, bit 1 first.
        method (InfluenceMethod): Exact enumeration or Monte Carlo sampling.
        samples (int): The number of sampled inputs, 0 for exact profiles.
        seed (Optional[int]): The seed used for sampling, None for exact profiles.
        stderrs (Tuple[float, ...]): The standard error of each mean, all zero for exact profiles.
    """

    n: int
    means: Tuple[float, ...]
    method: InfluenceMethod = InfluenceMethod.EXACT
    samples: int = 0
    seed: Optional[int] = None
    stderrs: Tuple[float, ...] = field(default = ())

    def __post_init__(self) -> None:
        """Validate the lengths and signs of the entries."""
        if len(self.means) != self.n:
            raise WidthError(f"Influence profile has {len(self.means)} means for arity {self.n}")
        if any(not math.isfinite(mean) or mean < 0 for mean in self.means):
            raise WidthError("Influence means must be finite and non-negative")
        if not self.stderrs:
            object.__setattr__(self, "stderrs", (0.0,) * self.n)

    @classmethod
    def of(cls, means: Any) -> "InfluenceProfile":
        """Build an exact-method profile from a sequence of means.

        Args:
            means (Any): The per-bit expected influences.

        Returns:
            InfluenceProfile: The profile.
        """
        values: Tuple[float, ...] = tuple(float(mean) for mean in means)
        return cls(len(values), values)

    def as_array(self) -> np.ndarray:
        """Return the means as a float64 array."""
        return np.array(self.means, dtype = np.float64)

    def order_by_influence(self) -> Tuple[int, ...]:
        """Return the 1-based bit indices ordered by increasing expected influence, ties kept in bit order.

        Returns:
            Tuple[int, ...]: The bit order assumed by the analysis, without permuting the profile.
        """
        return tuple(int(index) + 1 for index in np.argsort(self.as_array(), kind = "stable"))

    def zero_indices(self) -> Tuple[int, ...]:
        """Return the 1-based indices of bits with zero expected influence."""
        return tuple(index for index, mean in enumerate(self.means, start = 1) if mean == 0.0)

    def to_json(self) -> Dict[str, Any]:
        """Return the profile as a JSON-serializable dictionary."""
        return {
            "n": self.n,
            "means": list(self.means),
            "stderrs": list(self.stderrs),
            "method": self.method.value,
            "samples": self.samples,
            "seed": self.seed,
            "order_by_influence": list(self.order_by_influence()),
        }


# *** BetaProfile ***********************************************************

@dataclass(frozen = True)
class BetaProfile:
    """The relative influences β_i = E[Inf(i+1)] / E[Inf(i)].

    Attributes:
        betas (Tuple[float, ...]): β_1 .. β_{n-1}.
        common_beta (Optional[float]): The common value when every β_i agrees within 1e-9, otherwise None.
    """

    betas: Tuple[float, ...]
    common_beta: Optional[float]

    def to_json(self) -> Dict[str, Any]:
        """Return the ratios as a JSON-serializable dictionary."""
        return {"betas": list(self.betas), "common_beta": self.common_beta}


# *** influence_at **********************************************************

def influence_at(f: FunctionDescriptor, x: BitVector, i: int) -> int:
    """Return the influence of bit i at input x, |f(x) - f(x^{⊕i})|.

    Args:
        f (FunctionDescriptor): The function.
        x (BitVector): The input.
        i (int): The 1-based bit index.

    Raises:
        BitIndexError: Raised if i exceeds the arity of f.

    Returns:
        int: The influence.
    """
    check_index(i, f.arity)
    if x.n != f.arity:
        raise WidthError(f"Function {f.name} has arity {f.arity} but the input has {x.n} bits")
    outputs: np.ndarray = f.evaluate(np.array([x.value, x.flip(i).value], dtype = np.uint64))
    return abs(int(outputs[0]) - int(outputs[1]))


# *** expected_influence ****************************************************

def expected_influence(f: FunctionDescriptor, method: InfluenceMethod = InfluenceMethod.EXACT, samples: int = 0,
                       seed: Optional[int] = None, threads: int = 1) -> InfluenceProfile:
    """Compute E[Inf(i)] for every bit, exactly over all 2^n inputs or by sampling uniform inputs.

    Monte Carlo samples are split into fixed chunks, chunk c drawing from substream c of the seed, so the estimate is
    identical for any thread count.

    Args:
        f (FunctionDescriptor): The function.
        method (InfluenceMethod, optional): Exact enumeration or Monte Carlo sampling. Defaults to exact.
        samples (int, optional): The number of sampled inputs for Monte Carlo. Defaults to 0.
        seed (Optional[int], optional): The Monte Carlo seed. A fresh seed is drawn and logged when omitted.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        ArityTooLargeError: Raised for exact mode with n > 20.
        SampleCountError: Raised for Monte Carlo mode with fewer than 1 sample.

    Returns:
        InfluenceProfile: The expected influence profile.
    """
    if method == InfluenceMethod.EXACT:
        return _exact_influence(f)

    if samples < 1:
        raise SampleCountError(samples)
    if seed is None:
        seed = draw_seed()
        _log.info("No seed given for influence sampling of %s, using %d", f.name, seed)

    chunk_seed: int = seed
    chunks: List[Tuple[int, int]] = [(index, min(SAMPLE_CHUNK, samples - start)) for index, start in enumerate(range(0, samples, SAMPLE_CHUNK))]
    partials: List[Tuple[np.ndarray, np.ndarray]] = map_ordered(lambda chunk: _sample_chunk(f, chunk_seed, chunk[0], chunk[1]), chunks, threads)

    sums: np.ndarray = np.zeros(f.arity, dtype = np.float64)
    squares: np.ndarray = np.zeros(f.arity, dtype = np.float64)
    for chunk_sums, chunk_squares in partials:
        sums += chunk_sums
        squares += chunk_squares

    means: np.ndarray = sums / samples
    if samples > 1:
        variances: np.ndarray = np.maximum(squares - samples * means ** 2, 0.0) / (samples - 1)
        stderrs: np.ndarray = np.sqrt(variances / samples)
    else:
        stderrs = np.zeros(f.arity, dtype = np.float64)
    _log.debug("Sampled influence of %s with %d samples", f.name, samples)
    return InfluenceProfile(f.arity, tuple(float(mean) for mean in means), InfluenceMethod.MONTE_CARLO, samples, seed,
                            tuple(float(stderr) for stderr in stderrs))


# *** beta_profile **********************************************************

def beta_profile(profile: InfluenceProfile) -> BetaProfile:
    """Return the relative influences β_i = E[Inf(i+1)] / E[Inf(i)] and whether they share a common value.

    Args:
        profile (InfluenceProfile): The influence profile, in natural bit order.

    Raises:
        ZeroInfluenceError: Raised if any bit has zero expected influence.

    Returns:
        BetaProfile: The ratios.
    """
    zeros: Tuple[int, ...] = profile.zero_indices()
    if zeros:
        raise ZeroInfluenceError(zeros)

    betas: Tuple[float, ...] = tuple(profile.means[i + 1] / profile.means[i] for i in range(profile.n - 1))
    common: Optional[float] = None
    if betas and all(abs(beta - betas[0]) <= BETA_TOLERANCE for beta in betas):
        common = betas[0]
    return BetaProfile(betas, common)


# *** _exact_influence ******************************************************

def _exact_influence(f: FunctionDescriptor) -> InfluenceProfile:
    """Compute the exact influence profile by enumerating all 2^n inputs.

    Args:
        f (FunctionDescriptor): The function, with n <= 20.

    Returns:
        InfluenceProfile: The exact profile.
    """
    if f.arity > EXACT_ARITY_MAX:
        raise ArityTooLargeError(f.arity, EXACT_ARITY_MAX, "Exact influence")

    inputs: np.ndarray = all_inputs(f.arity)
    table: np.ndarray = f.evaluate(inputs)
    means: List[float] = []
    for i in range(1, f.arity + 1):
        flipped: np.ndarray = inputs ^ np.uint64(1 << (i - 1))
        total: int = int(np.abs(table - table[flipped.astype(np.int64)]).sum())
        means.append(total / (1 << f.arity))
    return InfluenceProfile(f.arity, tuple(means))


# *** _sample_chunk *********************************************************

def _sample_chunk(f: FunctionDescriptor, seed: int, chunk: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
    """Sample one chunk of uniform inputs and return the per-bit sums and sums of squares of the influence.

    Args:
        f (FunctionDescriptor): The function.
        seed (int): The Monte Carlo seed.
        chunk (int): The chunk index, which selects the substream.
        size (int): The number of inputs in the chunk.

    Returns:
        Tuple[np.ndarray, np.ndarray]: The sums and the sums of squares, one entry per bit.
    """
    inputs: np.ndarray = substream(seed, chunk).integers(0, 1 << f.arity, size = size, dtype = np.uint64, endpoint = False)
    outputs: np.ndarray = f.evaluate(inputs).astype(np.float64)
    sums: np.ndarray = np.empty(f.arity, dtype = np.float64)
    squares: np.ndarray = np.empty(f.arity, dtype = np.float64)
    for i in range(1, f.arity + 1):
        influence: np.ndarray = np.abs(outputs - f.evaluate(inputs ^ np.uint64(1 << (i - 1))).astype(np.float64))
        sums[i - 1] = influence.sum()
        squares[i - 1] = np.square(influence).sum()
    return sums, squares
