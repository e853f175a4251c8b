"""Fourier expansion of ±1-valued Boolean functions and the variance and concentration checks built on it.

Inputs use the character convention x^S = Π_{i∈S} (-1)^{x_i}, so a subset S is the bitmask with bit i-1 set
for every i ∈ S and x^S = (-1)^{popcount(x & S)}. Outputs are signed with 0 -> +1 and 1 -> -1.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List

# Third party imports
import numpy as np
from scipy.linalg import hadamard

# First party imports
from inexactlab.boolean.bitvector import check_index
from inexactlab.boolean.function import ArityTooLargeError, FunctionDescriptor, all_inputs, popcount
from inexactlab.error import ParameterError

_log: logging.Logger = logging.getLogger(__name__)

FOURIER_ARITY_MAX: int = 16
NAIVE_ARITY_MAX: int = 12


# *** FourierSpectrum *******************************************************

@dataclass(frozen = True)
class FourierSpectrum:
    """The Fourier coefficients \\hat f(S) of a function over {-1,1}^n.

    Attributes:
        n (int): The arity.
        coefficients (np.ndarray): The float64 coefficients indexed by subset bitmask, 2^n entries.
    """

    n: int
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the coefficient array."""
        if self.coefficients.shape != (1 << self.n,):
            raise ParameterError("coefficients", self.coefficients.shape, f"a spectrum of arity {self.n} needs {1 << self.n} entries")
        self.coefficients.setflags(write = False)

    def coefficient(self, mask: int) -> float:
        """Return \\hat f(S) for the subset with the given bitmask."""
        return float(self.coefficients[mask])

    def inverse(self) -> np.ndarray:
        """Evaluate Σ_S \\hat f(S)·x^S on every input.

        Returns:
            np.ndarray: The float64 function values, indexed by the input's unsigned value.
        """
        return _walsh_hadamard(self.coefficients)

    def parseval_mass(self) -> float:
        """Return Σ_S \\hat f(S)^2, which is 1 for every ±1-valued function."""
        return float(np.sum(self.coefficients ** 2))

    def degree_weights(self) -> np.ndarray:
        """Return the Fourier mass Σ_{|S|=d} \\hat f(S)^2 at each degree d = 0..n."""
        degrees: np.ndarray = popcount(all_inputs(self.n))
        return np.bincount(degrees, weights = self.coefficients ** 2, minlength = self.n + 1)

    def to_json(self) -> List[Dict[str, Any]]:
        """Return the spectrum as a list of mask/coefficient pairs sorted by mask."""
        return [{"mask": mask, "coef": float(coef)} for mask, coef in enumerate(self.coefficients)]


# *** ConcentrationResult ***************************************************

@dataclass(frozen = True)
class ConcentrationResult:
    """Whether a spectrum is ε-concentrated up to degree k.

    Attributes:
        concentrated (bool): Whether the residual mass is strictly below ε.
        residual (float): Σ_{|S|>k} \\hat f(S)^2.
        epsilon (float): The tolerance ε.
        k (int): The degree cap.
    """

    concentrated: bool
    residual: float
    epsilon: float
    k: int

    def to_json(self) -> Dict[str, Any]:
        """Return the result as a JSON-serializable dictionary."""
        return {"concentrated": self.concentrated, "residual": self.residual, "epsilon": self.epsilon, "k": self.k}


# *** fourier_transform *****************************************************

def fourier_transform(f: FunctionDescriptor) -> FourierSpectrum:
    """Compute \\hat f(S) = E_x[f(x)·x^S] for every S with the fast Walsh-Hadamard transform.

    Args:
        f (FunctionDescriptor): A {0,1}-valued function, read through its signed view.

    Raises:
        ArityTooLargeError: Raised if n > 16.
        NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

    Returns:
        FourierSpectrum: The spectrum.
    """
    values: np.ndarray = _signed_table(f, FOURIER_ARITY_MAX, "Fourier transform")
    _log.debug("Computing the spectrum of %s with n = %d", f.name, f.arity)
    return FourierSpectrum(f.arity, _walsh_hadamard(values) / (1 << f.arity))


# *** naive_fourier_transform ***********************************************

def naive_fourier_transform(f: FunctionDescriptor) -> FourierSpectrum:
    """Compute the spectrum from its definition by multiplying with the full Sylvester-Hadamard matrix.

    Used to cross-check the fast transform at small arity.

    Args:
        f (FunctionDescriptor): A {0,1}-valued function, read through its signed view.

    Raises:
        ArityTooLargeError: Raised if n > 12.
        NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

    Returns:
        FourierSpectrum: The spectrum.
    """
    values: np.ndarray = _signed_table(f, NAIVE_ARITY_MAX, "Naive Fourier transform")
    characters: np.ndarray = hadamard(1 << f.arity, dtype = np.float64)
    return FourierSpectrum(f.arity, characters @ values / (1 << f.arity))


# *** variance_of_bit *******************************************************

def variance_of_bit(spectrum: FourierSpectrum, i: int) -> float:
    """Return Var(i) = Σ_{S∋i} \\hat f(S)^2.

    For a ±1-valued function this equals (1/4)·E[Inf(i)^2], the probability that flipping bit i changes f.

    Args:
        spectrum (FourierSpectrum): The spectrum.
        i (int): The 1-based bit index.

    Raises:
        BitIndexError: Raised if i is out of range.

    Returns:
        float: The variance.
    """
    check_index(i, spectrum.n)
    containing: np.ndarray = (all_inputs(spectrum.n) >> np.uint64(i - 1)) & np.uint64(1) == 1
    return float(np.sum(spectrum.coefficients[containing] ** 2))


# *** bit_variances *********************************************************

def bit_variances(spectrum: FourierSpectrum) -> np.ndarray:
    """Return Var(i) for every bit, bit 1 first."""
    return np.array([variance_of_bit(spectrum, i) for i in range(1, spectrum.n + 1)], dtype = np.float64)


# *** squared_influence_quarter *********************************************

def squared_influence_quarter(f: FunctionDescriptor) -> np.ndarray:
    """Return (1/4)·E[Inf(i)^2] for every bit of the signed view, by enumerating all inputs.

    This is computed directly from the truth table and serves as the reference value for variance_of_bit.

    Args:
        f (FunctionDescriptor): A {0,1}-valued function.

    Raises:
        ArityTooLargeError: Raised if n > 16.
        NonBooleanFunctionError: Raised if the function is not {0,1}-valued.

    Returns:
        np.ndarray: One float64 entry per bit, bit 1 first.
    """
    values: np.ndarray = _signed_table(f, FOURIER_ARITY_MAX, "Squared influence")
    inputs: np.ndarray = all_inputs(f.arity)
    quarters: List[float] = []
    for i in range(1, f.arity + 1):
        flipped: np.ndarray = (inputs ^ np.uint64(1 << (i - 1))).astype(np.int64)
        quarters.append(float(np.mean((values - values[flipped]) ** 2)) / 4)
    return np.array(quarters, dtype = np.float64)


# *** concentration_check ***************************************************

def concentration_check(spectrum: FourierSpectrum, epsilon: float, k: int) -> ConcentrationResult:
    """Return the Fourier mass above degree k and whether it is strictly below ε.

    Args:
        spectrum (FourierSpectrum): The spectrum.
        epsilon (float): The tolerance, ε > 0.
        k (int): The degree cap, 0 <= k <= n.

    Raises:
        ParameterError: Raised if ε or k is out of range.

    Returns:
        ConcentrationResult: The residual mass and verdict.
    """
    if not epsilon > 0:
        raise ParameterError("epsilon", epsilon, "must be positive")
    if not 0 <= k <= spectrum.n:
        raise ParameterError("k", k, f"must lie in [0, {spectrum.n}]")
    residual: float = float(np.sum(spectrum.degree_weights()[k + 1:]))
    return ConcentrationResult(residual < epsilon, residual, epsilon, k)


# *** variance_tail *********************************************************

def variance_tail(spectrum: FourierSpectrum, k: int) -> float:
    """Return Σ_{j <= n-k} Var(j), the variance carried by every bit except the k most influential ones.

    When bits are ordered by increasing influence, a tail below ε implies the spectrum is ε-concentrated up to
    degree k, since every S with |S| > k contains at least one of bits 1..n-k.

    Args:
        spectrum (FourierSpectrum): The spectrum.
        k (int): The number of excluded top bits, 0 <= k <= n.

    Raises:
        ParameterError: Raised if k is out of range.

    Returns:
        float: The variance tail.
    """
    if not 0 <= k <= spectrum.n:
        raise ParameterError("k", k, f"must lie in [0, {spectrum.n}]")
    return float(np.sum(bit_variances(spectrum)[:spectrum.n - k]))


# *** _signed_table *********************************************************

def _signed_table(f: FunctionDescriptor, limit: int, operation: str) -> np.ndarray:
    if f.arity > limit:
        raise ArityTooLargeError(f.arity, limit, operation)
    return f.evaluate_signed(all_inputs(f.arity)).astype(np.float64)


# *** _walsh_hadamard *******************************************************

def _walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Return H·values for the Sylvester-Hadamard matrix H, in n·2^n butterflies."""
    data: np.ndarray = np.array(values, dtype = np.float64)
    size: int = data.size
    half: int = 1
    while half < size:
        # Pair entries differing only in the bit of weight `half`
        data = data.reshape(-1, 2, half)
        data = np.stack((data[:, 0] + data[:, 1], data[:, 0] - data[:, 1]), axis = 1)
        half *= 2
    return data.reshape(size)
