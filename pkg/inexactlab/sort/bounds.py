"""Closed-form bounds for sorting with noisy comparisons, against which simulated results are checked."""
import math
from typing import Optional

# First party imports
from inexactlab.error import ParameterError

AWARE_WKT_CONSTANT: float = 50.0
PAIR_ERROR_CONSTANT: float = 8.0
OBLIVIOUS_WKT_DIVISOR: float = 48.0


def _n_log_n(N: int) -> float:
    if N < 2:
        raise ParameterError("N", N, "must be at least 2")
    return N * math.log2(N)


# *** pair_error_bound ******************************************************

def pair_error_bound(a: int, b: int) -> float:
    """Return 8 / |b - a|, the bound on the aware scheme's misordering probability for a pair."""
    if a == b:
        raise ParameterError("b", b, "must differ from a")
    return PAIR_ERROR_CONSTANT / abs(b - a)


# *** aware_wkt_bound *******************************************************

def aware_wkt_bound(N: int) -> float:
    """Return 50·N²·log₂N, the bound on the expected weighted Kendall τ of the aware scheme for any input."""
    return AWARE_WKT_CONSTANT * N * _n_log_n(N)


# *** oblivious_wkt_lower_bound *********************************************

def oblivious_wkt_lower_bound(n: int, N: int) -> float:
    """Return (N+1)·2^{n/2}/48, the lower bound on the oblivious scheme's weighted Kendall τ averaged over uniform inputs."""
    return (N + 1) * 2.0 ** (n / 2) / OBLIVIOUS_WKT_DIVISOR


# *** alpha_star_shape ******************************************************

def alpha_star_shape(n: int, N: int) -> float:
    """Return 2^{n/2}/(N·log₂N), the growth rate of α* up to a constant."""
    return 2.0 ** (n / 2) / _n_log_n(N)


# *** good_threshold ********************************************************

def good_threshold(n: int, N: int, c: float = 1.0, k: Optional[int] = None) -> float:
    """Return the wkt ratio above which an input counts as good.

    Against the aware scheme the threshold is c·2^{n/6}/(N·log₂N); against a truncated scheme with parameter k
    it is c·2^{n(k-5/3)/6}/(N·log₂N).

    Args:
        n (int): The element bit-width.
        N (int): The array length, >= 2.
        c (float, optional): The constant hidden in the asymptotic bound. Defaults to 1.
        k (Optional[int], optional): The truncation parameter, None for the aware scheme.

    Returns:
        float: The threshold.
    """
    exponent: float = n / 6 if k is None else n * (k - 5 / 3) / 6
    return c * 2.0 ** exponent / _n_log_n(N)


# *** bad_fraction_bound ****************************************************

def bad_fraction_bound(n: int, N: int, k: Optional[int] = None) -> float:
    """Return N²/2^{n/3} (aware) or N²/2^{n/max(3,k)} (truncated), the bound on the fraction of bad inputs."""
    divisor: float = 3.0 if k is None else float(max(3, k))
    return N * N / 2.0 ** (n / divisor)
