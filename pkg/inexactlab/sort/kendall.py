"""Weighted Kendall's τ: the sum of |C[a] - C[b]| over every pair the output orders incorrectly."""
from collections import Counter
from typing import Sequence

# Third party imports
import numpy as np

# First party imports
from inexactlab.error import InexactError
from inexactlab.sort.instance import SortInstance


# *** NotAPermutationError **************************************************

class NotAPermutationError(InexactError):
    """Exception which is raised when a sort output doesn't hold exactly the elements of its instance."""

    def __init__(self, length: int, expected: int) -> None:
        """Initialize a NotAPermutationError exception.

        Args:
            length (int): The length of the output.
            expected (int): The length of the instance.
        """
        super().__init__(f"The output of {length} elements is not a permutation of the {expected}-element instance")


# *** weighted_kendall_tau **************************************************

def weighted_kendall_tau(output: Sequence[int], instance: SortInstance) -> int:
    """Return Σ |x - y| over the pairs whose order in the output disagrees with the fully sorted order.

    Args:
        output (Sequence[int]): The sort output.
        instance (SortInstance): The instance the output was produced from.

    Raises:
        NotAPermutationError: Raised if the output isn't a permutation of the instance.

    Returns:
        int: The weighted Kendall τ, 0 exactly when the output is sorted.
    """
    if Counter(output) != Counter(instance.elements):
        raise NotAPermutationError(len(output), instance.N)
    # Python integers avoid overflow once differences and their sums approach 2^63
    dtype: type = np.int64 if instance.n <= 40 else object
    values: np.ndarray = np.array(list(output), dtype = dtype)
    differences: np.ndarray = values[:, None] - values[None, :]
    inverted: np.ndarray = np.triu(differences > 0, k = 1)
    return int(differences[inverted].sum()) if inverted.any() else 0
