"""The noisy reader, which flips each bit i independently with probability p_i before a value is used."""
from typing import Sequence, Union

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.bitvector import BitVector
from inexactlab.energy.vectors import FlipProbabilityVector, LengthMismatchError
from inexactlab.rng import generator

Probabilities = Union[FlipProbabilityVector, Sequence[float], np.ndarray]


# *** flip_masks ************************************************************

def flip_masks(probabilities: Probabilities, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` independent flip masks, bit i of each mask being set with probability p_i.

    Args:
        probabilities (Probabilities): The per-bit flip probabilities, bit 1 first.
        count (int): The number of masks to draw.
        rng (np.random.Generator): The generator to draw from.

    Returns:
        np.ndarray: The uint64 masks.
    """
    p: np.ndarray = np.asarray(tuple(probabilities) if isinstance(probabilities, FlipProbabilityVector) else probabilities, dtype = np.float64)
    shifts: np.ndarray = np.arange(p.size, dtype = np.uint64)
    flips: np.ndarray = rng.random((count, p.size)) < p
    return np.bitwise_or.reduce(flips.astype(np.uint64) << shifts, axis = 1).astype(np.uint64)


# *** read_values ***********************************************************

def read_values(values: np.ndarray, probabilities: Probabilities, rng: np.random.Generator) -> np.ndarray:
    """Read every value once through the noisy reader.

    Args:
        values (np.ndarray): Unsigned n-bit values.
        probabilities (Probabilities): The per-bit flip probabilities, bit 1 first.
        rng (np.random.Generator): The generator to draw from.

    Returns:
        np.ndarray: The uint64 noisy copies.
    """
    values = np.asarray(values, dtype = np.uint64)
    return values ^ flip_masks(probabilities, values.size, rng).reshape(values.shape)


# *** apply_reader **********************************************************

def apply_reader(x: BitVector, p: FlipProbabilityVector, seed: int) -> BitVector:
    """Read x through the noisy reader, flipping each bit i independently with probability p_i.

    Args:
        x (BitVector): The vector to read.
        p (FlipProbabilityVector): The per-bit flip probabilities.
        seed (int): The seed; identical seeds give identical reads.

    Raises:
        LengthMismatchError: Raised if p doesn't have one entry per bit of x.

    Returns:
        BitVector: The noisy copy of x.
    """
    if p.n != x.n:
        raise LengthMismatchError(x.n, p.n, "Flip probability vector")
    mask: np.ndarray = flip_masks(p, 1, generator(seed))
    return BitVector(x.n, x.value ^ int(mask[0]))
