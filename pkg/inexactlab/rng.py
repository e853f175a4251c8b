"""Seeded random number generation shared by every experiment.

All randomness flows from a single 64-bit seed through NumPy's PCG64 bit generator. Independent
substreams are derived from the seed with the splitmix64 finalizer, so trial ``t`` of any experiment
always sees the same numbers regardless of how trials are scheduled across workers.
"""
import secrets

# Third party imports
import numpy as np

SEED_MASK: int = (1 << 64) - 1

_GOLDEN_GAMMA: int = 0x9E3779B97F4A7C15


# *** splitmix64 ************************************************************

def splitmix64(value: int) -> int:
    """Return the splitmix64 mix of the given value.

    Args:
        value (int): The value to mix, taken modulo 2^64.

    Returns:
        int: The mixed 64-bit value.
    """
    z: int = (value * _GOLDEN_GAMMA) & SEED_MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & SEED_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & SEED_MASK
    return z ^ (z >> 31)


# *** derive_seed ***********************************************************

def derive_seed(seed: int, index: int) -> int:
    """Return the seed of substream ``index``, computed as seed XOR splitmix64(index + 1).

    Args:
        seed (int): The parent seed.
        index (int): The non-negative substream index.

    Returns:
        int: The 64-bit seed of the substream.
    """
    return (seed ^ splitmix64(index + 1)) & SEED_MASK


# *** generator *************************************************************

def generator(seed: int) -> np.random.Generator:
    """Return a PCG64 generator seeded with the given 64-bit seed.

    Args:
        seed (int): The seed, taken modulo 2^64.

    Returns:
        np.random.Generator: The seeded generator.
    """
    return np.random.Generator(np.random.PCG64(seed & SEED_MASK))


# *** substream *************************************************************

def substream(seed: int, index: int) -> np.random.Generator:
    """Return the generator of substream ``index`` of the given seed.

    Args:
        seed (int): The parent seed.
        index (int): The non-negative substream index.

    Returns:
        np.random.Generator: The seeded generator of the substream.
    """
    return generator(derive_seed(seed, index))


# *** draw_seed *************************************************************

def draw_seed() -> int:
    """Draw a fresh 64-bit seed from the operating system's entropy source.

    Returns:
        int: The new seed.
    """
    return secrets.randbits(64)
