"""Fixed-width bit vectors, indexed from 1 at the least significant bit."""
from dataclasses import dataclass
from typing import Sequence, Tuple

# First party imports
from inexactlab.error import InexactError

MAX_WIDTH: int = 63


# *** BitIndexError *********************************************************

class BitIndexError(InexactError):
    """Exception which is raised when a bit index falls outside of [1, n].

    Attributes:
        index (int): The offending index.
        width (int): The width of the vector or the arity of the function.
    """

    def __init__(self, index: int, width: int) -> None:
        """Initialize a BitIndexError exception, including the index and the valid range in the error message.

        Args:
            index (int): The offending index.
            width (int): The width of the vector or the arity of the function.
        """
        self.index: int = index
        self.width: int = width
        super().__init__(f"Bit index {index} is out of range, expected 1 <= i <= {width}")


# *** WidthError ************************************************************

class WidthError(InexactError):
    """Exception which is raised when a bit width is unsupported or two widths disagree."""

    def __init__(self, message: str) -> None:
        """Initialize a WidthError exception.

        Args:
            message (str): The description of the width problem.
        """
        super().__init__(message)


# *** check_width ***********************************************************

def check_width(n: int) -> None:
    """Raise a WidthError unless 1 <= n <= MAX_WIDTH.

    Args:
        n (int): The width to check.

    Raises:
        WidthError: Raised if the width is unsupported.
    """
    if not 1 <= n <= MAX_WIDTH:
        raise WidthError(f"Bit width {n} is unsupported, expected 1 <= n <= {MAX_WIDTH}")


# *** check_index ***********************************************************

def check_index(i: int, n: int) -> None:
    """Raise a BitIndexError unless 1 <= i <= n.

    Args:
        i (int): The bit index to check.
        n (int): The width the index refers into.

    Raises:
        BitIndexError: Raised if the index is out of range.
    """
    if not 1 <= i <= n:
        raise BitIndexError(i, n)


# *** BitVector *************************************************************

@dataclass(frozen = True)
class BitVector:
    """An immutable n-bit binary vector stored as its unsigned value.

    Attributes:
        n (int): The bit width, 1 <= n <= 63.
        value (int): The unsigned value, in [0, 2^n - 1]. Bit i of the vector is bit i - 1 of the value.
    """

    n: int
    value: int

    def __post_init__(self) -> None:
        """Validate the width and the value range.

        Raises:
            WidthError: Raised if the width is unsupported or the value doesn't fit in n bits.
        """
        check_width(self.n)
        if not 0 <= self.value < (1 << self.n):
            raise WidthError(f"Value {self.value} doesn't fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        """Build a vector from its bits, least significant first.

        Args:
            bits (Sequence[int]): The binary digits, bits[0] being bit 1.

        Returns:
            BitVector: The vector with the given bits.
        """
        value: int = 0
        for position, bit in enumerate(bits):
            if bit not in (0, 1):
                raise WidthError(f"Bit {position + 1} has non-binary value {bit}")
            value |= bit << position
        return cls(len(bits), value)

    @property
    def bits(self) -> Tuple[int, ...]:
        """Return the bits of the vector, least significant first."""
        return tuple((self.value >> position) & 1 for position in range(self.n))

    def bit(self, i: int) -> int:
        """Return bit i of the vector.

        Args:
            i (int): The 1-based bit index.

        Returns:
            int: The bit, 0 or 1.
        """
        check_index(i, self.n)
        return (self.value >> (i - 1)) & 1

    def flip(self, i: int) -> "BitVector":
        """Return the vector with bit i flipped (x^{⊕i}).

        Args:
            i (int): The 1-based bit index.

        Returns:
            BitVector: The flipped vector.
        """
        check_index(i, self.n)
        return BitVector(self.n, self.value ^ (1 << (i - 1)))

    def assign(self, i: int, bit: int) -> "BitVector":
        """Return the vector with bit i set to the given bit (x^{(i↣0)} or x^{(i↣1)}).

        Args:
            i (int): The 1-based bit index.
            bit (int): The new bit value, 0 or 1.

        Returns:
            BitVector: The updated vector.
        """
        check_index(i, self.n)
        if bit not in (0, 1):
            raise WidthError(f"Bit value {bit} is not binary")
        mask: int = 1 << (i - 1)
        return BitVector(self.n, (self.value & ~mask) | (mask if bit else 0))

    def __int__(self) -> int:
        """Return the unsigned value of the vector."""
        return self.value

    def __str__(self) -> str:
        """Return the vector as a binary string, most significant bit first."""
        return format(self.value, f"0{self.n}b")


# *** flip ******************************************************************

def flip(x: BitVector, i: int) -> BitVector:
    """Return x with bit i flipped.

    Args:
        x (BitVector): The vector.
        i (int): The 1-based bit index.

    Raises:
        BitIndexError: Raised if i is outside of [1, n].

    Returns:
        BitVector: The vector differing from x exactly at bit i.
    """
    return x.flip(i)
