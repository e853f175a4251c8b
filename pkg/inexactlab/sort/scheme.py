"""Energy schemes for storing the n-bit elements of an array that is sorted through a noisy comparator."""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

# First party imports
from inexactlab.boolean.bitvector import check_width
from inexactlab.energy.vectors import EnergyVector, FlipProbabilityVector, energy_to_probs
from inexactlab.error import InexactError


# *** InvalidSchemeError ****************************************************

class InvalidSchemeError(InexactError):
    """Exception which is raised when an energy scheme can't be built from the given parameters."""

    def __init__(self, reason: str) -> None:
        """Initialize an InvalidSchemeError exception.

        Args:
            reason (str): Why the scheme is invalid.
        """
        self.reason: str = reason
        super().__init__(f"Invalid energy scheme: {reason}")


# *** SchemeKind ************************************************************

class SchemeKind(Enum):
    """The family an energy scheme belongs to."""

    AWARE = "aware"
    OBLIVIOUS = "oblivious"
    TRUNCATED = "truncated"
    CUSTOM = "custom"


# *** EnergyScheme **********************************************************

@dataclass(frozen = True)
class EnergyScheme:
    """A named per-bit energy vector for n-bit elements, bit 1 being the least significant.

    Attributes:
        kind (SchemeKind): The scheme family.
        energy (EnergyVector): The energies, bit 1 first.
        k (Optional[int]): The truncation parameter of a truncated scheme.
    """

    kind: SchemeKind
    energy: EnergyVector
    k: Optional[int] = None

    @property
    def n(self) -> int:
        """Return the element bit-width."""
        return self.energy.n

    @property
    def probs(self) -> FlipProbabilityVector:
        """Return the per-bit flip probabilities 2^-e_i."""
        return energy_to_probs(self.energy)

    @property
    def label(self) -> str:
        """Return the name written into reports, e.g. ``aware`` or ``truncated(k=2)``."""
        if self.kind == SchemeKind.TRUNCATED:
            return f"truncated(k={self.k})"
        return self.kind.value

    @classmethod
    def aware(cls, n: int) -> "EnergyScheme":
        """Return e = (1, 2, ..., n), the most significant bit receiving n."""
        check_width(n)
        return cls(SchemeKind.AWARE, EnergyVector.of(range(1, n + 1)))

    @classmethod
    def oblivious(cls, n: int) -> "EnergyScheme":
        """Return e_i = (n+1)/2 for every bit, the same total n(n+1)/2 as the aware scheme."""
        check_width(n)
        return cls(SchemeKind.OBLIVIOUS, EnergyVector.of([(n + 1) / 2] * n))

    @classmethod
    def truncated(cls, n: int, k: int) -> "EnergyScheme":
        """Fund only the top floor(n/k) bits, with nk/2 each, and leave the low bits at zero energy.

        Args:
            n (int): The element bit-width.
            k (int): The truncation parameter, 1 <= k <= n.

        Raises:
            InvalidSchemeError: Raised if k is out of range.

        Returns:
            EnergyScheme: The truncated scheme.
        """
        check_width(n)
        if k < 1 or k > n:
            raise InvalidSchemeError(f"truncation parameter k = {k} must lie in [1, n = {n}]")
        funded: int = max(1, n // k)
        entries: List[float] = [0.0] * (n - funded) + [n * k / 2] * funded
        return cls(SchemeKind.TRUNCATED, EnergyVector.of(entries), k)

    @classmethod
    def custom(cls, entries: Sequence[float]) -> "EnergyScheme":
        """Wrap an arbitrary energy vector, bit 1 first."""
        if not entries:
            raise InvalidSchemeError("a custom scheme needs at least one entry")
        check_width(len(entries))
        return cls(SchemeKind.CUSTOM, EnergyVector.of(entries))

    @classmethod
    def uniform(cls, n: int, energy: float) -> "EnergyScheme":
        """Return a custom scheme spending the same energy on every bit."""
        return cls.custom([energy] * n)

    @classmethod
    def named(cls, name: str, n: int, k: Optional[int] = None) -> "EnergyScheme":
        """Build a scheme from its command-line name.

        Args:
            name (str): ``aware``, ``oblivious`` or ``truncated``.
            n (int): The element bit-width.
            k (Optional[int], optional): The truncation parameter, required for ``truncated``.

        Raises:
            InvalidSchemeError: Raised for unknown names or a truncated scheme without k.

        Returns:
            EnergyScheme: The scheme.
        """
        if name == SchemeKind.AWARE.value:
            return cls.aware(n)
        if name == SchemeKind.OBLIVIOUS.value:
            return cls.oblivious(n)
        if name == SchemeKind.TRUNCATED.value:
            if k is None:
                raise InvalidSchemeError("a truncated scheme needs k")
            return cls.truncated(n, k)
        raise InvalidSchemeError(f"unknown scheme '{name}', expected aware, oblivious or truncated")

    def to_json(self) -> Dict[str, Any]:
        """Return the scheme as a JSON-serializable dictionary."""
        return {"kind": self.kind.value, "k": self.k, "energy": list(self.energy.entries)}
