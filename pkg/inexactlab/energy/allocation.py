"""Total impact, influence-oblivious and influence-aware energy allocations, and the α figure of merit.

The influence-aware optimum follows from the AM-GM inequality: with every funded bit satisfying
E[Inf(i)]·p_i = λ, p_i = (Π_j E[Inf(j)] · 2^-ℰ)^{1/m} / E[Inf(i)] over the m funded bits. Whenever
this closed form asks for negative energy the offending bits are pinned at e_i = 0 and the remainder is
re-solved (water-filling) until no bit violates the constraint.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.influence import InfluenceProfile
from inexactlab.energy.vectors import EnergyVector, FlipProbabilityVector, LengthMismatchError, NegativeEnergyError, energy_to_probs
from inexactlab.error import InexactError, ParameterError

_log: logging.Logger = logging.getLogger(__name__)

CLAMP_TOLERANCE: float = 1e-12


# *** ZeroImpactError *******************************************************

class ZeroImpactError(InexactError):
    """Exception which is raised when α is requested for a profile whose optimal total impact is zero."""

    def __init__(self) -> None:
        """Initialize a ZeroImpactError exception."""
        super().__init__("Every bit has zero expected influence, so the optimal total impact is 0 and α is undefined")


# *** InvalidBetaError ******************************************************

class InvalidBetaError(InexactError):
    """Exception which is raised when an influence ratio β must exceed 1 but doesn't."""

    def __init__(self, beta: float) -> None:
        """Initialize an InvalidBetaError exception.

        Args:
            beta (float): The offending ratio.
        """
        self.beta: float = beta
        super().__init__(f"β = {beta} must be greater than 1")


# *** AllocationKind ********************************************************

class AllocationKind(Enum):
    """How an allocation was produced."""

    OBLIVIOUS = "oblivious"
    AWARE_OPTIMAL = "aware-optimal"
    CUSTOM = "custom"


# *** AllocationResult ******************************************************

@dataclass(frozen = True)
class AllocationResult:
    """An energy allocation paired with the flip probabilities and total impact it achieves on a profile.

    Attributes:
        energy (EnergyVector): The per-bit energies.
        probs (FlipProbabilityVector): The induced flip probabilities.
        total_impact (float): Σ E[Inf(i)]·p_i for the paired profile.
        kind (AllocationKind): How the allocation was produced.
        saturated (Tuple[int, ...]): The 1-based indices pinned at e_i = 0, either by clamping or for zero influence.
        clamped (bool): Whether water-filling pinned any bit the unconstrained closed form would have funded negatively.
        diagnostic (Optional[str]): A note about degenerate inputs, if any.
    """

    energy: EnergyVector
    probs: FlipProbabilityVector
    total_impact: float
    kind: AllocationKind
    saturated: Tuple[int, ...] = ()
    clamped: bool = False
    diagnostic: Optional[str] = None

    @property
    def budget(self) -> float:
        """Return the declared energy budget."""
        return self.energy.budget

    def to_json(self) -> Dict[str, Any]:
        """Return the allocation in its JSON report form."""
        return {
            "kind": self.kind.value,
            "energy": list(self.energy.entries),
            "probs": list(self.probs.entries),
            "total_impact": self.total_impact,
            "saturated": list(self.saturated),
            "budget": self.budget,
            "clamped": self.clamped,
            "diagnostic": self.diagnostic,
        }


# *** AlphaReport ***********************************************************

@dataclass(frozen = True)
class AlphaReport:
    """The α figure of merit with the two allocations it compares.

    Attributes:
        alpha (float): TIm(oblivious) / TIm(optimal).
        oblivious (AllocationResult): The influence-oblivious allocation.
        optimal (AllocationResult): The influence-aware optimal allocation.
    """

    alpha: float
    oblivious: AllocationResult
    optimal: AllocationResult

    @property
    def clamped(self) -> bool:
        """Return whether the optimum needed clamping, in which case the constant-β closed form doesn't apply."""
        return self.optimal.clamped

    def to_json(self) -> Dict[str, Any]:
        """Return the report as a JSON-serializable dictionary."""
        return {"alpha": self.alpha, "clamped": self.clamped, "oblivious": self.oblivious.to_json(), "optimal": self.optimal.to_json()}


# *** total_impact **********************************************************

def total_impact(profile: InfluenceProfile, p: FlipProbabilityVector) -> float:
    """Return the total impact TIm_f(p) = Σ E[Inf(i)]·p_i.

    Args:
        profile (InfluenceProfile): The influence profile.
        p (FlipProbabilityVector): The flip probabilities.

    Raises:
        LengthMismatchError: Raised if the lengths differ.

    Returns:
        float: The non-negative total impact.
    """
    if p.n != profile.n:
        raise LengthMismatchError(profile.n, p.n, "Flip probability vector")
    return math.fsum(mean * probability for mean, probability in zip(profile.means, p.entries))


# *** oblivious_allocation **************************************************

def oblivious_allocation(profile: InfluenceProfile, budget: float) -> AllocationResult:
    """Split the budget equally, e_i = ℰ/n, ignoring influence.

    Args:
        profile (InfluenceProfile): The influence profile.
        budget (float): The energy budget ℰ >= 0.

    Raises:
        NegativeEnergyError: Raised if the budget is negative.

    Returns:
        AllocationResult: The allocation, with total impact 2^{-ℰ/n}·Σ E[Inf(i)].
    """
    _check_budget(budget)
    energy: EnergyVector = EnergyVector((budget / profile.n,) * profile.n, budget)
    return _paired(profile, energy, AllocationKind.OBLIVIOUS)


# *** custom_allocation *****************************************************

def custom_allocation(profile: InfluenceProfile, energy: EnergyVector) -> AllocationResult:
    """Pair a user-supplied energy vector with a profile.

    Args:
        profile (InfluenceProfile): The influence profile.
        energy (EnergyVector): The energy vector.

    Raises:
        LengthMismatchError: Raised if the lengths differ.

    Returns:
        AllocationResult: The allocation.
    """
    if energy.n != profile.n:
        raise LengthMismatchError(profile.n, energy.n, "Energy vector")
    return _paired(profile, energy, AllocationKind.CUSTOM)


# *** optimal_allocation ****************************************************

def optimal_allocation(profile: InfluenceProfile, budget: float) -> AllocationResult:
    """Return the allocation minimizing the total impact subject to Σ e_i <= ℰ and e_i >= 0.

    Zero-influence bits are left unfunded. The remaining bits get the AM-GM closed form; bits it would fund
    negatively are pinned at e_i = 0 and the rest re-solved until the allocation is feasible.

    Args:
        profile (InfluenceProfile): The influence profile, in natural bit order.
        budget (float): The energy budget ℰ >= 0.

    Raises:
        NegativeEnergyError: Raised if the budget is negative.

    Returns:
        AllocationResult: The optimal allocation. For an all-zero profile every e_i is 0, the impact is 0 and a diagnostic is attached.
    """
    _check_budget(budget)
    means: np.ndarray = profile.as_array()
    energies: np.ndarray = np.zeros(profile.n, dtype = np.float64)
    zero_bits: List[int] = [index for index in range(profile.n) if means[index] == 0.0]

    if len(zero_bits) == profile.n:
        _log.warning("Optimal allocation requested for an all-zero influence profile")
        return _paired(profile, EnergyVector(tuple(energies), budget), AllocationKind.AWARE_OPTIMAL, tuple(range(1, profile.n + 1)), False,
                       "All expected influences are zero, so every allocation has zero impact")

    funded: List[int] = [index for index in range(profile.n) if means[index] > 0.0]
    clamped_bits: List[int] = []
    logs: np.ndarray = np.log2(means, where = means > 0.0, out = np.zeros(profile.n, dtype = np.float64))
    while True:
        # e_i = log2 E[Inf(i)] - level spends the whole budget over the funded bits
        level: float = (math.fsum(logs[funded]) - budget) / len(funded)
        candidate: np.ndarray = logs[funded] - level
        violating: List[int] = [index for index, energy in zip(funded, candidate) if energy < -CLAMP_TOLERANCE]
        if not violating:
            energies[funded] = np.maximum(candidate, 0.0)
            break
        clamped_bits.extend(violating)
        funded = [index for index in funded if index not in violating]

    if clamped_bits:
        _log.info("Optimal allocation pinned bits %s at zero energy", [index + 1 for index in sorted(clamped_bits)])

    saturated: Tuple[int, ...] = tuple(index + 1 for index in sorted(zero_bits + clamped_bits))
    # Rounding may overshoot the budget by a few ulps
    spent: float = math.fsum(energies)
    if spent > budget and spent > 0.0:
        energies *= budget / spent
    return _paired(profile, EnergyVector(tuple(float(energy) for energy in energies), budget), AllocationKind.AWARE_OPTIMAL,
                   saturated, bool(clamped_bits))


# *** am_gm_bound ***********************************************************

def am_gm_bound(profile: InfluenceProfile, budget: float) -> float:
    """Return n·(Π E[Inf(i)]·2^{-ℰ})^{1/n}, the lower bound on the total impact of any allocation spending the full budget.

    The bound is attained by the unclamped optimum; it is 0 whenever some bit has zero influence.

    Args:
        profile (InfluenceProfile): The influence profile.
        budget (float): The energy budget ℰ >= 0.

    Returns:
        float: The AM-GM lower bound.
    """
    _check_budget(budget)
    if profile.zero_indices():
        return 0.0
    mean_log: float = math.fsum(math.log2(mean) for mean in profile.means) / profile.n
    return profile.n * 2.0 ** (mean_log - budget / profile.n)


# *** alpha_report **********************************************************

def alpha_report(profile: InfluenceProfile, budget: float) -> AlphaReport:
    """Compute α together with the oblivious and optimal allocations it compares.

    Args:
        profile (InfluenceProfile): The influence profile.
        budget (float): The energy budget ℰ >= 0.

    Raises:
        ZeroImpactError: Raised if the optimal total impact is zero.

    Returns:
        AlphaReport: The report.
    """
    optimal: AllocationResult = optimal_allocation(profile, budget)
    if optimal.total_impact <= 0.0:
        raise ZeroImpactError()
    oblivious: AllocationResult = oblivious_allocation(profile, budget)
    return AlphaReport(oblivious.total_impact / optimal.total_impact, oblivious, optimal)


# *** alpha *****************************************************************

def alpha(profile: InfluenceProfile, budget: float) -> float:
    """Return α = TIm(oblivious) / TIm(optimal).

    When the optimum is unclamped, α equals the ratio of the arithmetic to the geometric mean of the influences and doesn't depend on the budget.

    Args:
        profile (InfluenceProfile): The influence profile.
        budget (float): The energy budget ℰ >= 0.

    Raises:
        ZeroImpactError: Raised if the optimal total impact is zero.

    Returns:
        float: α >= 1.
    """
    return alpha_report(profile, budget).alpha


# *** alpha_closed_form *****************************************************

def alpha_closed_form(beta: float, n: int) -> float:
    """Return α for a profile with constant ratio β between consecutive influences: (β^n - 1) / (n·β^{(n-1)/2}·(β - 1)).

    This grows as Ω(β^{n/2} / n).

    Args:
        beta (float): The common influence ratio, β > 1.
        n (int): The arity, n >= 1.

    Raises:
        InvalidBetaError: Raised if β <= 1.

    Returns:
        float: The closed-form α.
    """
    if not beta > 1.0:
        raise InvalidBetaError(beta)
    if n < 1:
        raise ParameterError("n", n, "must be at least 1")
    # Divide through by β^{(n-1)/2} first so large n doesn't overflow
    return float((beta ** ((n + 1) / 2) - beta ** (-(n - 1) / 2)) / (n * (beta - 1.0)))


# *** _check_budget *********************************************************

def _check_budget(budget: float) -> None:
    if not math.isfinite(budget) or budget < 0:
        raise NegativeEnergyError(None, budget)


# *** _paired ***************************************************************

def _paired(profile: InfluenceProfile, energy: EnergyVector, kind: AllocationKind, saturated: Tuple[int, ...] = (), clamped: bool = False,
            diagnostic: Optional[str] = None) -> AllocationResult:
    probs: FlipProbabilityVector = energy_to_probs(energy)
    return AllocationResult(energy, probs, total_impact(profile, probs), kind, saturated, clamped, diagnostic)
