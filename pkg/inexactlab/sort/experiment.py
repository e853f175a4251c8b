"""Monte Carlo experiments over noisy quicksort: expected weighted Kendall τ, the α* ratio, good/bad input
classification and the truncated-scheme sweep.

Trial t of an expected-wkt estimate runs on the seed derive_seed(seed, t). Instance j of a multi-instance experiment
is drawn from substream(seed, j), and the numerator and denominator schemes of that instance run their trials on
derive_seed(derive_seed(seed, j), 1) and derive_seed(derive_seed(seed, j), 2) respectively.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Third party imports
import numpy as np
from scipy import stats

# First party imports
from inexactlab.boolean.influence import SampleCountError
from inexactlab.parallel import map_ordered
from inexactlab.rng import derive_seed, substream
from inexactlab.sort import bounds
from inexactlab.sort.instance import SortInstance, generate_instance
from inexactlab.sort.quicksort import NoiseMode, SortTrialReport, inexact_quicksort
from inexactlab.sort.scheme import EnergyScheme

_log: logging.Logger = logging.getLogger(__name__)

CONFIDENCE: float = 0.95

NUMERATOR_ROLE: int = 1
DENOMINATOR_ROLE: int = 2


# *** WktEstimate ***********************************************************

@dataclass(frozen = True)
class WktEstimate:
    """The Monte Carlo mean of the weighted Kendall τ of noisy quicksort on one instance.

    Attributes:
        mean (float): The mean over trials.
        stderr (float): The standard error of the mean, 0 for a single trial.
        trials (int): The number of trials.
    """

    mean: float
    stderr: float
    trials: int

    def to_json(self) -> Dict[str, Any]:
        """Return the estimate as a JSON-serializable dictionary."""
        return {"mean": self.mean, "stderr": self.stderr, "trials": self.trials}


# *** RatioEstimate *********************************************************

@dataclass(frozen = True)
class RatioEstimate:
    """The ratio of mean weighted Kendall τ between two schemes over sampled instances.

    Attributes:
        n (int): The element bit-width.
        N (int): The array length.
        numerator (str): The label of the numerator scheme.
        denominator (str): The label of the denominator scheme.
        instances (int): The number of sampled instances.
        trials (int): The number of trials per instance and scheme.
        mean_numerator (float): The mean wkt of the numerator scheme over instances.
        mean_denominator (float): The mean wkt of the denominator scheme over instances.
        ratio (float): mean_numerator / mean_denominator, infinite when the denominator is 0.
        stderr (float): The delta-method standard error of the ratio.
        ci_low (float): The lower end of the 95% confidence interval.
        ci_high (float): The upper end of the 95% confidence interval.
        good_count (int): The instances whose own ratio reaches the good-input threshold.
        bad_count (int): The remaining instances.
        threshold (float): The good-input threshold.
        degenerate (bool): Whether the denominator mean was 0.
        seed (int): The experiment seed.
    """

    n: int
    N: int  # pylint: disable=invalid-name
    numerator: str
    denominator: str
    instances: int
    trials: int
    mean_numerator: float
    mean_denominator: float
    ratio: float
    stderr: float
    ci_low: float
    ci_high: float
    good_count: int
    bad_count: int
    threshold: float
    degenerate: bool
    seed: int

    @property
    def good_ratio(self) -> float:
        """Return good_count / bad_count, infinite when no instance is bad."""
        return self.good_count / self.bad_count if self.bad_count else math.inf

    @property
    def bad_fraction(self) -> float:
        """Return the fraction of sampled instances that are bad."""
        return self.bad_count / self.instances

    def to_json(self) -> Dict[str, Any]:
        """Return the estimate as a JSON-serializable dictionary."""
        return {
            "n": self.n,
            "N": self.N,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "instances": self.instances,
            "trials": self.trials,
            "mean_numerator": self.mean_numerator,
            "mean_denominator": self.mean_denominator,
            "ratio": _finite_or_none(self.ratio),
            "stderr": _finite_or_none(self.stderr),
            "ci_low": _finite_or_none(self.ci_low),
            "ci_high": _finite_or_none(self.ci_high),
            "good_count": self.good_count,
            "bad_count": self.bad_count,
            "good_ratio": _finite_or_none(self.good_ratio),
            "threshold": self.threshold,
            "degenerate": self.degenerate,
            "seed": self.seed,
        }


# *** sort_trials ***********************************************************

def sort_trials(instance: SortInstance, scheme: EnergyScheme, trials: int, seed: int, noise_mode: NoiseMode = NoiseMode.FRESH,
                threads: int = 1) -> List[SortTrialReport]:
    """Run noisy quicksort ``trials`` times, trial t on derive_seed(seed, t), and return every report in trial order."""
    if trials < 1:
        raise SampleCountError(trials)
    return map_ordered(lambda trial: inexact_quicksort(instance, scheme, derive_seed(seed, trial), noise_mode), range(trials), threads)


# *** expected_wkt **********************************************************

def expected_wkt(instance: SortInstance, scheme: EnergyScheme, trials: int, seed: int, noise_mode: NoiseMode = NoiseMode.FRESH,
                 threads: int = 1) -> WktEstimate:
    """Estimate the expected weighted Kendall τ of noisy quicksort on an instance.

    Args:
        instance (SortInstance): The instance.
        scheme (EnergyScheme): The energy scheme.
        trials (int): The number of trials, >= 1.
        seed (int): The seed.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        SampleCountError: Raised if trials < 1.

    Returns:
        WktEstimate: The mean and its standard error.
    """
    reports: List[SortTrialReport] = sort_trials(instance, scheme, trials, seed, noise_mode, threads)
    # float64 is exact for wkt values up to 2^53
    wkts: np.ndarray = np.array([float(report.wkt) for report in reports], dtype = np.float64)
    stderr: float = float(stats.sem(wkts)) if trials > 1 else 0.0
    return WktEstimate(float(np.mean(wkts)), stderr, trials)


# *** compare_schemes *******************************************************

def compare_schemes(n: int, N: int, instances: int, trials: int, seed: int, numerator: EnergyScheme,  # pylint: disable=invalid-name
                    denominator: EnergyScheme, threshold: float, noise_mode: NoiseMode = NoiseMode.FRESH, threads: int = 1) -> RatioEstimate:
    """Estimate E_C[wkt(numerator)] / E_C[wkt(denominator)] over uniformly sampled instances and classify each instance.

    An instance is good when its own ratio is at least the threshold. An instance whose denominator wkt is 0 is good.

    Args:
        n (int): The element bit-width.
        N (int): The array length.
        instances (int): The number of instances to sample, >= 1.
        trials (int): The number of trials per instance and scheme, >= 1.
        seed (int): The seed.
        numerator (EnergyScheme): The scheme in the numerator.
        denominator (EnergyScheme): The scheme in the denominator.
        threshold (float): The good-input threshold on the per-instance ratio.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        SampleCountError: Raised if instances or trials is less than 1.

    Returns:
        RatioEstimate: The ratio, its confidence interval and the good/bad split.
    """
    if instances < 1:
        raise SampleCountError(instances)
    if trials < 1:
        raise SampleCountError(trials)

    def estimate_instance(index: int) -> Tuple[WktEstimate, WktEstimate]:
        instance: SortInstance = generate_instance(n, N, substream(seed, index))
        instance_seed: int = derive_seed(seed, index)
        return (expected_wkt(instance, numerator, trials, derive_seed(instance_seed, NUMERATOR_ROLE), noise_mode),
                expected_wkt(instance, denominator, trials, derive_seed(instance_seed, DENOMINATOR_ROLE), noise_mode))

    pairs: List[Tuple[WktEstimate, WktEstimate]] = map_ordered(estimate_instance, range(instances), threads)
    tops: np.ndarray = np.array([top.mean for top, _ in pairs], dtype = np.float64)
    bottoms: np.ndarray = np.array([bottom.mean for _, bottom in pairs], dtype = np.float64)

    good: int = sum(1 for top, bottom in zip(tops, bottoms) if bottom == 0.0 or top / bottom >= threshold)
    mean_top: float = float(np.mean(tops))
    mean_bottom: float = float(np.mean(bottoms))
    if instances > 1:
        se_top: float = float(stats.sem(tops))
        se_bottom: float = float(stats.sem(bottoms))
    else:
        se_top, se_bottom = pairs[0][0].stderr, pairs[0][1].stderr

    degenerate: bool = mean_bottom == 0.0
    if degenerate:
        _log.warning("Mean wkt of %s is 0 at n = %d, N = %d, the ratio is reported as infinite", denominator.label, n, N)
        ratio: float = math.inf
        stderr: float = math.inf
    else:
        ratio = mean_top / mean_bottom
        relative_top: float = se_top / mean_top if mean_top > 0.0 else 0.0
        stderr = ratio * math.hypot(relative_top, se_bottom / mean_bottom)
    z: float = float(stats.norm.ppf(0.5 + CONFIDENCE / 2))
    _log.info("%s / %s at n = %d, N = %d: ratio %.6g, %d of %d instances good", numerator.label, denominator.label, n, N, ratio, good, instances)
    return RatioEstimate(n, N, numerator.label, denominator.label, instances, trials, mean_top, mean_bottom, ratio, stderr,
                         ratio - z * stderr, ratio + z * stderr, good, instances - good, threshold, degenerate, seed)


# *** alpha_star_estimate ***************************************************

def alpha_star_estimate(n: int, N: int, instances: int, trials: int, seed: int, c: float = 1.0,  # pylint: disable=invalid-name
                        numerator: Optional[EnergyScheme] = None, denominator: Optional[EnergyScheme] = None,
                        noise_mode: NoiseMode = NoiseMode.FRESH, threads: int = 1) -> RatioEstimate:
    """Estimate α* = E_C[wkt(oblivious)] / E_C[wkt(aware)] over uniformly sampled instances.

    Args:
        n (int): The element bit-width.
        N (int): The array length, >= 2.
        instances (int): The number of instances, >= 1.
        trials (int): The number of trials per instance and scheme, >= 1.
        seed (int): The seed.
        c (float, optional): The constant of the good-input threshold. Defaults to 1.
        numerator (Optional[EnergyScheme], optional): Replaces the oblivious scheme. Defaults to None.
        denominator (Optional[EnergyScheme], optional): Replaces the aware scheme. Defaults to None.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Returns:
        RatioEstimate: The estimate with its confidence interval.
    """
    return compare_schemes(n, N, instances, trials, seed, numerator or EnergyScheme.oblivious(n), denominator or EnergyScheme.aware(n),
                           bounds.good_threshold(n, N, c), noise_mode, threads)


# *** classify_inputs *******************************************************

def classify_inputs(n: int, N: int, sample_count: int, c: float, trials: int, seed: int,  # pylint: disable=invalid-name
                    numerator: Optional[EnergyScheme] = None, denominator: Optional[EnergyScheme] = None,
                    noise_mode: NoiseMode = NoiseMode.FRESH, threads: int = 1) -> RatioEstimate:
    """Count the sampled instances whose oblivious/aware wkt ratio reaches c·2^{n/6}/(N·log₂N).

    Args:
        n (int): The element bit-width.
        N (int): The array length, >= 2.
        sample_count (int): The number of instances, >= 1.
        c (float): The threshold constant.
        trials (int): The number of trials per instance and scheme, >= 1.
        seed (int): The seed.
        numerator (Optional[EnergyScheme], optional): Replaces the oblivious scheme. Defaults to None.
        denominator (Optional[EnergyScheme], optional): Replaces the aware scheme. Defaults to None.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Returns:
        RatioEstimate: The good and bad counts, with the pooled ratio.
    """
    return alpha_star_estimate(n, N, sample_count, trials, seed, c, numerator, denominator, noise_mode, threads)


# *** truncation_sweep ******************************************************

def truncation_sweep(n_values: Sequence[int], N: int, k_values: Sequence[int], instances: int, trials: int, seed: int,  # pylint: disable=invalid-name
                     c: float = 1.0, noise_mode: NoiseMode = NoiseMode.FRESH, threads: int = 1) -> List[RatioEstimate]:
    """Estimate E_C[wkt(oblivious)] / E_C[wkt(truncated(k))] for every k and n, k outermost.

    Instances depend only on n and the seed, so every k at the same n is measured on the same instances.

    Args:
        n_values (Sequence[int]): The element bit-widths.
        N (int): The array length, >= 2.
        k_values (Sequence[int]): The truncation parameters, each with 1 <= k <= n.
        instances (int): The number of instances per row, >= 1.
        trials (int): The number of trials per instance and scheme, >= 1.
        seed (int): The seed.
        c (float, optional): The constant of the good-input threshold 2^{n(k-5/3)/6}/(N·log₂N). Defaults to 1.
        noise_mode (NoiseMode, optional): When elements are read. Defaults to fresh.
        threads (int, optional): The number of worker threads. Defaults to 1.

    Raises:
        InvalidSchemeError: Raised if some k exceeds some n.

    Returns:
        List[RatioEstimate]: One row per (k, n).
    """
    rows: List[RatioEstimate] = []
    for k in k_values:
        for n in n_values:
            rows.append(compare_schemes(n, N, instances, trials, seed, EnergyScheme.oblivious(n), EnergyScheme.truncated(n, k),
                                        bounds.good_threshold(n, N, c, k), noise_mode, threads))
    return rows


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None
