"""Provides the command group for sorting simulations under inexact energy schemes."""
import argparse
import logging
import pathlib
from typing import Any, Dict, List, Sequence, Tuple

# First party imports
from inexactlab.command import CommandGroup, seed_of, single
from inexactlab.config import NOISE_MODES, SCHEMES, ExperimentConfig
from inexactlab.error import ConfigurationError
from inexactlab.report import Report
from inexactlab.rng import derive_seed, substream
from inexactlab.sort import bounds
from inexactlab.sort.compare import PairErrorEstimate, comparison_error_probability, first_differing_bit, pair_error_estimate
from inexactlab.sort.experiment import RatioEstimate, WktEstimate, alpha_star_estimate, classify_inputs, expected_wkt, truncation_sweep
from inexactlab.sort.instance import SortInstance, generate_instance, load_instance
from inexactlab.sort.quicksort import NoiseMode
from inexactlab.sort.scheme import EnergyScheme, InvalidSchemeError

_log: logging.Logger = logging.getLogger(__name__)

SORT_SIM_COLUMNS: Sequence[str] = ("n", "N", "scheme", "noise", "trials", "mean_wkt", "stderr", "aware_bound", "seed")
SWEEP_COLUMNS: Sequence[str] = ("n", "N", "k_or_scheme", "instances", "trials", "mean_wkt_oblivious", "mean_wkt_variant", "ratio", "ratio_stderr",
                                "good_count", "bad_count", "seed")
PAIR_ERROR_COLUMNS: Sequence[str] = ("a", "b", "first_differing_bit", "exact_error", "empirical_error", "scaled_error", "trials")

INSTANCE_ROLE: int = 0
TRIAL_ROLE: int = 1


# *** Sorting ***************************************************************

class Sorting(CommandGroup):
    """Command group containing the sorting commands: sort-sim, alpha-star, classify, truncate-sweep and pair-error."""

    def register(self, subparsers: Any, common: argparse.ArgumentParser) -> None:
        """Add the sorting subcommands.

        Args:
            subparsers (Any): The harness's subcommand collection.
            common (argparse.ArgumentParser): The parent parser holding the common flags.
        """
        simulate: argparse.ArgumentParser = self.add_command(subparsers, common, "sort-sim", "Estimate the expected weighted Kendall τ of one scheme.",
                                                             self.cmd_sort_sim)
        _add_sort_flags(simulate)
        simulate.add_argument("--scheme", choices = SCHEMES, help = "energy scheme")
        simulate.add_argument("--k", help = "truncation parameter of the truncated scheme")
        simulate.add_argument("--instance", help = "instance JSON file; a random instance is drawn when omitted")

        alpha_star: argparse.ArgumentParser = self.add_command(subparsers, common, "alpha-star", "Estimate α*, the oblivious/aware wkt ratio.",
                                                               self.cmd_alpha_star)
        _add_sort_flags(alpha_star)
        alpha_star.add_argument("--instances", type = int, help = "instances per n")
        alpha_star.add_argument("--c", type = float, help = "constant of the good-input threshold")

        classify: argparse.ArgumentParser = self.add_command(subparsers, common, "classify", "Count good and bad inputs.", self.cmd_classify)
        _add_sort_flags(classify)
        classify.add_argument("--instances", type = int, help = "sampled instances per n")
        classify.add_argument("--c", type = float, help = "constant of the good-input threshold")

        sweep: argparse.ArgumentParser = self.add_command(subparsers, common, "truncate-sweep", "Compare truncated schemes with the oblivious one.",
                                                          self.cmd_truncate_sweep)
        _add_sort_flags(sweep)
        sweep.add_argument("--k", help = "comma-separated truncation parameters")
        sweep.add_argument("--instances", type = int, help = "instances per row")
        sweep.add_argument("--c", type = float, help = "constant of the good-input threshold")

        pair: argparse.ArgumentParser = self.add_command(subparsers, common, "pair-error", "Estimate the misordering probability of pairs.",
                                                         self.cmd_pair_error)
        pair.add_argument("--n", help = "element bit-width")
        pair.add_argument("--scheme", choices = SCHEMES, help = "energy scheme")
        pair.add_argument("--k", help = "truncation parameter of the truncated scheme")
        pair.add_argument("--a", type = int, help = "first value; random pairs are drawn when --a and --b are omitted")
        pair.add_argument("--b", type = int, help = "second value")
        pair.add_argument("--instances", type = int, help = "number of random pairs")
        pair.add_argument("--trials", type = int, help = "comparisons per pair")

    # *** sort-sim **************************************************************

    def cmd_sort_sim(self, experiment: ExperimentConfig) -> Report:
        """Run noisy quicksort repeatedly on one instance and report its mean weighted Kendall τ.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: A single row.
        """
        seed: int = seed_of(experiment)
        instance: SortInstance
        if experiment.instance is not None:
            instance = load_instance(pathlib.Path(experiment.instance))
        else:
            instance = generate_instance(single(experiment, "n"), experiment.N, substream(seed, INSTANCE_ROLE))
        scheme: EnergyScheme = _scheme(experiment, instance.n)
        estimate: WktEstimate = expected_wkt(instance, scheme, experiment.trials, derive_seed(seed, TRIAL_ROLE), NoiseMode(experiment.noise),
                                             experiment.threads)
        aware_bound: float = bounds.aware_wkt_bound(instance.N) if instance.N >= 2 else 0.0
        result: Dict[str, Any] = {"instance": instance.to_json(), "scheme": scheme.to_json(), "estimate": estimate.to_json(), "aware_bound": aware_bound}
        row: Tuple[Any, ...] = (instance.n, instance.N, scheme.label, experiment.noise, experiment.trials, estimate.mean, estimate.stderr, aware_bound, seed)
        return Report(experiment.command, seed, experiment.echo(), SORT_SIM_COLUMNS, [row], result)

    # *** alpha-star ************************************************************

    def cmd_alpha_star(self, experiment: ExperimentConfig) -> Report:
        """Estimate α* for every configured n.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One sweep row per n.
        """
        seed: int = seed_of(experiment)
        estimates: List[RatioEstimate] = [alpha_star_estimate(n, experiment.N, experiment.instances, experiment.trials, seed, experiment.c,
                                                              noise_mode = NoiseMode(experiment.noise), threads = experiment.threads)
                                          for n in experiment.n]
        return _sweep_report(experiment, seed, estimates, ["aware"] * len(estimates))

    # *** classify **************************************************************

    def cmd_classify(self, experiment: ExperimentConfig) -> Report:
        """Classify sampled inputs as good or bad for every configured n.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One sweep row per n.
        """
        seed: int = seed_of(experiment)
        estimates: List[RatioEstimate] = [classify_inputs(n, experiment.N, experiment.instances, experiment.c, experiment.trials, seed,
                                                          noise_mode = NoiseMode(experiment.noise), threads = experiment.threads)
                                          for n in experiment.n]
        return _sweep_report(experiment, seed, estimates, ["aware"] * len(estimates))

    # *** truncate-sweep ********************************************************

    def cmd_truncate_sweep(self, experiment: ExperimentConfig) -> Report:
        """Compare the oblivious scheme with truncated schemes for every configured k and n.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One sweep row per (k, n).
        """
        seed: int = seed_of(experiment)
        if not experiment.k:
            raise ConfigurationError("k", "truncate-sweep needs at least one truncation parameter")
        _check_truncations(experiment.n, experiment.k)
        estimates: List[RatioEstimate] = truncation_sweep(experiment.n, experiment.N, experiment.k, experiment.instances, experiment.trials, seed,
                                                          experiment.c, NoiseMode(experiment.noise), experiment.threads)
        return _sweep_report(experiment, seed, estimates, [k for k in experiment.k for _ in experiment.n])

    # *** pair-error ************************************************************

    def cmd_pair_error(self, experiment: ExperimentConfig) -> Report:
        """Compare the exact and simulated misordering probability of given or random pairs.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per pair.
        """
        seed: int = seed_of(experiment)
        n: int = single(experiment, "n")
        scheme: EnergyScheme = _scheme(experiment, n)
        pairs: List[Tuple[int, int]]
        if experiment.a is not None or experiment.b is not None:
            if experiment.a is None or experiment.b is None:
                raise ConfigurationError("a" if experiment.a is None else "b", "--a and --b must be given together")
            pair: Tuple[int, int] = (experiment.a, experiment.b)
            for name, value in zip(("a", "b"), pair):
                if value >= 1 << n:
                    raise ConfigurationError(name, f"{value} doesn't fit in n = {n} bits")
            if pair[0] == pair[1]:
                raise ConfigurationError("b", "the pair must hold two distinct values")
            pairs = [pair]
        else:
            pairs = [_random_pair(n, seed, index) for index in range(experiment.instances)]

        rows: List[Sequence[Any]] = []
        entries: List[Dict[str, Any]] = []
        for index, (a, b) in enumerate(pairs):
            exact: float = comparison_error_probability(a, b, scheme)
            estimate: PairErrorEstimate = pair_error_estimate(a, b, scheme, experiment.trials, derive_seed(seed, TRIAL_ROLE + index),
                                                              experiment.threads)
            rows.append((a, b, first_differing_bit(a, b), exact, estimate.error, estimate.scaled_error, estimate.trials))
            entries.append({**estimate.to_json(), "exact_error": exact, "first_differing_bit": first_differing_bit(a, b),
                            "bound": bounds.pair_error_bound(a, b)})
        worst: float = max(entry["scaled_error"] for entry in entries)
        _log.info("Largest scaled pair error under %s: %.6g", scheme.label, worst)
        result: Dict[str, Any] = {"scheme": scheme.to_json(), "pairs": entries, "max_scaled_error": worst}
        return Report(experiment.command, seed, experiment.echo(), PAIR_ERROR_COLUMNS, rows, result)


# *** _add_sort_flags *******************************************************

def _add_sort_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", help = "comma-separated element bit-widths")
    parser.add_argument("--N", type = int, help = "array length")
    parser.add_argument("--trials", type = int, help = "quicksort runs per instance and scheme")
    parser.add_argument("--noise", choices = NOISE_MODES, help = "read elements per comparison or once per sort")


def _scheme(experiment: ExperimentConfig, n: int) -> EnergyScheme:
    k: Any = experiment.k[0] if experiment.k else None
    try:
        return EnergyScheme.named(experiment.scheme, n, k)
    except InvalidSchemeError as exception:
        raise ConfigurationError("k", str(exception)) from exception


def _check_truncations(n_values: Sequence[int], k_values: Sequence[int]) -> None:
    for k in k_values:
        for n in n_values:
            if not 1 <= k <= n:
                raise ConfigurationError("k", f"truncation parameter k = {k} must lie in [1, n = {n}]")


def _random_pair(n: int, seed: int, index: int) -> Tuple[int, int]:
    """Return the distinct pair drawn from substream ``index`` of the instance seed."""
    drawn: SortInstance = generate_instance(n, 2, substream(derive_seed(seed, INSTANCE_ROLE), index))
    return drawn.elements[0], drawn.elements[1]


def _sweep_report(experiment: ExperimentConfig, seed: int, estimates: List[RatioEstimate], variants: List[Any]) -> Report:
    """Tabulate ratio estimates; each variant is the k of a truncation sweep or the name of the compared scheme."""
    rows: List[Sequence[Any]] = []
    for estimate, variant in zip(estimates, variants):
        rows.append((estimate.n, estimate.N, variant, estimate.instances, estimate.trials, estimate.mean_numerator, estimate.mean_denominator,
                     estimate.ratio, estimate.stderr, estimate.good_count, estimate.bad_count, estimate.seed))
    return Report(experiment.command, seed, experiment.echo(), SWEEP_COLUMNS, rows, [estimate.to_json() for estimate in estimates])
