"""Provides the command group for Fourier spectra and low-degree learning of Boolean functions."""
import argparse
import logging
from typing import Any, Dict, List, Sequence, Tuple

# Third party imports
import numpy as np

# First party imports
from inexactlab.boolean.function import FunctionDescriptor
from inexactlab.boolean.influence import ZeroInfluenceError, expected_influence
from inexactlab.command import CommandGroup, function_of, seed_of
from inexactlab.config import ExperimentConfig
from inexactlab.error import ConfigurationError, ParameterError
from inexactlab.fourier.learning import (LearnedHypothesis, LearningParameters, compute_k, draw_examples, estimate_coefficients, hypothesis_error,
                                         learning_parameters)
from inexactlab.fourier.spectrum import FourierSpectrum, bit_variances, concentration_check, fourier_transform, squared_influence_quarter, variance_tail
from inexactlab.report import Report
from inexactlab.rng import substream

_log: logging.Logger = logging.getLogger(__name__)

FOURIER_COLUMNS: Sequence[str] = ("mask", "degree", "coef")
LEARN_COLUMNS: Sequence[str] = ("m", "k", "train_error", "test_error", "seed")


# *** Learning **************************************************************

class Learning(CommandGroup):
    """Command group containing the fourier and learn commands."""

    def register(self, subparsers: Any, common: argparse.ArgumentParser) -> None:
        """Add the fourier and learn subcommands.

        Args:
            subparsers (Any): The harness's subcommand collection.
            common (argparse.ArgumentParser): The parent parser holding the common flags.
        """
        fourier: argparse.ArgumentParser = self.add_command(subparsers, common, "fourier", "Compute the Fourier spectrum of a function.", self.cmd_fourier)
        _add_target_flags(fourier)
        fourier.add_argument("--k", help = "comma-separated degree caps to check concentration at; every degree when omitted")
        fourier.add_argument("--epsilon", type = float, help = "concentration tolerance")

        learn: argparse.ArgumentParser = self.add_command(subparsers, common, "learn", "Learn a function from random examples with the Low-Degree algorithm.",
                                                          self.cmd_learn)
        _add_target_flags(learn)
        learn.add_argument("--k", help = "comma-separated degree caps; derived from the influence bounds when omitted")
        learn.add_argument("--m", help = "comma-separated training set sizes")
        learn.add_argument("--epsilon", type = float, help = "target error used to derive k")
        learn.add_argument("--inf-bound", type = float, help = "influence bound used to derive k instead of the function's own")
        learn.add_argument("--beta1", type = float, help = "influence ratio bound used to derive k instead of the function's own")
        learn.add_argument("--holdout", type = int, help = "fresh inputs used to measure the test error")

    # *** fourier ***************************************************************

    def cmd_fourier(self, experiment: ExperimentConfig) -> Report:
        """Compute the spectrum of a function, with its per-bit variances and degree-k concentration.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per subset.
        """
        f: FunctionDescriptor = function_of(experiment)
        spectrum: FourierSpectrum = fourier_transform(f)
        variances: np.ndarray = bit_variances(spectrum)
        quarters: np.ndarray = squared_influence_quarter(f)
        degree_caps: Sequence[int] = experiment.k if experiment.k else range(spectrum.n + 1)
        for k in degree_caps:
            if k > spectrum.n:
                raise ConfigurationError("k", f"degree cap {k} exceeds the arity {spectrum.n}")
        checks: List[Dict[str, Any]] = []
        for k in degree_caps:
            checks.append({**concentration_check(spectrum, experiment.epsilon, k).to_json(), "variance_tail": variance_tail(spectrum, k)})

        result: Dict[str, Any] = {
            "function": f.name,
            "n": spectrum.n,
            "spectrum": spectrum.to_json(),
            "parseval_mass": spectrum.parseval_mass(),
            "degree_weights": spectrum.degree_weights().tolist(),
            "variances": variances.tolist(),
            "squared_influence_quarter": quarters.tolist(),
            "concentration": checks,
        }
        rows: List[Sequence[Any]] = [(mask, bin(mask).count("1"), float(coef)) for mask, coef in enumerate(spectrum.coefficients)]
        return Report(experiment.command, experiment.seed, experiment.echo(), FOURIER_COLUMNS, rows, result)

    # *** learn *****************************************************************

    def cmd_learn(self, experiment: ExperimentConfig) -> Report:
        """Learn a function for every (m, k) pair and measure training and held-out error.

        Row r draws its training set from substream 2r of the seed and its held-out inputs from substream 2r + 1.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per (m, k), m outermost.
        """
        seed: int = seed_of(experiment)
        f: FunctionDescriptor = function_of(experiment)
        degree_caps: Tuple[int, ...] = experiment.k if experiment.k else (_derived_k(f, experiment),)

        rows: List[Sequence[Any]] = []
        entries: List[Dict[str, Any]] = []
        row_index: int = 0
        for m in experiment.m:
            for k in degree_caps:
                values, labels = draw_examples(f, m, substream(seed, 2 * row_index))
                h: LearnedHypothesis = estimate_coefficients(values, labels, f.arity, k, experiment.threads)
                train_error: float = float(np.mean(h.predict(values) != labels))
                test_error: float = hypothesis_error(h, f, experiment.holdout, substream(seed, 2 * row_index + 1))
                _log.info("Learned %s with m = %d, k = %d: train error %.4f, test error %.4f", f.name, m, k, train_error, test_error)
                rows.append((m, k, train_error, test_error, seed))
                entries.append({"m": m, "k": k, "train_error": train_error, "test_error": test_error, "hypothesis": h.to_json()})
                row_index += 1
        return Report(experiment.command, seed, experiment.echo(), LEARN_COLUMNS, rows, {"function": f.name, "rows": entries})


# *** _add_target_flags *****************************************************

def _add_target_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fn", help = "built-in function name")
    parser.add_argument("--table", help = "truth-table JSON file, used instead of --fn")
    parser.add_argument("--n", help = "arity")


def _derived_k(f: FunctionDescriptor, experiment: ExperimentConfig) -> int:
    """Return the degree cap implied by the influence bounds, taking any missing bound from the function's exact profile."""
    inf_bound: Any = experiment.inf_bound
    beta1: Any = experiment.beta1
    if inf_bound is None or beta1 is None:
        try:
            parameters: LearningParameters = learning_parameters(expected_influence(f))
        except (ParameterError, ZeroInfluenceError) as exception:
            raise ConfigurationError("k", f"can't derive a degree cap for {f.name}: {exception}") from exception
        inf_bound = parameters.inf_bound if inf_bound is None else inf_bound
        beta1 = parameters.beta1 if beta1 is None else beta1
    if not beta1 > 1.0:
        raise ConfigurationError("beta1", f"the influences of {f.name} grow by at most {beta1:.6g} per bit; give --beta1 or --k")
    k: int = compute_k(float(inf_bound), float(beta1), experiment.epsilon)
    if k > f.arity:
        _log.warning("Derived degree cap %d exceeds the arity %d, learning every coefficient instead", k, f.arity)
        k = f.arity
    _log.info("Using degree cap k = %d from influence bound %.6g and β1 = %.6g", k, inf_bound, beta1)
    return k
