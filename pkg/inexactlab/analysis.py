"""Provides the command group for influence profiles, energy allocations and the α ratio of Boolean functions."""
import argparse
import logging
from typing import Any, Dict, List, Optional, Sequence

# First party imports
from inexactlab.boolean.function import FunctionDescriptor, is_symmetric, output_range
from inexactlab.boolean.influence import InfluenceMethod, InfluenceProfile, ZeroInfluenceError, beta_profile, expected_influence
from inexactlab.command import CommandGroup, function_of, seed_of
from inexactlab.config import MODES, ExperimentConfig
from inexactlab.energy.allocation import (AllocationResult, AlphaReport, ZeroImpactError, alpha_closed_form, alpha_report, am_gm_bound,
                                          oblivious_allocation, optimal_allocation)
from inexactlab.report import Report

_log: logging.Logger = logging.getLogger(__name__)

INFLUENCE_COLUMNS: Sequence[str] = ("index", "mean", "stderr")
ALLOCATE_COLUMNS: Sequence[str] = ("index", "influence", "energy_optimal", "p_optimal", "energy_oblivious", "p_oblivious", "alpha", "clamped")
ALPHA_SWEEP_COLUMNS: Sequence[str] = ("n", "alpha", "alpha_closed_form", "clamped")


# *** Analysis **************************************************************

class Analysis(CommandGroup):
    """Command group containing the commands which analyze Boolean functions: influence, allocate and alpha-sweep."""

    def register(self, subparsers: Any, common: argparse.ArgumentParser) -> None:
        """Add the influence, allocate and alpha-sweep subcommands.

        Args:
            subparsers (Any): The harness's subcommand collection.
            common (argparse.ArgumentParser): The parent parser holding the common flags.
        """
        influence: argparse.ArgumentParser = self.add_command(subparsers, common, "influence", "Compute the expected influence of every bit.", self.cmd_influence)
        _add_function_flags(influence)

        allocate: argparse.ArgumentParser = self.add_command(subparsers, common, "allocate", "Compare the oblivious and optimal energy allocations.",
                                                             self.cmd_allocate)
        _add_function_flags(allocate)
        allocate.add_argument("--budget", type = float, help = "energy budget; n(n+1)/2 when omitted")

        sweep: argparse.ArgumentParser = self.add_command(subparsers, common, "alpha-sweep", "Tabulate α against its closed form over several n.",
                                                          self.cmd_alpha_sweep)
        sweep.add_argument("--fn", help = "built-in function name")
        sweep.add_argument("--table", help = "truth-table JSON file")
        sweep.add_argument("--n", help = "comma-separated arities")
        sweep.add_argument("--budget", type = float, help = "energy budget; n(n+1)/2 when omitted")

    # *** influence *************************************************************

    def cmd_influence(self, experiment: ExperimentConfig) -> Report:
        """Compute the influence profile of a function.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per bit.
        """
        f: FunctionDescriptor = function_of(experiment)
        profile: InfluenceProfile = _profile(f, experiment)
        result: Dict[str, Any] = {"function": f.name, "profile": profile.to_json(), "betas": _betas(profile)}
        if f.arity <= 20:
            result["symmetric"] = is_symmetric(f)
            result["output_range"] = output_range(f)
        rows: List[Sequence[Any]] = [(index, mean, stderr) for index, (mean, stderr) in enumerate(zip(profile.means, profile.stderrs), start = 1)]
        return Report(experiment.command, experiment.seed, experiment.echo(), INFLUENCE_COLUMNS, rows, result)

    # *** allocate **************************************************************

    def cmd_allocate(self, experiment: ExperimentConfig) -> Report:
        """Compute the oblivious and influence-aware optimal allocations of a budget and their α ratio.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per bit.
        """
        f: FunctionDescriptor = function_of(experiment)
        profile: InfluenceProfile = _profile(f, experiment)
        budget: float = _budget(experiment, f.arity)
        alpha: Optional[float] = None
        try:
            report: AlphaReport = alpha_report(profile, budget)
            alpha = report.alpha
            optimal: AllocationResult = report.optimal
            oblivious: AllocationResult = report.oblivious
        except ZeroImpactError as exception:
            _log.warning("%s", exception)
            optimal = optimal_allocation(profile, budget)
            oblivious = oblivious_allocation(profile, budget)

        result: Dict[str, Any] = {
            "function": f.name,
            "profile": profile.to_json(),
            "alpha": alpha,
            "am_gm_bound": am_gm_bound(profile, budget),
            "optimal": optimal.to_json(),
            "oblivious": oblivious.to_json(),
        }
        rows: List[Sequence[Any]] = []
        for index in range(f.arity):
            rows.append((index + 1, profile.means[index], optimal.energy.entries[index], optimal.probs.entries[index],
                         oblivious.energy.entries[index], oblivious.probs.entries[index], alpha, optimal.clamped))
        return Report(experiment.command, experiment.seed, experiment.echo(), ALLOCATE_COLUMNS, rows, result)

    # *** alpha-sweep ***********************************************************

    def cmd_alpha_sweep(self, experiment: ExperimentConfig) -> Report:
        """Compute α from allocations for each n, next to the constant-β closed form where it applies.

        Args:
            experiment (ExperimentConfig): The configuration.

        Returns:
            Report: One row per n.
        """
        functions: List[FunctionDescriptor] = [function_of(experiment)] if experiment.table else [function_of(experiment, n) for n in experiment.n]
        rows: List[Sequence[Any]] = []
        entries: List[Dict[str, Any]] = []
        for f in functions:
            profile: InfluenceProfile = expected_influence(f)
            report: AlphaReport = alpha_report(profile, _budget(experiment, f.arity))
            closed_form: Optional[float] = _closed_form(profile)
            rows.append((f.arity, report.alpha, closed_form, report.clamped))
            entries.append({"n": f.arity, "alpha": report.alpha, "alpha_closed_form": closed_form, "clamped": report.clamped})
        return Report(experiment.command, experiment.seed, experiment.echo(), ALPHA_SWEEP_COLUMNS, rows, entries)


# *** _add_function_flags ***************************************************

def _add_function_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fn", help = "built-in function: be, xor, or, and, majority, dictator, constant or threshold:t")
    parser.add_argument("--table", help = "truth-table JSON file, used instead of --fn")
    parser.add_argument("--n", help = "arity")
    parser.add_argument("--mode", choices = MODES, help = "exact enumeration or Monte Carlo sampling")
    parser.add_argument("--samples", type = int, help = "Monte Carlo sample count")


def _profile(f: FunctionDescriptor, experiment: ExperimentConfig) -> InfluenceProfile:
    method: InfluenceMethod = InfluenceMethod(experiment.mode)
    if method == InfluenceMethod.EXACT:
        return expected_influence(f)
    return expected_influence(f, method, experiment.samples, seed_of(experiment), experiment.threads)


def _budget(experiment: ExperimentConfig, n: int) -> float:
    """Return the configured budget, or n(n+1)/2 which funds the aware scheme e = (1, ..., n)."""
    return float(experiment.budget) if experiment.budget is not None else n * (n + 1) / 2


def _betas(profile: InfluenceProfile) -> Optional[Dict[str, Any]]:
    try:
        return beta_profile(profile).to_json()
    except ZeroInfluenceError:
        return None


def _closed_form(profile: InfluenceProfile) -> Optional[float]:
    """Return the constant-β closed form of α, or None when the profile has no common β."""
    try:
        common: Optional[float] = beta_profile(profile).common_beta
    except ZeroInfluenceError:
        return None
    if profile.n == 1:
        return 1.0
    if common is None or common < 1.0:
        return None
    if common == 1.0:
        return 1.0
    return alpha_closed_form(common, profile.n)
