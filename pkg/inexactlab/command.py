"""The base class of command groups and helpers shared by the commands."""
import argparse
import pathlib
from typing import Any, Callable, Optional

# First party imports
from inexactlab.boolean.function import FunctionDescriptor, TruthTableError, UnknownFunctionError, resolve_function
from inexactlab.config import ExperimentConfig
from inexactlab.error import ConfigurationError
from inexactlab.report import Report

Handler = Callable[[ExperimentConfig], Report]


# *** CommandGroup **********************************************************

class CommandGroup():
    """A collection of related commands which the harness registers as subcommands."""

    def register(self, subparsers: Any, common: argparse.ArgumentParser) -> None:
        """Add the group's subcommands to the harness's parser.

        Args:
            subparsers (Any): The harness's subcommand collection.
            common (argparse.ArgumentParser): The parent parser holding the flags every command accepts.
        """
        raise NotImplementedError

    @staticmethod
    def add_command(subparsers: Any, common: argparse.ArgumentParser, name: str,
                    description: str, handler: Handler) -> argparse.ArgumentParser:
        """Add one subcommand which runs the given handler.

        Args:
            subparsers (Any): The harness's subcommand collection.
            common (argparse.ArgumentParser): The parent parser holding the common flags.
            name (str): The subcommand name.
            description (str): The help text.
            handler (Handler): The function run with the resolved configuration.

        Returns:
            argparse.ArgumentParser: The subcommand's parser, to which command flags are added.
        """
        parser: argparse.ArgumentParser = subparsers.add_parser(name, parents = [common], help = description, description = description)
        parser.set_defaults(handler = handler)
        return parser


# *** single ****************************************************************

def single(experiment: ExperimentConfig, name: str) -> int:
    """Return the only value of a list-valued setting, for commands that don't sweep it.

    Args:
        experiment (ExperimentConfig): The configuration.
        name (str): The setting, ``n``, ``k`` or ``m``.

    Raises:
        ConfigurationError: Raised if the setting doesn't hold exactly one value.

    Returns:
        int: The value.
    """
    values: tuple = getattr(experiment, name)
    if len(values) != 1:
        raise ConfigurationError(name, f"'{experiment.command}' takes exactly one value, got {list(values)}")
    return int(values[0])


# *** function_of ***********************************************************

def function_of(experiment: ExperimentConfig, n: Optional[int] = None) -> FunctionDescriptor:
    """Resolve the function a command works on, from its truth table or built-in name.

    Args:
        experiment (ExperimentConfig): The configuration.
        n (Optional[int], optional): The arity of a built-in function. Defaults to the single configured n.

    Raises:
        ConfigurationError: Raised naming ``fn`` or ``table`` if the function can't be resolved.

    Returns:
        FunctionDescriptor: The function.
    """
    if experiment.table is not None:
        try:
            return resolve_function(None, None, pathlib.Path(experiment.table))
        except TruthTableError as exception:
            raise ConfigurationError("table", str(exception)) from exception
    arity: int = single(experiment, "n") if n is None else n
    try:
        return resolve_function(experiment.fn, arity, None)
    except UnknownFunctionError as exception:
        raise ConfigurationError("fn", str(exception)) from exception


# *** seed_of ***************************************************************

def seed_of(experiment: ExperimentConfig) -> int:
    """Return the run's seed, which the harness always fills in before a command runs."""
    if experiment.seed is None:
        raise ConfigurationError("seed", "no seed was resolved for the run")
    return experiment.seed
