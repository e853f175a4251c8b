"""A single Harness class which parses the command line, runs a command and writes its report."""
import argparse
import dataclasses
import logging
import pathlib
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO

# First party imports
from inexactlab import __version__
from inexactlab.analysis import Analysis
from inexactlab.command import CommandGroup, Handler
from inexactlab.config import FORMATS, Configuration, ExperimentConfig, config
from inexactlab.error import ConfigurationError, log_command_error
from inexactlab.learning import Learning
from inexactlab.parallel import default_threads
from inexactlab.report import Report, write_report
from inexactlab.rng import draw_seed
from inexactlab.sorting import Sorting

_log: logging.Logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2


# *** Harness ***************************************************************

class Harness():
    """The inexactlab command-line front end, which registers command groups and maps failures to exit codes."""

    def __init__(self, configuration: Configuration = config, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> None:
        """Initialize the Harness by building the argument parser and registering the command groups.

        Args:
            configuration (Configuration, optional): The packaged defaults. Defaults to the module configuration.
            stdout (TextIO, optional): Where reports without an output path go. Defaults to sys.stdout.
            stderr (TextIO, optional): Where one-line diagnostics go. Defaults to sys.stderr.
        """
        self._configuration: Configuration = configuration
        self._stdout: TextIO = stdout
        self._stderr: TextIO = stderr
        self._parser: argparse.ArgumentParser = argparse.ArgumentParser(prog = "inexactlab", description = "Simulate inexact computation under energy constraints.")
        self._parser.add_argument("--version", action = "version", version = f"inexactlab {__version__}")
        self._subparsers: Any = self._parser.add_subparsers(dest = "command", metavar = "command")
        self._subparsers.required = True
        self._common: argparse.ArgumentParser = _common_parser()
        self._groups: List[CommandGroup] = []
        self._add_command_groups()

    @property
    def parser(self) -> argparse.ArgumentParser:
        """Return the argument parser."""
        return self._parser

    def add_group(self, group: CommandGroup) -> None:
        """Register a command group's subcommands.

        Args:
            group (CommandGroup): The command group.
        """
        group.register(self._subparsers, self._common)
        self._groups.append(group)

    # *** run *******************************************************************

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse the arguments, run the command and write its report.

        Args:
            argv (Optional[Sequence[str]], optional): The arguments. Defaults to sys.argv[1:].

        Returns:
            int: 0 on success, 2 for usage and configuration errors, 1 for any other failure.
        """
        try:
            arguments: argparse.Namespace = self._parser.parse_args(argv)
        except SystemExit as exit_request:
            return exit_request.code if isinstance(exit_request.code, int) else EXIT_USAGE

        command: str = arguments.command
        try:
            experiment: ExperimentConfig = self._resolve(arguments)
            handler: Handler = arguments.handler
            report: Report = handler(experiment)
            write_report(report, experiment.format, self._stdout, experiment.output)
        except ConfigurationError as exception:
            log_command_error(_log, command, exception, self._stderr)
            return EXIT_USAGE
        except Exception as exception:  # pylint: disable=broad-except
            log_command_error(_log, command, exception, self._stderr)
            return EXIT_FAILURE
        return EXIT_OK

    # *** _resolve **************************************************************

    def _resolve(self, arguments: argparse.Namespace) -> ExperimentConfig:
        """Resolve the configuration of a run, drawing and logging a seed when none was given."""
        configuration: Configuration = self._configuration
        if arguments.config is not None:
            configuration = configuration.overlay(pathlib.Path(arguments.config))
        flags: Dict[str, Any] = {name: value for name, value in vars(arguments).items() if name not in ("command", "handler")}
        if flags.get("threads") is None:
            flags["threads"] = default_threads()

        experiment: ExperimentConfig = ExperimentConfig.resolve(arguments.command, configuration, flags)
        if experiment.seed is None:
            experiment = dataclasses.replace(experiment, seed = draw_seed())
            _log.info("No seed given, using seed %d", experiment.seed)
        return experiment

    # *** _add_command_groups ***************************************************

    def _add_command_groups(self) -> None:
        """Add all command groups to the harness."""
        self.add_group(Analysis())
        self.add_group(Sorting())
        self.add_group(Learning())


# *** _common_parser ********************************************************

def _common_parser() -> argparse.ArgumentParser:
    """Return the parent parser of the flags every command accepts."""
    common: argparse.ArgumentParser = argparse.ArgumentParser(add_help = False)
    common.add_argument("--seed", type = int, help = "64-bit seed; a fresh one is drawn and reported when omitted")
    common.add_argument("--config", help = "JSON file of per-command defaults laid over the packaged ones")
    common.add_argument("--format", choices = FORMATS, help = "report format")
    common.add_argument("--output", help = "report file; stdout when omitted")
    common.add_argument("--threads", type = int, help = "worker threads; results are identical for any value")
    return common
