"""Provides configuration access, the resolved configuration of a single experiment run, and logging setup."""
import copy
import dataclasses
import json
import logging
import math
import os
import pathlib
import sys
from datetime import datetime
from logging import handlers
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

# Third party imports
from dotenv import load_dotenv

# First party imports
from inexactlab.boolean.bitvector import MAX_WIDTH
from inexactlab.error import ConfigurationError

_PACKAGED_CONFIG: pathlib.Path = pathlib.Path(__file__).parent.joinpath("config.json")

FORMATS: Tuple[str, ...] = ("csv", "json")
MODES: Tuple[str, ...] = ("exact", "monte-carlo")
NOISE_MODES: Tuple[str, ...] = ("fresh", "per-element")
SCHEMES: Tuple[str, ...] = ("aware", "oblivious", "truncated")


# *** Configuration *********************************************************

class Configuration():
    """Configuration dictionary read from the packaged config.json, with one section of defaults per command."""

    def __init__(self, path: pathlib.Path = _PACKAGED_CONFIG) -> None:
        """Initialize the Configuration by reading a config.json file and loading it into a dict.

        Args:
            path (pathlib.Path, optional): The configuration file. Defaults to the packaged config.json.
        """
        with open(path, "r", encoding = "utf-8") as file:
            self._config: Dict[str, Any] = json.load(file)

    def __getitem__(self, key: str) -> Any:
        """Retrieve an item from the configuration dictionary based on the provided key.

        Args:
            key (str): The key to retrieve from the configuration dictionary.

        Returns:
            Any: The value in the configuration dictionary.
        """
        return self._config[key]

    def __iter__(self) -> Iterator:
        """Return an iterator over the section names of the configuration.

        Returns:
            Iterator: An iterator of the configuration dictionary.
        """
        return iter(self._config)

    def section(self, name: str) -> Dict[str, Any]:
        """Return a copy of the defaults of the section with the given name, empty if there is none.

        Args:
            name (str): The section name, usually a command name.

        Returns:
            Dict[str, Any]: The section's key/value pairs.
        """
        return copy.deepcopy(self._config.get(name, {}))

    def overlay(self, path: pathlib.Path) -> "Configuration":
        """Return a new Configuration with the sections of a user config file laid over this one.

        Args:
            path (pathlib.Path): The user config file.

        Raises:
            ConfigurationError: Raised if the file is unreadable or names an unknown section or key.

        Returns:
            Configuration: The combined configuration.
        """
        try:
            with open(path, "r", encoding = "utf-8") as file:
                user: Any = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError("config", f"cannot read {path}: {error}") from error
        if not isinstance(user, dict):
            raise ConfigurationError("config", f"{path} must hold a JSON object of sections")

        combined: Configuration = copy.copy(self)
        combined._config = copy.deepcopy(self._config)
        for section, values in user.items():
            if section not in combined._config:
                raise ConfigurationError(section, f"unknown section in {path}")
            if not isinstance(values, dict):
                raise ConfigurationError(section, "a section must be a JSON object")
            for key, value in values.items():
                if key not in combined._config[section]:
                    raise ConfigurationError(f"{section}.{key}", f"unknown key in {path}")
                combined._config[section][key] = value
        return combined


# *** ExperimentConfig ******************************************************

@dataclasses.dataclass(frozen = True)
class ExperimentConfig:  # pylint: disable=too-many-instance-attributes
    """The fully resolved configuration of one command run.

    Values come from command-line flags, then the user config file, then the packaged defaults. Field names match the
    configuration keys with dashes replaced by underscores.
    """

    command: str
    seed: Optional[int] = None
    format: str = "csv"
    output: Optional[str] = None
    threads: int = 1
    config: Optional[str] = None
    fn: Optional[str] = None
    table: Optional[str] = None
    n: Tuple[int, ...] = ()
    mode: str = "exact"
    samples: int = 100000
    budget: Optional[float] = None
    N: int = 32  # pylint: disable=invalid-name
    scheme: str = "aware"
    trials: int = 1000
    instances: int = 1
    k: Tuple[int, ...] = ()
    c: float = 1.0
    epsilon: float = 0.1
    inf_bound: Optional[float] = None
    beta1: Optional[float] = None
    m: Tuple[int, ...] = ()
    holdout: int = 1000
    noise: str = "fresh"
    a: Optional[int] = None
    b: Optional[int] = None
    instance: Optional[str] = None

    @classmethod
    def resolve(cls, command: str, configuration: Configuration, flags: Mapping[str, Any]) -> "ExperimentConfig":
        """Combine the packaged and user defaults of a command with its command-line flags, then validate.

        Args:
            command (str): The command name.
            configuration (Configuration): The configuration, with any user file already overlaid.
            flags (Mapping[str, Any]): The parsed flags; None means not given.

        Raises:
            ConfigurationError: Raised if a value is malformed.

        Returns:
            ExperimentConfig: The validated configuration.
        """
        names: Dict[str, str] = {_key(field.name): field.name for field in dataclasses.fields(cls)}
        values: Dict[str, Any] = {}
        for layer in (configuration.section("harness"), configuration.section(command)):
            for key, value in layer.items():
                if key in names:
                    values[names[key]] = value
        for name, value in flags.items():
            if value is not None and name in names.values():
                values[name] = value

        for name in ("n", "k", "m"):
            if name in values:
                values[name] = _int_tuple(name, values[name])
        try:
            resolved: ExperimentConfig = cls(command = command, **{name: value for name, value in values.items() if name != "command"})
        except TypeError as error:
            raise ConfigurationError(command, str(error)) from error
        resolved.validate()
        return resolved

    def validate(self) -> None:
        """Check every field against the range the commands accept.

        Raises:
            ConfigurationError: Raised naming the first offending field.
        """
        _require(self.format in FORMATS, "format", f"must be one of {', '.join(FORMATS)}")
        _require(self.mode in MODES, "mode", f"must be one of {', '.join(MODES)}")
        _require(self.noise in NOISE_MODES, "noise", f"must be one of {', '.join(NOISE_MODES)}")
        _require(self.scheme in SCHEMES, "scheme", f"must be one of {', '.join(SCHEMES)}")
        _require(self.seed is None or (_is_int(self.seed) and 0 <= self.seed < 1 << 64), "seed", "must be an integer in [0, 2^64)")
        _require(_is_int(self.threads) and self.threads >= 1, "threads", "must be a positive integer")
        _require(all(1 <= n <= MAX_WIDTH for n in self.n), "n", f"every value must lie in [1, {MAX_WIDTH}]")
        _require(all(k >= 0 for k in self.k), "k", "every value must be non-negative")
        _require(all(m >= 1 for m in self.m), "m", "every value must be positive")
        for name in ("samples", "trials", "instances", "holdout"):
            value: Any = getattr(self, name)
            _require(_is_int(value) and value >= 1, name, "must be a positive integer")
        _require(_is_int(self.N) and self.N >= 2, "N", "must be an integer of at least 2")
        _require(self.budget is None or _is_number(self.budget) and self.budget >= 0, "budget", "must be a non-negative number")
        _require(_is_number(self.c) and self.c > 0, "c", "must be a positive number")
        _require(_is_number(self.epsilon) and self.epsilon > 0, "epsilon", "must be a positive number")
        _require(self.inf_bound is None or _is_number(self.inf_bound) and self.inf_bound > 0, "inf-bound", "must be a positive number")
        _require(self.beta1 is None or _is_number(self.beta1) and self.beta1 > 1, "beta1", "must be a number greater than 1")
        for name in ("a", "b"):
            value = getattr(self, name)
            _require(value is None or _is_int(value) and value >= 0, name, "must be a non-negative integer")

    def echo(self) -> Dict[str, Any]:
        """Return the configuration block written into JSON reports, which leaves out settings that don't change results."""
        hidden: Tuple[str, ...] = ("threads", "output", "config", "format", "command")
        echoed: Dict[str, Any] = {}
        for field in dataclasses.fields(self):
            if field.name in hidden:
                continue
            value: Any = getattr(self, field.name)
            echoed[_key(field.name)] = list(value) if isinstance(value, tuple) else value
        return echoed


# *** setup_logging *********************************************************

def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> None:
    """Set up console logging on stderr and, when a log directory is configured, rotating file logging.

    Args:
        level (Optional[str], optional): The log level name. Defaults to INEXACTLAB_LOG_LEVEL, then the packaged harness log-level.
        log_dir (Optional[str], optional): The log directory. Defaults to INEXACTLAB_LOG_DIR, if set.
    """
    log_level: str = (level or os.environ.get("INEXACTLAB_LOG_LEVEL") or config.section("harness").get("log-level", "INFO")).upper()
    log_format: logging.Formatter = logging.Formatter("%(asctime)s [%(name)s:%(levelname)s] %(message)s")
    logger: logging.Logger = logging.getLogger()
    logger.setLevel(log_level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    # stdout carries reports
    log_console_handler: logging.StreamHandler = logging.StreamHandler(sys.stderr)
    log_console_handler.setFormatter(log_format)
    logger.addHandler(log_console_handler)

    directory: Optional[str] = log_dir or os.environ.get("INEXACTLAB_LOG_DIR")
    if directory:
        pathlib.Path(directory).mkdir(parents = True, exist_ok = True)
        log_file_name: pathlib.Path = pathlib.Path(directory).joinpath("{:%y%m%d%H%M%S}.inexactlab.log".format(datetime.now()))
        log_file_handler: handlers.RotatingFileHandler = handlers.RotatingFileHandler(filename = log_file_name, maxBytes = 10485760, backupCount = 10,
                                                                                      encoding = "utf-8", mode = "w")
        log_file_handler.setFormatter(log_format)
        logger.addHandler(log_file_handler)


def _key(name: str) -> str:
    return name.replace("_", "-")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return (_is_int(value) or isinstance(value, float)) and math.isfinite(value)


def _require(condition: bool, field: str, reason: str) -> None:
    if not condition:
        raise ConfigurationError(field, reason)


def _int_tuple(name: str, value: Any) -> Tuple[int, ...]:
    """Normalize an integer, a list of integers, or a comma-separated string to a tuple of integers."""
    items: Any = value
    if isinstance(value, str):
        items = [item.strip() for item in value.split(",") if item.strip()]
    elif not isinstance(value, (list, tuple)):
        items = [value]
    result: List[int] = []
    for item in items:
        if isinstance(item, bool) or isinstance(item, float) and not item.is_integer():
            raise ConfigurationError(_key(name), f"expected integers, got {value!r}")
        try:
            result.append(int(item))
        except (TypeError, ValueError) as error:
            raise ConfigurationError(_key(name), f"expected integers, got {value!r}") from error
    return tuple(result)


# Environment variables are loaded once on module load
load_dotenv()
config: Configuration = Configuration()
