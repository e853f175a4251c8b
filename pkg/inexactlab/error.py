"""The root exception of the library and a collection of utility functions for reporting errors raised while running a command."""
import logging
import sys
import traceback
from typing import TextIO


# *** InexactError **********************************************************

class InexactError(Exception):
    """Base exception for every expected failure raised by the library."""


# *** ConfigurationError ****************************************************

class ConfigurationError(InexactError):
    """Exception which is raised when an experiment configuration value is missing or malformed.

    Attributes:
        field (str): The name of the offending configuration field.
        reason (str): Why the value was rejected.
    """

    def __init__(self, field: str, reason: str) -> None:
        """Initialize a ConfigurationError exception, including the offending field in the error message.

        Args:
            field (str): The name of the offending configuration field.
            reason (str): Why the value was rejected.
        """
        self.field: str = field
        self.reason: str = reason
        super().__init__(f"Invalid configuration field '{field}': {reason}")


# *** ParameterError ********************************************************

class ParameterError(InexactError):
    """Exception which is raised when a numeric argument falls outside the range an operation accepts.

    Attributes:
        name (str): The name of the argument.
        value (object): The rejected value.
    """

    def __init__(self, name: str, value: object, requirement: str) -> None:
        """Initialize a ParameterError exception.

        Args:
            name (str): The name of the argument.
            value (object): The rejected value.
            requirement (str): The condition the value must satisfy.
        """
        self.name: str = name
        self.value: object = value
        super().__init__(f"{name} = {value} is invalid: {requirement}")


# *** log_command_error *****************************************************

def log_command_error(log: logging.Logger, command: str, exception: BaseException, stream: TextIO = sys.stderr) -> None:
    """Report an exception raised by a command as a one-line diagnostic, logging the stack trace if the exception was unexpected.

    Args:
        log (logging.Logger): The logger to log errors to.
        command (str): The name of the command which raised the error.
        exception (BaseException): The exception which was raised.
        stream (TextIO, optional): Where the one-line diagnostic is written. Defaults to sys.stderr.
    """
    if isinstance(exception, InexactError):
        log.debug("Command %s failed: %s", command, exception)
        print(f"inexactlab {command}: error: {exception}", file = stream)
        return

    print(f"inexactlab {command}: unexpected error: {exception}", file = stream)
    error_message: str = f"Unhandled error in `{command}`: {exception}"
    error_traceback: str = ''.join(traceback.format_exception(type(exception), exception, exception.__traceback__))
    log_error_message(log, error_message, error_traceback)


# *** log_error_message *****************************************************

def log_error_message(log: logging.Logger, error_message: str, error_traceback: str) -> None:
    """Log the given error message and stack trace to the given logger.

    Args:
        log (logging.Logger): The logger to log errors to.
        error_message (str): The description of the error.
        error_traceback (str): The stack trace of the error.
    """
    log.error("%s\n%s", error_message, error_traceback)
