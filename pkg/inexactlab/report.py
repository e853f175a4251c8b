"""Writes command results as CSV or JSON reports whose bytes depend only on the configuration and seed."""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO

# Third party imports
import numpy as np

# First party imports
from inexactlab import __version__


# *** Report ****************************************************************

@dataclass(frozen = True)
class Report:
    """The result of one command, ready to be written in either format.

    Attributes:
        command (str): The command name.
        seed (Optional[int]): The seed used, None for commands that draw no randomness.
        config (Dict[str, Any]): The configuration echo.
        columns (Sequence[str]): The CSV header.
        rows (List[Sequence[Any]]): The CSV rows.
        result (Any): The JSON result, usually richer than the rows.
    """

    command: str
    seed: Optional[int]
    config: Dict[str, Any]
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory = list)
    result: Any = None

    def to_csv(self) -> str:
        """Render the report as CSV, headed by a comment line naming the version and seed."""
        buffer: io.StringIO = io.StringIO()
        buffer.write(f"# inexactlab {__version__} seed={'' if self.seed is None else self.seed}\n")
        writer: Any = csv.writer(buffer, lineterminator = "\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(value) for value in row])
        return buffer.getvalue()

    def to_json(self) -> str:
        """Render the report as a JSON object with sorted keys and two-space indentation."""
        document: Dict[str, Any] = {
            "artifact_version": __version__,
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "result": self.result,
        }
        return json.dumps(_finite(document), sort_keys = True, indent = 2, allow_nan = False) + "\n"

    def render(self, output_format: str) -> str:
        """Render the report in the given format, ``csv`` or ``json``."""
        return self.to_json() if output_format == "json" else self.to_csv()


# *** write_report **********************************************************

def write_report(report: Report, output_format: str, stream: TextIO, path: Optional[str] = None) -> None:
    """Write a report to a file, or to the given stream when no path is set.

    Args:
        report (Report): The report.
        output_format (str): ``csv`` or ``json``.
        stream (TextIO): The stream used when no path is given, normally stdout.
        path (Optional[str], optional): The output file. Defaults to None.
    """
    text: str = report.render(output_format)
    if path is None:
        stream.write(text)
        stream.flush()
        return
    with open(path, "w", encoding = "utf-8", newline = "") as output_file:
        output_file.write(text)


def _cell(value: Any) -> str:
    """Format one CSV cell; floats use repr so they round-trip."""
    if isinstance(value, np.generic):
        value = value.item()
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def _finite(value: Any) -> Any:
    """Replace infinite and NaN floats, which JSON can't express, with null, and unwrap NumPy scalars."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    return value
