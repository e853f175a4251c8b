"""A library and experiment harness for energy-aware inexact computing."""

__version__: str = "1.0.0"
