"""Fourier analysis of Boolean functions and low-degree learning."""
