"""Sorting arrays stored under inexact energy schemes: noisy comparison, quicksort, weighted Kendall τ and experiments."""
