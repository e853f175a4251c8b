"""Energy vectors, flip probabilities, total impact and energy allocations."""
