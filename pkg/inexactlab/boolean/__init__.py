"""n-bit inputs, Boolean functions, their influence profiles and the noisy reader."""
