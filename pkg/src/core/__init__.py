"""Core numerics and error types for SteerLab."""
