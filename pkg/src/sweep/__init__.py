"""Parameter sweeps, figure presets and CSV output."""
