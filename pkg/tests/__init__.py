# Tests for SteerLab
