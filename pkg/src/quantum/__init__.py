"""Two-qubit states, channels and correlation measures."""
