# SteerLab - steering recovery under non-Markovian damping
