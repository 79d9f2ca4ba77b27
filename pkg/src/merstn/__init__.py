"""Nonlinear-dynamics feature pipeline for inside/outside-STN classification
of microelectrode recordings, with a statistically validated model-selection
protocol and a surrogate-corpus generator for desk-scale experiments."""

__version__ = "0.1.0"
