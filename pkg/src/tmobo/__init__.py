"""Trajectory-based multi-objective Bayesian optimization toolkit."""

__version__ = "0.1.0"
