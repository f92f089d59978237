"""Finite-scale models of the hyperspace, valuation and probability monads."""

__version__ = "0.1.0"
