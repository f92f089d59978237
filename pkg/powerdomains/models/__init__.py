"""Immutable domain values."""

from powerdomains.models.closed import ClosedSet, HitFunctional, Hyperspace
from powerdomains.models.extended import INFINITY, ONE, ZERO, ExtNonneg
from powerdomains.models.measure import FiniteMeasure, ProbValuation
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace
from powerdomains.models.valuation import Kernel, LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.models.verdict import Counterexample, HAlgebraVerdict, MorphismVerdict

__all__ = [
    "ExtNonneg",
    "ZERO",
    "ONE",
    "INFINITY",
    "FiniteSpace",
    "ContinuousMap",
    "ProductSpace",
    "ClosedSet",
    "HitFunctional",
    "Hyperspace",
    "Valuation",
    "LowerSemiFn",
    "SimpleSecondOrder",
    "Kernel",
    "ProbValuation",
    "FiniteMeasure",
    "Counterexample",
    "MorphismVerdict",
    "HAlgebraVerdict",
]
