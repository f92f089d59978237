"""Probability valuations and finite measures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from powerdomains.core.exceptions import NegativeWeight, NotNormalized, ShapeMismatch
from powerdomains.models.extended import ONE, ExtNonneg
from powerdomains.models.space import ContinuousMap, FiniteSpace, iter_bits
from powerdomains.models.valuation import Valuation


@dataclass(frozen=True)
class ProbValuation:
    """A valuation of total mass one."""

    underlying: Valuation

    def __post_init__(self) -> None:
        if any(v.is_infinite for v in self.underlying.values):
            raise NotNormalized("probability valuation takes the value ∞")
        if self.underlying.total != ONE:
            raise NotNormalized("total mass is not 1", total=str(self.underlying.total))

    @property
    def space(self) -> FiniteSpace:
        return self.underlying.space

    def __call__(self, u: int) -> ExtNonneg:
        return self.underlying(u)


@dataclass(frozen=True)
class FiniteMeasure:
    """Point weights on a T0 space; every subset is measurable.

    ``quotient`` is set when the weights were computed on the Kolmogorov
    quotient of the original space; it maps the original space onto
    ``space``.
    """

    space: FiniteSpace
    weights: tuple[Fraction, ...]
    quotient: ContinuousMap | None = None

    def __post_init__(self) -> None:
        if len(self.weights) != self.space.size:
            raise ShapeMismatch("weights do not cover the points", size=len(self.weights))
        for i, w in enumerate(self.weights):
            if w < 0:
                raise NegativeWeight("negative point weight", point=self.space.points[i], weight=str(w))

    def measure(self, subset: int) -> Fraction:
        return sum((self.weights[i] for i in iter_bits(subset)), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def as_mapping(self) -> dict[str, str]:
        return {p: str(w) for p, w in zip(self.space.points, self.weights, strict=True)}
