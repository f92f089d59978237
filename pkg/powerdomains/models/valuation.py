"""Valuations, lower semicontinuous functions, molecular second-order valuations, kernels."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from powerdomains.core.exceptions import (
    Anomaly,
    InvalidSecondOrder,
    NotAKernel,
    NotLowerSemicontinuous,
    NotOpen,
    ShapeMismatch,
)
from powerdomains.models.extended import ZERO, ExtNonneg, Number
from powerdomains.models.space import FiniteSpace, mask_of


@dataclass(frozen=True)
class Valuation:
    """Values on the opens of ``space``, aligned with ``space.opens``.

    The constructor only checks the shape; ``validate_valuation`` checks
    the axioms of untrusted tables.
    """

    space: FiniteSpace
    values: tuple[ExtNonneg, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.space.opens):
            raise ShapeMismatch(
                "valuation table does not cover the opens",
                size=len(self.values),
                opens=len(self.space.opens),
            )

    @classmethod
    def zero(cls, space: FiniteSpace) -> Valuation:
        return cls(space, tuple(ZERO for _ in space.opens))

    def __call__(self, u: int) -> ExtNonneg:
        try:
            return self.values[self.space.open_position[u]]
        except KeyError:
            raise NotOpen("valuation evaluated on a non-open set", subset=self.space.label(u)) from None

    @property
    def total(self) -> ExtNonneg:
        return self(self.space.full)

    def __add__(self, other: Valuation) -> Valuation:
        if other.space != self.space:
            raise ShapeMismatch("valuations live on different spaces")
        return Valuation(self.space, tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def scaled(self, factor: Number) -> Valuation:
        return Valuation(self.space, tuple(v * factor for v in self.values))

    def __le__(self, other: Valuation) -> bool:
        """Pointwise order on opens."""
        if other.space != self.space:
            raise ShapeMismatch("valuations live on different spaces")
        return all(a <= b for a, b in zip(self.values, other.values, strict=True))

    def as_table(self) -> dict[str, str]:
        return {self.space.label(u): str(v) for u, v in zip(self.space.opens, self.values, strict=True)}


@dataclass(frozen=True)
class LowerSemiFn:
    """A ``[0, ∞]``-valued function whose strict upper level sets are open."""

    space: FiniteSpace
    values: tuple[ExtNonneg, ...]

    def __post_init__(self) -> None:
        space = self.space
        if len(self.values) != space.size:
            raise ShapeMismatch("function does not cover the points", size=len(self.values))
        monotone = True
        witness: tuple[int, int] | None = None
        for i in range(space.size):
            for j in range(space.size):
                if space.le(i, j) and not self.values[i] <= self.values[j]:
                    monotone = False
                    witness = witness or (i, j)
        levels_open = all(space.is_open(self.above(r)) for r in set(self.values))
        if monotone != levels_open:
            raise Anomaly("monotonicity and open level sets disagree")
        if not monotone:
            assert witness is not None
            i, j = witness
            raise NotLowerSemicontinuous(
                "function decreases along the specialization order",
                below=space.points[i],
                above=space.points[j],
            )

    @classmethod
    def of(cls, space: FiniteSpace, values: Iterable[Number | str]) -> LowerSemiFn:
        return cls(space, tuple(ExtNonneg(v) for v in values))

    @classmethod
    def indicator(cls, space: FiniteSpace, u: int) -> LowerSemiFn:
        return cls(space, tuple(ExtNonneg(1 if (u >> i) & 1 else 0) for i in range(space.size)))

    def __call__(self, i: int) -> ExtNonneg:
        return self.values[i]

    def above(self, threshold: ExtNonneg) -> int:
        """``{x : g(x) > threshold}``."""
        return mask_of(i for i, v in enumerate(self.values) if v > threshold)

    def at_least(self, threshold: ExtNonneg) -> int:
        return mask_of(i for i, v in enumerate(self.values) if v >= threshold)


@dataclass(frozen=True)
class SimpleSecondOrder:
    """A molecular element ``Σ cⱼ δ_{νⱼ}`` of ``VVX``."""

    space: FiniteSpace
    atoms: tuple[tuple[ExtNonneg, Valuation], ...]

    def __post_init__(self) -> None:
        for weight, inner in self.atoms:
            if weight.is_zero:
                raise InvalidSecondOrder("atom weight must be positive")
            if inner.space != self.space:
                raise InvalidSecondOrder("atoms live on different spaces")

    @classmethod
    def of(cls, space: FiniteSpace, atoms: Iterable[tuple[Number | str, Valuation]]) -> SimpleSecondOrder:
        return cls(space, tuple((ExtNonneg(w), v) for w, v in atoms))

    @classmethod
    def dirac(cls, nu: Valuation) -> SimpleSecondOrder:
        return cls(nu.space, ((ExtNonneg(1), nu),))


@dataclass(frozen=True)
class Kernel:
    """A continuous map ``source → V(target)``, i.e. a Kleisli morphism of V."""

    source: FiniteSpace
    target: FiniteSpace
    table: tuple[Valuation, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.source.size:
            raise ShapeMismatch("kernel does not cover the source points", size=len(self.table))
        for nu in self.table:
            if nu.space != self.target:
                raise ShapeMismatch("kernel value lives on another space")
        for pos, u in enumerate(self.target.opens):
            for i in range(self.source.size):
                for j in range(self.source.size):
                    if self.source.le(i, j) and not self.table[i].values[pos] <= self.table[j].values[pos]:
                        raise NotAKernel(
                            "kernel is not continuous into the valuation space",
                            open=self.target.label(u),
                            below=self.source.points[i],
                            above=self.source.points[j],
                        )

    def __call__(self, i: int) -> Valuation:
        return self.table[i]


def weights_tuple(space: FiniteSpace, weights: Sequence[Number | str] | dict[str, Number | str]) -> tuple[ExtNonneg, ...]:
    """Per-point weights from a sequence or a point-keyed mapping (missing points weigh 0)."""
    if isinstance(weights, dict):
        out = [ZERO] * space.size
        for point, value in weights.items():
            out[space.index(point)] = ExtNonneg(value)
        return tuple(out)
    if len(weights) != space.size:
        raise ShapeMismatch("weights do not cover the points", size=len(weights))
    return tuple(ExtNonneg(w) for w in weights)
