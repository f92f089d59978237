"""Verdict records for diagram checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Counterexample:
    """Concrete data on which the two sides of a diagram differ."""

    diagram: str
    left: Any
    right: Any
    context: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        out = {"diagram": self.diagram, "left": repr(self.left), "right": repr(self.right)}
        out.update({key: repr(value) for key, value in self.context.items()})
        return out


@dataclass(frozen=True)
class MorphismVerdict:
    """Per-diagram results for one instance; a false verdict carries a counterexample."""

    instance: str
    checks: dict[str, bool]
    counterexample: Counterexample | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


class VerdictBuilder:
    """Collects diagram comparisons and keeps the first disagreement."""

    def __init__(self, instance: str):
        self.instance = instance
        self.checks: dict[str, bool] = {}
        self.counterexample: Counterexample | None = None

    def compare(self, diagram: str, left: Any, right: Any, **context: Any) -> bool:
        same = left == right
        self.checks[diagram] = self.checks.get(diagram, True) and same
        if not same and self.counterexample is None:
            self.counterexample = Counterexample(diagram, left, right, context)
        return same

    def build(self) -> MorphismVerdict:
        return MorphismVerdict(self.instance, dict(self.checks), self.counterexample)


@dataclass(frozen=True)
class HAlgebraVerdict:
    """Outcome of checking a structure map ``HA → A``.

    The first three flags are the algebra laws, the rest describe ``A``
    as an ordered space.
    """

    continuous: bool
    unit: bool
    algebra_square: bool
    join_map: bool
    t0: bool
    sober: bool
    complete_lattice: bool
    binary_join_continuous: bool
    closed_join_continuous: bool

    @property
    def is_algebra(self) -> bool:
        return self.continuous and self.unit and self.algebra_square

    @property
    def is_topological_lattice(self) -> bool:
        return (
            self.t0
            and self.sober
            and self.complete_lattice
            and self.binary_join_continuous
            and self.closed_join_continuous
        )

    @property
    def consistent(self) -> bool:
        return self.is_algebra == (self.join_map and self.is_topological_lattice)
