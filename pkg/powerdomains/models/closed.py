"""Closed sets, hit functionals and hyperspaces."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from powerdomains.core.exceptions import NotAValidFunctional, NotClosed, ShapeMismatch
from powerdomains.models.space import FiniteSpace


@dataclass(frozen=True)
class ClosedSet:
    """A closed subset of a finite space, i.e. a down-set of its specialization."""

    space: FiniteSpace
    members: int

    def __post_init__(self) -> None:
        if not self.space.is_closed(self.members):
            missing = self.space.closure(self.members) & ~self.members
            raise NotClosed(
                "subset is not closed",
                subset=self.space.label(self.members),
                missing=list(self.space.members(missing)),
            )

    @classmethod
    def empty(cls, space: FiniteSpace) -> ClosedSet:
        return cls(space, 0)

    @classmethod
    def whole(cls, space: FiniteSpace) -> ClosedSet:
        return cls(space, space.full)

    def __le__(self, other: ClosedSet) -> bool:
        return self.space == other.space and self.members & ~other.members == 0

    def __contains__(self, point: int) -> bool:
        return bool((self.members >> point) & 1)

    def point_list(self) -> list[str]:
        return list(self.space.members(self.members))

    def __repr__(self) -> str:
        return f"ClosedSet({self.space.label(self.members)})"


@dataclass(frozen=True)
class HitFunctional:
    """A Sierpiński-valued functional on the opens, stored along ``space.opens``.

    Construction checks strictness and preservation of binary unions.
    """

    space: FiniteSpace
    table: tuple[bool, ...]

    def __post_init__(self) -> None:
        opens = self.space.opens
        if len(self.table) != len(opens):
            raise ShapeMismatch("functional table does not cover the opens", size=len(self.table))
        if self.table[self.space.open_position[0]]:
            raise NotAValidFunctional("functional is not strict", open="{}")
        position = self.space.open_position
        for a_pos, a in enumerate(opens):
            for b_pos in range(a_pos + 1, len(opens)):
                b = opens[b_pos]
                if self.table[position[a | b]] != (self.table[a_pos] or self.table[b_pos]):
                    raise NotAValidFunctional(
                        "functional does not preserve the union",
                        left=self.space.label(a),
                        right=self.space.label(b),
                    )

    def __call__(self, u: int) -> bool:
        return self.table[self.space.open_position[u]]

    def __le__(self, other: HitFunctional) -> bool:
        return all(not a or b for a, b in zip(self.table, other.table, strict=True))


@dataclass(frozen=True)
class Hyperspace:
    """``HX``: the closed sets of ``base`` with the lower Vietoris topology.

    Point ``k`` of ``space`` is the closed set ``closed[k]`` of ``base``;
    closed sets are listed in increasing bit-set order.
    """

    base: FiniteSpace
    space: FiniteSpace
    closed: tuple[int, ...]

    @cached_property
    def _position(self) -> dict[int, int]:
        return {c: k for k, c in enumerate(self.closed)}

    def position(self, c: ClosedSet | int) -> int:
        if isinstance(c, ClosedSet):
            if c.space != self.base:
                raise ShapeMismatch("closed set lives on another space")
            c = c.members
        try:
            return self._position[c]
        except KeyError:
            raise NotClosed("subset is not closed", subset=self.base.label(c)) from None

    def closed_at(self, k: int) -> ClosedSet:
        return ClosedSet(self.base, self.closed[k])

    def family(self, family: ClosedSet) -> list[ClosedSet]:
        """Members of a closed set of ``HX`` as closed sets of the base."""
        if family.space != self.space:
            raise ShapeMismatch("family does not live on this hyperspace")
        return [self.closed_at(k) for k in range(self.space.size) if k in family]
