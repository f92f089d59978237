"""Finite topological spaces, continuous maps and binary products.

A finite topology is the same thing as a preorder: the opens are exactly
the up-sets of the specialization preorder. Subsets are bit-sets (Python
ints) over the ordered point list; ``up[i]`` is the smallest open
neighbourhood of point ``i``.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from powerdomains.core.exceptions import (
    Anomaly,
    NotAPreorder,
    NotATopology,
    NotContinuous,
    ShapeMismatch,
)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def iter_cone_unions(cones: Sequence[int], comparable: Sequence[int], candidates: Sequence[int]) -> Iterator[int]:
    """Union of ``cones`` over every antichain drawn from ``candidates``.

    With ``cones = up`` this walks the up-sets (opens) of a preorder, with
    ``cones = down`` its down-sets (closed sets). Each antichain is visited
    once, so nothing proportional to the power set is touched.
    """
    stack: list[tuple[int, int, int]] = [(0, 0, 0)]
    while stack:
        start, forbidden, acc = stack.pop()
        yield acc
        for pos in range(len(candidates) - 1, start - 1, -1):
            i = candidates[pos]
            if not (forbidden >> i) & 1:
                stack.append((pos + 1, forbidden | comparable[i], acc | cones[i]))


@dataclass(frozen=True)
class FiniteSpace:
    """A finite topological space in canonical (min-neighbourhood) form."""

    points: tuple[str, ...]
    up: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    # Construction

    @classmethod
    def from_preorder(
        cls,
        points: Sequence[str],
        relation: Iterable[tuple[str, str]],
        name: str | None = None,
    ) -> FiniteSpace:
        """Space whose opens are the up-sets of ``relation``.

        The relation must already be reflexive and transitive; no closure
        is taken.
        """
        pts = _unique_points(points)
        index = {p: i for i, p in enumerate(pts)}
        up = [0] * len(pts)
        for a, b in relation:
            if a not in index or b not in index:
                raise NotAPreorder("relation mentions an unknown point", pair=[a, b])
            up[index[a]] |= 1 << index[b]
        for i, p in enumerate(pts):
            if not (up[i] >> i) & 1:
                raise NotAPreorder("relation is not reflexive", pair=[p, p])
        for i in range(len(pts)):
            for j in iter_bits(up[i]):
                missing = up[j] & ~up[i]
                if missing:
                    k = next(iter_bits(missing))
                    raise NotAPreorder(
                        "relation is not transitive",
                        pair=[pts[i], pts[j]],
                        then=[pts[j], pts[k]],
                        missing=[pts[i], pts[k]],
                    )
        return cls(pts, tuple(up), name)

    @classmethod
    def from_opens(
        cls,
        points: Sequence[str],
        opens: Iterable[int],
        name: str | None = None,
    ) -> FiniteSpace:
        """Space with an explicit open family given as bit-sets."""
        pts = _unique_points(points)
        full = (1 << len(pts)) - 1
        family = set(opens)
        for u in family:
            if u & ~full:
                raise NotATopology("open set mentions an unknown point", open=u)
        if 0 not in family:
            raise NotATopology("∅ is not open")
        if full not in family:
            raise NotATopology("the whole space is not open")
        ordered = sorted(family)
        for a_pos, a in enumerate(ordered):
            for b in ordered[a_pos + 1 :]:
                if a | b not in family:
                    raise NotATopology(
                        "open family is not closed under union",
                        left=_label(pts, a),
                        right=_label(pts, b),
                    )
                if a & b not in family:
                    raise NotATopology(
                        "open family is not closed under intersection",
                        left=_label(pts, a),
                        right=_label(pts, b),
                    )
        up = []
        for i in range(len(pts)):
            nbhd = full
            for u in ordered:
                if (u >> i) & 1:
                    nbhd &= u
            up.append(nbhd)
        space = cls(pts, tuple(up), name)
        if tuple(ordered) != space.opens:
            raise Anomaly("open family differs from the up-sets of its specialization")
        return space

    @classmethod
    def from_open_members(
        cls,
        points: Sequence[str],
        opens: Iterable[Iterable[str]],
        name: str | None = None,
    ) -> FiniteSpace:
        pts = _unique_points(points)
        index = {p: i for i, p in enumerate(pts)}
        masks = []
        for members in opens:
            members = list(members)
            unknown = [m for m in members if m not in index]
            if unknown:
                raise NotATopology("open set mentions an unknown point", points=unknown)
            masks.append(mask_of(index[m] for m in members))
        return cls.from_opens(pts, masks, name)

    @classmethod
    def discrete(cls, points: Sequence[str], name: str | None = None) -> FiniteSpace:
        return cls(tuple(points), tuple(1 << i for i in range(len(points))), name)

    @classmethod
    def indiscrete(cls, points: Sequence[str], name: str | None = None) -> FiniteSpace:
        full = (1 << len(points)) - 1
        return cls(tuple(points), tuple(full for _ in points), name)

    @classmethod
    def chain(cls, length: int, name: str | None = None) -> FiniteSpace:
        """Points 0 < 1 < ... < length-1; opens are the final segments."""
        full = (1 << length) - 1
        up = tuple(full & ~((1 << i) - 1) for i in range(length))
        return cls(tuple(str(i) for i in range(length)), up, name)

    # Basic structure

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, point: str | int) -> int:
        if isinstance(point, int):
            if not 0 <= point < self.size:
                raise ShapeMismatch("point index out of range", index=point, size=self.size)
            return point
        try:
            return self._index[point]
        except KeyError:
            raise ShapeMismatch("unknown point", point=point) from None

    def mask(self, points: Iterable[str | int]) -> int:
        return mask_of(self.index(p) for p in points)

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in iter_bits(mask))

    def label(self, mask: int) -> str:
        return _label(self.points, mask)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """``down[i]`` is the closure of the point ``i``."""
        out = [0] * self.size
        for i in range(self.size):
            for j in iter_bits(self.up[i]):
                out[j] |= 1 << i
        return tuple(out)

    def le(self, i: int, j: int) -> bool:
        """Specialization: ``i ≤ j`` iff ``i`` lies in the closure of ``j``."""
        return bool((self.up[i] >> j) & 1)

    def equivalent(self, i: int, j: int) -> bool:
        return self.up[i] == self.up[j]

    def is_open(self, mask: int) -> bool:
        if mask & ~self.full:
            return False
        return all(self.up[i] & ~mask == 0 for i in iter_bits(mask))

    def is_closed(self, mask: int) -> bool:
        if mask & ~self.full:
            return False
        return all(self.down[i] & ~mask == 0 for i in iter_bits(mask))

    def closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.up[i]
        return out

    def interior(self, mask: int) -> int:
        """Largest open subset of ``mask``."""
        return mask_of(i for i in iter_bits(mask) if self.up[i] & ~mask == 0)

    @cached_property
    def _representatives(self) -> tuple[int, ...]:
        seen: set[int] = set()
        reps = []
        for i, u in enumerate(self.up):
            if u not in seen:
                seen.add(u)
                reps.append(i)
        return tuple(reps)

    @cached_property
    def _comparable(self) -> tuple[int, ...]:
        return tuple(u | d for u, d in zip(self.up, self.down, strict=True))

    def iter_opens(self) -> Iterator[int]:
        return iter_cone_unions(self.up, self._comparable, self._representatives)

    def iter_closed(self) -> Iterator[int]:
        return iter_cone_unions(self.down, self._comparable, self._representatives)

    @cached_property
    def opens(self) -> tuple[int, ...]:
        """All opens, sorted by bit-set value (the canonical open list)."""
        return tuple(sorted(self.iter_opens()))

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.iter_closed()))

    @cached_property
    def open_position(self) -> dict[int, int]:
        return {u: k for k, u in enumerate(self.opens)}

    def specialization_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (self.points[i], self.points[j]) for i in range(self.size) for j in iter_bits(self.up[i])
        )

    @cached_property
    def opens_checksum(self) -> str:
        """sha256 of the canonical open list, guarding open-index references."""
        payload = json.dumps(
            {"points": list(self.points), "opens": [list(self.members(u)) for u in self.opens]},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<FiniteSpace{tag} points={list(self.points)} up={[self.label(u) for u in self.up]}>"


@dataclass(frozen=True)
class ContinuousMap:
    """A monotone (equivalently continuous) map between finite spaces."""

    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != self.source.size:
            raise ShapeMismatch(
                "assignment length differs from source size",
                length=len(self.assignment),
                size=self.source.size,
            )
        for y in self.assignment:
            if not 0 <= y < self.target.size:
                raise ShapeMismatch("assignment leaves the target", index=y)
        for i in range(self.source.size):
            for j in iter_bits(self.source.up[i]):
                if not self.target.le(self.assignment[i], self.assignment[j]):
                    raise NotContinuous(
                        "map is not monotone for specialization",
                        below=self.source.points[i],
                        above=self.source.points[j],
                        images=[
                            self.target.points[self.assignment[i]],
                            self.target.points[self.assignment[j]],
                        ],
                    )

    @classmethod
    def from_mapping(
        cls, source: FiniteSpace, target: FiniteSpace, mapping: Mapping[str, str]
    ) -> ContinuousMap:
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise ShapeMismatch("mapping is not total", missing=missing)
        return cls(source, target, tuple(target.index(mapping[p]) for p in source.points))

    @classmethod
    def identity(cls, space: FiniteSpace) -> ContinuousMap:
        return cls(space, space, tuple(range(space.size)))

    @classmethod
    def constant(cls, source: FiniteSpace, target: FiniteSpace, point: str | int) -> ContinuousMap:
        y = target.index(point)
        return cls(source, target, tuple(y for _ in range(source.size)))

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def preimage(self, mask: int) -> int:
        return mask_of(i for i, y in enumerate(self.assignment) if (mask >> y) & 1)

    def image(self, mask: int) -> int:
        return mask_of(self.assignment[i] for i in iter_bits(mask))

    def after(self, first: ContinuousMap) -> ContinuousMap:
        """Composite ``self ∘ first``."""
        if first.target != self.source:
            raise ShapeMismatch("maps are not composable")
        return ContinuousMap(first.source, self.target, tuple(self.assignment[y] for y in first.assignment))

    def as_mapping(self) -> dict[str, str]:
        return {p: self.target.points[y] for p, y in zip(self.source.points, self.assignment, strict=True)}


@dataclass(frozen=True)
class ProductSpace:
    """A binary product ``left × right`` with its projections.

    The pair ``(i, j)`` sits at index ``i * |right| + j``.
    """

    space: FiniteSpace
    left: FiniteSpace
    right: FiniteSpace

    def pair(self, i: int, j: int) -> int:
        return i * self.right.size + j

    def unpair(self, k: int) -> tuple[int, int]:
        return divmod(k, self.right.size)

    def rectangle(self, u: int, v: int) -> int:
        return mask_of(self.pair(i, j) for i in iter_bits(u) for j in iter_bits(v))

    def slice_at_left(self, w: int, i: int) -> int:
        """``{j : (i, j) ∈ w}``."""
        return mask_of(j for j in range(self.right.size) if (w >> self.pair(i, j)) & 1)

    def slice_at_right(self, w: int, j: int) -> int:
        """``{i : (i, j) ∈ w}``."""
        return mask_of(i for i in range(self.left.size) if (w >> self.pair(i, j)) & 1)

    @cached_property
    def proj_left(self) -> ContinuousMap:
        return ContinuousMap(self.space, self.left, tuple(self.unpair(k)[0] for k in range(self.space.size)))

    @cached_property
    def proj_right(self) -> ContinuousMap:
        return ContinuousMap(self.space, self.right, tuple(self.unpair(k)[1] for k in range(self.space.size)))

    def insert_left(self, i: int) -> ContinuousMap:
        """``j_x : right → left × right``, ``y ↦ (x, y)``."""
        return ContinuousMap(self.right, self.space, tuple(self.pair(i, j) for j in range(self.right.size)))

    def insert_right(self, j: int) -> ContinuousMap:
        """``i_y : left → left × right``, ``x ↦ (x, y)``."""
        return ContinuousMap(self.left, self.space, tuple(self.pair(i, j) for i in range(self.left.size)))


def _unique_points(points: Sequence[str]) -> tuple[str, ...]:
    pts = tuple(str(p) for p in points)
    if len(set(pts)) != len(pts):
        dupes = sorted({p for p in pts if pts.count(p) > 1})
        raise NotATopology("duplicate point identifiers", points=dupes)
    return pts


def _label(points: Sequence[str], mask: int) -> str:
    return "{" + ",".join(points[i] for i in iter_bits(mask)) + "}"
