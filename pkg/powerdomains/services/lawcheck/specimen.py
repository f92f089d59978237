"""Specimens: the concrete data a suite instance checks, plus greedy shrinking."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

import numpy as np
from structlog import get_logger

from powerdomains.core.exceptions import NotAFailure, PowerdomainsError
from powerdomains.models.closed import ClosedSet
from powerdomains.models.extended import ZERO, ExtNonneg
from powerdomains.models.space import ContinuousMap, FiniteSpace
from powerdomains.models.valuation import LowerSemiFn, Valuation
from powerdomains.services import topology
from powerdomains.services import valuation as va

logger = get_logger()

Weights = tuple[ExtNonneg, ...]


@dataclass(frozen=True)
class Specimen:
    """Spaces and the data living on them, each datum tagged with its space slot."""

    spaces: tuple[FiniteSpace, ...]
    weights: tuple[tuple[int, Weights], ...] = ()
    functions: tuple[tuple[int, Weights], ...] = ()
    maps: tuple[tuple[int, int, tuple[int, ...]], ...] = ()
    points: tuple[tuple[int, int], ...] = ()
    closed: tuple[tuple[int, int], ...] = ()
    scalars: tuple[Fraction, ...] = ()
    seed: int = 0

    def space(self, k: int = 0) -> FiniteSpace:
        return self.spaces[k]

    def valuation(self, k: int) -> Valuation:
        slot, w = self.weights[k]
        return va.valuation_from_weights(self.spaces[slot], w)

    def function(self, k: int) -> LowerSemiFn:
        slot, values = self.functions[k]
        return LowerSemiFn(self.spaces[slot], values)

    def map(self, k: int) -> ContinuousMap:
        source, target, assignment = self.maps[k]
        return ContinuousMap(self.spaces[source], self.spaces[target], assignment)

    def point(self, k: int) -> int:
        return self.points[k][1]

    def closed_set(self, k: int) -> ClosedSet:
        slot, members = self.closed[k]
        return ClosedSet(self.spaces[slot], members)

    def rng(self) -> np.random.Generator:
        """Fresh generator for data a diagram samples on the fly (HHHX elements)."""
        return np.random.default_rng(self.seed)

    @property
    def size(self) -> tuple[int, int, int]:
        """Points, nonzero weights, and the sum of weight denominators."""
        finite = [w.finite for _, ws in self.weights for w in ws if not w.is_infinite]
        return (
            sum(s.size for s in self.spaces),
            sum(1 for _, ws in self.weights for w in ws if not w.is_zero),
            sum(f.denominator for f in finite),
        )

    def to_document(self) -> dict[str, Any]:
        return {
            "spaces": [
                {
                    "name": s.name,
                    "points": list(s.points),
                    "preorder": sorted([a, b] for a, b in s.specialization_pairs()),
                }
                for s in self.spaces
            ],
            "weights": [{"space": s, "values": [str(w) for w in ws]} for s, ws in self.weights],
            "functions": [{"space": s, "values": [str(v) for v in vs]} for s, vs in self.functions],
            "maps": [
                {"source": a, "target": b, "mapping": self.map(k).as_mapping()}
                for k, (a, b, _) in enumerate(self.maps)
            ],
            "points": [{"space": s, "point": self.spaces[s].points[i]} for s, i in self.points],
            "closed": [{"space": s, "members": list(self.spaces[s].members(c))} for s, c in self.closed],
            "scalars": [str(r) for r in self.scalars],
            "seed": self.seed,
        }


# Shrinking


def _drop_entry(values: Weights, i: int) -> Weights:
    return values[:i] + values[i + 1 :]


def _compress(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def drop_point(specimen: Specimen, slot: int, i: int) -> Specimen | None:
    """Restrict every datum on ``slot`` to the subspace without point ``i``.

    ``None`` when a map or a chosen point needs the dropped point.
    """
    space = specimen.spaces[slot]
    sub, _ = topology.subspace(space, space.full & ~(1 << i))
    sub = FiniteSpace(sub.points, sub.up, space.name)

    maps = []
    for source, target, assignment in specimen.maps:
        if target == slot:
            if any(y == i for y in assignment):
                return None
            assignment = tuple(y - 1 if y > i else y for y in assignment)
        if source == slot:
            assignment = assignment[:i] + assignment[i + 1 :]
        maps.append((source, target, assignment))

    points = []
    for s, p in specimen.points:
        if s == slot:
            if p == i:
                return None
            p = p - 1 if p > i else p
        points.append((s, p))

    closed = []
    for s, c in specimen.closed:
        if s == slot:
            c = _compress(c, i)
            if not sub.is_closed(c):
                return None
        closed.append((s, c))

    spaces = specimen.spaces[:slot] + (sub,) + specimen.spaces[slot + 1 :]
    return replace(
        specimen,
        spaces=spaces,
        weights=tuple((s, _drop_entry(w, i) if s == slot else w) for s, w in specimen.weights),
        functions=tuple((s, _drop_entry(v, i) if s == slot else v) for s, v in specimen.functions),
        maps=tuple(maps),
        points=tuple(points),
        closed=tuple(closed),
    )


def _set_weight(specimen: Specimen, k: int, i: int, value: ExtNonneg) -> Specimen:
    slot, w = specimen.weights[k]
    updated = w[:i] + (value,) + w[i + 1 :]
    return replace(
        specimen,
        weights=specimen.weights[:k] + ((slot, updated),) + specimen.weights[k + 1 :],
    )


def _candidates(specimen: Specimen) -> Iterator[Specimen]:
    for slot, space in enumerate(specimen.spaces):
        for i in reversed(range(space.size)):
            smaller = drop_point(specimen, slot, i)
            if smaller is not None:
                yield smaller
    for k, (_, w) in enumerate(specimen.weights):
        for i, value in enumerate(w):
            if not value.is_zero:
                yield _set_weight(specimen, k, i, ZERO)
    for k, (_, w) in enumerate(specimen.weights):
        for i, value in enumerate(w):
            if value.is_infinite or value.finite.denominator == 1:
                continue
            rounded = max(Fraction(round(value.finite)), Fraction(1))
            yield _set_weight(specimen, k, i, ExtNonneg(rounded))


def _no_larger(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


def shrink(specimen: Specimen, fails: Callable[[Specimen], bool], max_rounds: int = 200) -> Specimen:
    """Greedy minimization keeping ``fails`` true.

    Candidates that cannot be built (an axiom breaks on the restricted data)
    are skipped.
    """
    if not fails(specimen):
        raise NotAFailure("specimen does not fail")
    current = specimen
    for _ in range(max_rounds):
        for candidate in _candidates(current):
            try:
                still_fails = fails(candidate)
            except PowerdomainsError:
                continue
            if still_fails and _no_larger(candidate.size, current.size) and candidate != current:
                current = candidate
                break
        else:
            break
    logger.debug("Shrunk specimen", before=specimen.size, after=current.size)
    return current

