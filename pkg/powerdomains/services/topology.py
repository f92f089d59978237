"""Finite spaces as preorders: specialization, closure, products, separation, 2-cells."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx
from structlog import get_logger

from powerdomains.core.exceptions import Anomaly, NotOpen, ShapeMismatch
from powerdomains.models.space import (
    ContinuousMap,
    FiniteSpace,
    ProductSpace,
    iter_bits,
    mask_of,
)

logger = get_logger()


@dataclass(frozen=True)
class SeparationReport:
    is_t0: bool
    is_t1: bool
    is_sober: bool


@dataclass(frozen=True)
class EquivalenceResult:
    is_equivalence: bool
    quasi_inverse: ContinuousMap | None = None
    reason: str | None = None


def from_preorder(points: Sequence[str], relation: Iterable[tuple[str, str]]) -> FiniteSpace:
    """Space whose opens are the up-sets of a (validated) preorder."""
    return FiniteSpace.from_preorder(points, relation)


def specialization(space: FiniteSpace) -> frozenset[tuple[str, str]]:
    """``x ≤ y`` iff ``x ∈ cl({y})``."""
    return space.specialization_pairs()


def closure(space: FiniteSpace, subset: int) -> int:
    return space.closure(subset)


def upsets_by_enumeration(space: FiniteSpace) -> tuple[int, ...]:
    """All up-sets, found by filtering every subset. Only for tiny spaces."""
    return tuple(m for m in range(1 << space.size) if space.is_open(m))


def closure_by_intersection(space: FiniteSpace, subset: int) -> int:
    """Intersection of all closed supersets, computed from the open list."""
    out = space.full
    for u in space.opens:
        complement = space.full & ~u
        if subset & ~complement == 0:
            out &= complement
    return out


@lru_cache(maxsize=512)
def product(a: FiniteSpace, b: FiniteSpace) -> ProductSpace:
    """Product space with the product preorder; projections via ``ProductSpace``."""
    points = tuple(f"({x},{y})" for x in a.points for y in b.points)
    up = tuple(
        mask_of(i * b.size + j for i in iter_bits(a.up[p]) for j in iter_bits(b.up[q]))
        for p in range(a.size)
        for q in range(b.size)
    )
    name = f"{a.name}×{b.name}" if a.name and b.name else None
    return ProductSpace(FiniteSpace(points, up, name), a, b)


def product_opens_from_rectangles(prod: ProductSpace) -> tuple[int, ...]:
    """Topology generated by the rectangles ``U × V``.

    Rectangles are closed under intersection, so closing under unions is
    enough.
    """
    rectangles = {prod.rectangle(u, v) for u in prod.left.opens for v in prod.right.opens}
    family = {0}
    for r in rectangles:
        family |= {s | r for s in family}
    return tuple(sorted(family))


def subspace(space: FiniteSpace, keep: int) -> tuple[FiniteSpace, ContinuousMap]:
    """Induced subspace on ``keep`` and its inclusion map."""
    kept = list(iter_bits(keep))
    position = {old: new for new, old in enumerate(kept)}
    up = tuple(mask_of(position[j] for j in iter_bits(space.up[i] & keep)) for i in kept)
    sub = FiniteSpace(tuple(space.points[i] for i in kept), up)
    return sub, ContinuousMap(sub, space, tuple(kept))


def _irreducible(space: FiniteSpace, closed: int, closed_sets: Sequence[int]) -> bool:
    if closed == 0:
        return False
    parts = [c for c in closed_sets if c & ~closed == 0 and c != closed]
    return not any(a | b == closed for a, b in combinations(parts, 2))


def check_separation(space: FiniteSpace) -> SeparationReport:
    """T0, T1 and sobriety, the last by enumerating irreducible closed sets."""
    n = space.size
    is_t0 = len(set(space.up)) == n
    is_t1 = all(space.up[i] == 1 << i for i in range(n))
    closed_sets = space.closed_sets
    is_sober = True
    for c in closed_sets:
        if not _irreducible(space, c, closed_sets):
            continue
        generic = [i for i in range(n) if space.down[i] == c]
        if len(generic) != 1:
            is_sober = False
            break
    return SeparationReport(is_t0=is_t0, is_t1=is_t1, is_sober=is_sober)


def kolmogorov_quotient(space: FiniteSpace) -> tuple[FiniteSpace, ContinuousMap]:
    """Identify specialization-equivalent points.

    The classes are the strongly connected components of the
    specialization digraph.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(space.size))
    graph.add_edges_from((i, j) for i in range(space.size) for j in iter_bits(space.up[i]))
    classes = sorted((sorted(c) for c in nx.strongly_connected_components(graph)), key=lambda c: c[0])
    owner = {i: k for k, members in enumerate(classes) for i in members}
    names = tuple("~".join(space.points[i] for i in members) for members in classes)
    up = tuple(mask_of(owner[j] for j in iter_bits(space.up[members[0]])) for members in classes)
    quotient = FiniteSpace(names, up, space.name)
    return quotient, ContinuousMap(space, quotient, tuple(owner[i] for i in range(space.size)))


def le_2cell(f: ContinuousMap, g: ContinuousMap) -> bool:
    """``f ≤ g`` pointwise in the target's specialization.

    Cross-checked against the criterion ``f⁻¹(U) ⊆ g⁻¹(U)`` for every open U.
    """
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("2-cell between maps with different source or target")
    pointwise = all(f.target.le(f(i), g(i)) for i in range(f.source.size))
    by_preimage = all(f.preimage(u) & ~g.preimage(u) == 0 for u in f.target.opens)
    if pointwise != by_preimage:
        logger.error("2-cell criteria disagree", pointwise=pointwise, by_preimage=by_preimage)
        raise Anomaly("2-cell criteria disagree", pointwise=pointwise, by_preimage=by_preimage)
    return pointwise


def is_equivalence(f: ContinuousMap) -> EquivalenceResult:
    """Equivalence in the 2-category of spaces, with a quasi-inverse on success."""
    x, y = f.source, f.target
    preimages = [f.preimage(u) for u in y.opens]
    if len(set(preimages)) != len(preimages) or len(preimages) != len(x.opens):
        return EquivalenceResult(False, reason="preimage map on opens is not bijective")
    choice = []
    for j in range(y.size):
        hits = [i for i in range(x.size) if y.equivalent(f(i), j)]
        if not hits:
            return EquivalenceResult(False, reason=f"{y.points[j]} is not equivalent to any image point")
        choice.append(hits[0])
    g = ContinuousMap(y, x, tuple(choice))
    identity_x = ContinuousMap.identity(x)
    identity_y = ContinuousMap.identity(y)
    gf, fg = g.after(f), f.after(g)
    if not (
        le_2cell(gf, identity_x)
        and le_2cell(identity_x, gf)
        and le_2cell(fg, identity_y)
        and le_2cell(identity_y, fg)
    ):
        raise Anomaly("quasi-inverse fails the 2-cell identities")
    return EquivalenceResult(True, quasi_inverse=g)


def way_below(space: FiniteSpace, v: int, u: int) -> bool:
    """``v ≪ u``: every open cover of ``u`` has a finite subcover of ``v``.

    Covers of a finite space are finite, so the test reduces to the
    largest cover of ``u`` (all opens inside it); the result is checked
    against ``v ⊆ u``.
    """
    for w in (v, u):
        if not space.is_open(w):
            raise NotOpen("way-below expects open sets", subset=space.label(w))
    cover = [w for w in space.opens if w & ~u == 0]
    covered = 0
    for w in cover:
        if w & v:
            covered |= w
    result = v & ~covered == 0 and v & ~u == 0
    if result != (v & ~u == 0):
        raise Anomaly("way-below differs from inclusion on a finite space")
    return result
