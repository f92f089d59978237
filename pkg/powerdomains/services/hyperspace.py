"""Hyperspace monad H: lower Vietoris topology, duality, σ, 𝒰, f♯, strength, algebras."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from functools import lru_cache
from itertools import product as cartesian

import numpy as np
from structlog import get_logger

from powerdomains.core.exceptions import (
    Anomaly,
    NotAValidFunctional,
    NotClosedFamily,
    NotContinuous,
    NotOpen,
    ShapeMismatch,
)
from powerdomains.models.closed import ClosedSet, HitFunctional, Hyperspace
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace, iter_bits, mask_of
from powerdomains.models.verdict import HAlgebraVerdict
from powerdomains.services import topology

logger = get_logger()


@lru_cache(maxsize=256)
def build_hyperspace(x: FiniteSpace) -> Hyperspace:
    """``HX`` with points the closed sets of ``x``, ordered by inclusion."""
    closed = x.closed_sets
    up = tuple(
        sum(1 << m for m, d in enumerate(closed) if c & ~d == 0) for c in closed
    )
    points = tuple(x.label(c) for c in closed)
    name = f"H({x.name})" if x.name else None
    logger.debug("Built hyperspace", base=x.size, points=len(closed))
    return Hyperspace(x, FiniteSpace(points, up, name), closed)


def hit_set(hx: Hyperspace, u: int) -> int:
    """``Hit(U)`` as a subset of the points of ``HX``."""
    return sum(1 << k for k, c in enumerate(hx.closed) if c & u)


def lower_vietoris_opens(hx: Hyperspace) -> tuple[int, ...]:
    """Topology of ``HX`` generated by the subbasis ``{Hit(U)}``."""
    basis = {hx.space.full}
    for u in hx.base.opens:
        h = hit_set(hx, u)
        basis |= {b & h for b in basis}
    family = {0}
    for b in basis:
        family |= {s | b for s in family}
    return tuple(sorted(family))


def hit(c: ClosedSet, u: int) -> bool:
    if not c.space.is_open(u):
        raise NotOpen("hit expects an open set", subset=c.space.label(u))
    return bool(c.members & u)


def functional_of_closed(c: ClosedSet) -> HitFunctional:
    return HitFunctional(c.space, tuple(bool(c.members & u) for u in c.space.opens))


def closed_of_functional(phi: HitFunctional) -> ClosedSet:
    """Complement of the union of the opens the functional sends to 0."""
    null = 0
    for u, value in zip(phi.space.opens, phi.table, strict=True):
        if not value:
            null |= u
    return ClosedSet(phi.space, phi.space.full & ~null)


def enumerate_hit_functionals(space: FiniteSpace) -> list[HitFunctional]:
    """Every strict, union-preserving boolean table on the opens (brute force)."""
    found = []
    for table in cartesian((False, True), repeat=len(space.opens)):
        try:
            found.append(HitFunctional(space, table))
        except NotAValidFunctional:
            continue
    return found


def push_closed(f: ContinuousMap, c: ClosedSet) -> ClosedSet:
    """``f♯C``: closure of the image, checked against ``⟨f♯C, U⟩ = ⟨C, f⁻¹U⟩``.

    Both sides preserve unions in ``U``, so the principal opens suffice.
    """
    if c.space != f.source:
        raise ShapeMismatch("closed set does not live on the source of the map")
    target = f.target
    result = ClosedSet(target, target.closure(f.image(c.members)))
    for y in range(target.size):
        u = target.up[y]
        if bool(result.members & u) != bool(c.members & f.preimage(u)):
            raise Anomaly("push-forward of a closed set disagrees with preimages", open=target.label(u))
    return result


def unit_sigma(space: FiniteSpace, point: str | int) -> ClosedSet:
    """``σ(x) = cl{x}``."""
    return ClosedSet(space, space.down[space.index(point)])


def family_of(hx: Hyperspace, members: Iterable[ClosedSet]) -> ClosedSet:
    """Closed set of ``HX`` with the given members; must be down-closed under inclusion."""
    mask = 0
    for c in members:
        mask |= 1 << hx.position(c)
    if not hx.space.is_closed(mask):
        missing = hx.space.closure(mask) & ~mask
        raise NotClosedFamily(
            "family is not down-closed under inclusion",
            missing=[hx.space.points[k] for k in iter_bits(missing)],
        )
    return ClosedSet(hx.space, mask)


def mult_union(hx: Hyperspace, family: ClosedSet | Iterable[ClosedSet]) -> ClosedSet:
    """``𝒰``: closure of the union of a closed family of closed sets."""
    if not isinstance(family, ClosedSet):
        family = family_of(hx, family)
    if family.space != hx.space:
        raise ShapeMismatch("family does not live on this hyperspace")
    members = 0
    for k in iter_bits(family.members):
        members |= hx.closed[k]
    x = hx.base
    result = ClosedSet(x, x.closure(members))
    for y in range(x.size):
        if bool(result.members & x.up[y]) != bool(family.members & hit_set(hx, x.up[y])):
            raise Anomaly("union of a family disagrees with Hit", open=x.label(x.up[y]))
    return result


def bind_closed(
    c: ClosedSet, kleisli: Callable[[int], ClosedSet], target: FiniteSpace
) -> ClosedSet:
    """Kleisli extension ``𝒰 ∘ k♯``: closure of the union of ``k(x)`` over ``x ∈ C``."""
    members = 0
    for i in iter_bits(c.members):
        image = kleisli(i)
        if image.space != target:
            raise ShapeMismatch("Kleisli map leaves the target space")
        members |= image.members
    return ClosedSet(target, target.closure(members))


def unit_closure_membership(space: FiniteSpace, c: ClosedSet) -> bool:
    """Whether ``C`` lies in the closure of ``σ(X)`` inside ``HX``.

    Decided by the finite-intersection criterion: the opens hit by ``C``
    must have a common point.
    """
    if c.space != space:
        raise ShapeMismatch("closed set lives on another space")
    common = space.full
    for u in space.opens:
        if c.members & u:
            common &= u
    by_criterion = common != 0
    below_point = any(c.members & ~space.down[i] == 0 for i in range(space.size))
    if by_criterion != below_point:
        raise Anomaly("closure of σ(X) disagrees with the intersection criterion", closed=repr(c))
    return by_criterion


def sigma_is_embedding(space: FiniteSpace) -> bool:
    """σ is an embedding iff it is injective; opens are always pulled back from ``Hit``."""
    return len(set(space.down)) == space.size


def strength_h(prod: ProductSpace, point: int, c: ClosedSet) -> ClosedSet:
    """``s(x, C) = (j_x)♯C``."""
    return push_closed(prod.insert_left(point), c)


def costrength_h(prod: ProductSpace, c: ClosedSet, point: int) -> ClosedSet:
    """``t(C, y) = (i_y)♯C``."""
    return push_closed(prod.insert_right(point), c)


def product_closed(prod: ProductSpace, c: ClosedSet, d: ClosedSet) -> ClosedSet:
    if c.space != prod.left or d.space != prod.right:
        raise ShapeMismatch("closed sets do not match the product factors")
    return ClosedSet(prod.space, prod.rectangle(c.members, d.members))


def commutativity_composites_h(prod: ProductSpace, c: ClosedSet, d: ClosedSet) -> tuple[ClosedSet, ClosedSet]:
    """The two diagonals ``𝒰∘t♯∘s`` and ``𝒰∘s♯∘t`` of the commutativity square."""
    hx = build_hyperspace(prod.left)
    hy = build_hyperspace(prod.right)
    via_hx = topology.product(hx.space, prod.right)
    via_hy = topology.product(prod.left, hy.space)

    s = strength_h(via_hx, hx.position(c), d)
    first = bind_closed(
        s,
        lambda k: costrength_h(prod, hx.closed_at(via_hx.unpair(k)[0]), via_hx.unpair(k)[1]),
        prod.space,
    )
    t = costrength_h(via_hy, c, hy.position(d))
    second = bind_closed(
        t,
        lambda k: strength_h(prod, via_hy.unpair(k)[0], hy.closed_at(via_hy.unpair(k)[1])),
        prod.space,
    )
    return first, second


# Structure maps as continuous maps between hyperspaces


def sigma_map(hx: Hyperspace) -> ContinuousMap:
    x = hx.base
    return ContinuousMap(x, hx.space, tuple(hx.position(unit_sigma(x, i)) for i in range(x.size)))


def union_map(hhx: Hyperspace, hx: Hyperspace) -> ContinuousMap:
    if hhx.base != hx.space:
        raise ShapeMismatch("outer hyperspace is not built on the inner one")
    return ContinuousMap(
        hhx.space,
        hx.space,
        tuple(hx.position(mult_union(hx, hhx.closed_at(k))) for k in range(hhx.space.size)),
    )


def push_map(f: ContinuousMap, source: Hyperspace, target: Hyperspace) -> ContinuousMap:
    """``Hf : HX → HY``."""
    if source.base != f.source or target.base != f.target:
        raise ShapeMismatch("hyperspaces do not match the map")
    return ContinuousMap(
        source.space,
        target.space,
        tuple(target.position(push_closed(f, source.closed_at(k))) for k in range(source.space.size)),
    )


def strength_map_h(prod: ProductSpace, hy: Hyperspace, hprod: Hyperspace) -> ContinuousMap:
    """``s : X × HY → H(X × Y)`` as a continuous map."""
    domain = topology.product(prod.left, hy.space)
    return ContinuousMap(
        domain.space,
        hprod.space,
        tuple(
            hprod.position(strength_h(prod, i, hy.closed_at(k)))
            for i, k in (domain.unpair(p) for p in range(domain.space.size))
        ),
    )


def costrength_map_h(prod: ProductSpace, hx: Hyperspace, hprod: Hyperspace) -> ContinuousMap:
    """``t : HX × Y → H(X × Y)`` as a continuous map."""
    domain = topology.product(hx.space, prod.right)
    return ContinuousMap(
        domain.space,
        hprod.space,
        tuple(
            hprod.position(costrength_h(prod, hx.closed_at(k), j))
            for k, j in (domain.unpair(p) for p in range(domain.space.size))
        ),
    )


# Down-sets


def iter_downsets(space: FiniteSpace) -> Iterator[ClosedSet]:
    """Lazy walk over the closed sets; never touches the power set."""
    for mask in space.iter_closed():
        yield ClosedSet(space, mask)


def sample_downset(space: FiniteSpace, rng: np.random.Generator) -> ClosedSet:
    """Down-closure of a random part of a random maximal antichain.

    The maximal antichain is built greedily along a random permutation and
    each of its members is then kept with probability 1/2. Every closed set
    can come out, but not with equal probability. Reproducible from ``rng``.
    """
    antichain: list[int] = []
    blocked = 0
    for i in rng.permutation(space.size):
        i = int(i)
        if not (blocked >> i) & 1:
            antichain.append(i)
            blocked |= space.up[i] | space.down[i]
    keep = rng.random(len(antichain)) < 0.5
    chosen = mask_of(i for i, kept in zip(antichain, keep, strict=True) if kept)
    return ClosedSet(space, space.closure(chosen))


# Algebras


def join_of_closed(space: FiniteSpace, members: int) -> int | None:
    """Least upper bound of ``members`` in the specialization order, if any."""
    bounds = [u for u in range(space.size) if members & ~space.down[u] == 0]
    for u in bounds:
        if all(space.le(u, v) for v in bounds):
            return u
    return None


def _is_monotone(source: FiniteSpace, target: FiniteSpace, assignment: Sequence[int]) -> bool:
    try:
        ContinuousMap(source, target, tuple(assignment))
    except NotContinuous:
        return False
    return True


def check_H_algebra(a_space: FiniteSpace, a_map: Sequence[int]) -> HAlgebraVerdict:
    """Verdict on a structure map ``HA → A`` given as a table over the points of ``HA``."""
    ha = build_hyperspace(a_space)
    if len(a_map) != ha.space.size:
        raise ShapeMismatch("structure map is not defined on the points of HA", size=len(a_map))
    for value in a_map:
        a_space.index(value)

    continuous = _is_monotone(ha.space, a_space, a_map)
    unit = all(
        a_map[ha.position(unit_sigma(a_space, x))] == x for x in range(a_space.size)
    )
    algebra_square = False
    if continuous:
        structure = ContinuousMap(ha.space, a_space, tuple(a_map))
        hha = build_hyperspace(ha.space)
        algebra_square = all(
            a_map[ha.position(mult_union(ha, family))]
            == a_map[ha.position(push_closed(structure, family))]
            for family in (hha.closed_at(k) for k in range(hha.space.size))
        )

    joins = [join_of_closed(a_space, c) for c in ha.closed]
    complete_lattice = all(j is not None for j in joins)
    join_map = complete_lattice and tuple(joins) == tuple(a_map)

    separation = topology.check_separation(a_space)
    binary_join_continuous = closed_join_continuous = False
    if complete_lattice:
        square = topology.product(a_space, a_space)
        binary = [
            join_of_closed(a_space, a_space.down[i] | a_space.down[j])
            for i, j in (square.unpair(p) for p in range(square.space.size))
        ]
        binary_join_continuous = _is_monotone(square.space, a_space, binary)  # type: ignore[arg-type]
        closed_join_continuous = _is_monotone(ha.space, a_space, joins)  # type: ignore[arg-type]
        if separation.is_t0 and binary_join_continuous != closed_join_continuous:
            raise Anomaly("binary and closed-set joins differ in continuity", space=repr(a_space))

    verdict = HAlgebraVerdict(
        continuous=continuous,
        unit=unit,
        algebra_square=algebra_square,
        join_map=join_map,
        t0=separation.is_t0,
        sober=separation.is_sober,
        complete_lattice=complete_lattice,
        binary_join_continuous=binary_join_continuous,
        closed_join_continuous=closed_join_continuous,
    )
    logger.debug("Checked H-algebra", points=a_space.size, algebra=verdict.is_algebra)
    return verdict


def join_structure_map(a_space: FiniteSpace) -> tuple[int, ...] | None:
    """The join-of-closed-sets table for ``HA → A`` when every closed set has a join."""
    ha = build_hyperspace(a_space)
    joins = [join_of_closed(a_space, c) for c in ha.closed]
    if any(j is None for j in joins):
        return None
    return tuple(j for j in joins if j is not None)
