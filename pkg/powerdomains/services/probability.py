"""Probability submonad P: Möbius extension to measures, E on measures, product measures."""

from __future__ import annotations

from fractions import Fraction

import networkx as nx
from structlog import get_logger

from powerdomains.core.exceptions import (
    Anomaly,
    InfiniteMass,
    NegativeWeight,
    NotNormalized,
    PreconditionFailed,
    ShapeMismatch,
)
from powerdomains.models.extended import ONE, ExtNonneg, ext_sum
from powerdomains.models.measure import FiniteMeasure, ProbValuation
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace, iter_bits
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import topology
from powerdomains.services import valuation as va

logger = get_logger()


def mobius_function(space: FiniteSpace) -> dict[tuple[int, int], int]:
    """Möbius function of the specialization poset, ``μ(x, y)`` for ``x ≤ y``.

    Computed along a topological order of the strict order so that every
    ``μ(x, z)`` with ``z < y`` is known before ``μ(x, y)``.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(space.size))
    graph.add_edges_from(
        (i, j) for i in range(space.size) for j in iter_bits(space.up[i]) if i != j
    )
    if not nx.is_directed_acyclic_graph(graph):
        raise PreconditionFailed("Möbius inversion needs a T0 space")
    order = list(nx.topological_sort(graph))
    mu: dict[tuple[int, int], int] = {}
    for x in range(space.size):
        for y in order:
            if not space.le(x, y):
                continue
            if x == y:
                mu[x, y] = 1
            else:
                mu[x, y] = -sum(
                    mu[x, z] for z in iter_bits(space.up[x] & space.down[y]) if z != y
                )
    return mu


def extend_to_measure(nu: Valuation) -> FiniteMeasure:
    """Point weights with ``Σ_{x∈U} w_x = ν(U)`` for every open ``U``.

    Non-T0 spaces are replaced by their Kolmogorov quotient first; the
    result then carries the quotient map.
    """
    if nu.total.is_infinite:
        raise InfiniteMass("valuation has infinite total mass")
    quotient: ContinuousMap | None = None
    if len(set(nu.space.up)) != nu.space.size:
        _, quotient = topology.kolmogorov_quotient(nu.space)
        nu = va.pushforward(quotient, nu)
    space = nu.space
    cumulative = [nu(space.up[x]).finite for x in range(space.size)]
    mu = mobius_function(space)

    weights = []
    for x in range(space.size):
        w = sum((mu[x, y] * cumulative[y] for y in iter_bits(space.up[x])), Fraction(0))
        local = cumulative[x] - nu(space.up[x] & ~(1 << x)).finite
        if w != local:
            raise Anomaly("Möbius weight differs from the local formula", point=space.points[x])
        if w < 0:
            logger.error("Negative Möbius weight", point=space.points[x], weight=str(w))
            raise NegativeWeight("Möbius inversion produced a negative weight", point=space.points[x])
        weights.append(w)

    measure = FiniteMeasure(space, tuple(weights), quotient)
    for u in space.opens:
        if ExtNonneg(measure.measure(u)) != nu(u):
            raise Anomaly("extended measure disagrees with the valuation", open=space.label(u))
    return measure


def restriction(m: FiniteMeasure) -> Valuation:
    """The valuation ``U ↦ m(U)``."""
    return va.valuation_from_weights(m.space, m.weights)


def integrate_measure(m: FiniteMeasure, g: LowerSemiFn) -> ExtNonneg:
    """``∫ g dm = Σ w_x g(x)``."""
    if g.space != m.space:
        raise ShapeMismatch("measure and function live on different spaces")
    return ext_sum(g(i) * w for i, w in enumerate(m.weights))


def unit_second_order(nu: Valuation) -> SimpleSecondOrder:
    """``Vδ(ν) = Σ w_x δ_{δ_x}``, read off the Möbius weights of ``ν``."""
    measure = extend_to_measure(nu)
    if measure.quotient is not None:
        raise PreconditionFailed("Vδ needs a T0 space to read off point weights")
    space = nu.space
    return SimpleSecondOrder(
        space,
        tuple((ExtNonneg(w), va.unit_delta(space, i)) for i, w in enumerate(measure.weights) if w),
    )


def as_probability(nu: Valuation) -> ProbValuation:
    return ProbValuation(nu)


def mult_E_measure(mu: SimpleSecondOrder) -> ProbValuation:
    """Measure-level ``E``, checked against ``ℰ`` on every subset of the space."""
    for _, atom in mu.atoms:
        ProbValuation(atom)
    weight_total = ext_sum(c for c, _ in mu.atoms)
    if weight_total != ONE:
        raise NotNormalized("mixture weights do not sum to 1", total=str(weight_total))

    result = va.mult_E(mu)
    extended = extend_to_measure(result)
    parts = [(c.finite, extend_to_measure(atom)) for c, atom in mu.atoms]
    for subset in range(1 << extended.space.size):
        mixture = sum((c * m.measure(subset) for c, m in parts), Fraction(0))
        if mixture != extended.measure(subset):
            raise Anomaly(
                "measure-level mixture disagrees with ℰ",
                subset=extended.space.label(subset),
            )
    return ProbValuation(result)


def product_measure(prod: ProductSpace, p: ProbValuation, q: ProbValuation) -> ProbValuation:
    return ProbValuation(va.product_valuation(prod, p.underlying, q.underlying))


def push_probability(f: ContinuousMap, p: ProbValuation) -> ProbValuation:
    return ProbValuation(va.pushforward(f, p.underlying))


def strength_p(prod: ProductSpace, point: int, p: ProbValuation) -> ProbValuation:
    return ProbValuation(va.strength_v(prod, point, p.underlying))


def a_topology_membership(p: ProbValuation, u: int, r: Fraction | int) -> bool:
    """``p ∈ O(U, r)``, i.e. ``p(U) > r``."""
    return va.topology_membership(p.underlying, va.SubbasicOpen(u, Fraction(r)))
