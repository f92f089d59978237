"""Law suites: a specimen builder and a list of diagrams per suite."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from powerdomains.core.exceptions import PreconditionFailed, UnknownSuite
from powerdomains.models.closed import ClosedSet
from powerdomains.models.extended import ExtNonneg, ext_sum
from powerdomains.models.measure import ProbValuation
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace
from powerdomains.models.valuation import Kernel, LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import hyperspace as hs
from powerdomains.services import probability as pr
from powerdomains.services import support as sp
from powerdomains.services import topology as tp
from powerdomains.services import valuation as va
from powerdomains.services.lawcheck.diagrams import Diagram, prop
from powerdomains.services.lawcheck.generators import (
    InstanceGenerator,
    canned_corpus,
    enumerate_topologies,
)
from powerdomains.services.lawcheck.specimen import Specimen


@dataclass(frozen=True)
class Suite:
    name: str
    build: Callable[[InstanceGenerator], Specimen]
    diagrams: tuple[Diagram, ...]
    default_count: int
    description: str


SUITES: dict[str, Suite] = {}


def suite(name: str, count: int, diagrams: Sequence[Diagram], description: str):
    def register(build: Callable[[InstanceGenerator], Specimen]) -> Callable[[InstanceGenerator], Specimen]:
        SUITES[name] = Suite(name, build, tuple(diagrams), count, description)
        return build

    return register


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}", known=sorted(SUITES)) from None


# Shared helpers


def _closed_sets(space: FiniteSpace) -> list[ClosedSet]:
    return [ClosedSet(space, m) for m in space.closed_sets]


def _opens_sorted(opens: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(opens))


def _prod(s: Specimen, a: int = 0, b: int = 1) -> ProductSpace:
    return tp.product(s.space(a), s.space(b))


def _nonempty_after(gen: InstanceGenerator, source: FiniteSpace, **kwargs) -> FiniteSpace:
    """A space that receives a map from ``source``."""
    return gen.space(min_points=1 if source.size else 0, **kwargs)


def _t0(s: Specimen, k: int = 0) -> bool:
    return len(set(s.space(k).up)) == s.space(k).size


def _kernel(s: Specimen, map_k: int, weights_k: int, base_k: int) -> Kernel:
    """``k(x) = Σ_{j ≤ x} w_j δ_{f(j)} + base``; monotone in ``x`` by construction."""
    f = s.map(map_k)
    _, w = s.weights[weights_k]
    base = s.valuation(base_k)
    table = []
    for x in range(f.source.size):
        nu = base
        for j in range(f.source.size):
            if f.source.le(j, x) and not w[j].is_zero:
                nu = nu + va.unit_delta(f.target, f(j)).scaled(w[j])
        table.append(nu)
    return Kernel(f.source, f.target, tuple(table))


def _second_order(s: Specimen, weight_slots: Sequence[int], scalar_slots: Sequence[int]) -> SimpleSecondOrder:
    space = s.spaces[s.weights[weight_slots[0]][0]]
    return SimpleSecondOrder.of(
        space, [(s.scalars[c], s.valuation(k)) for k, c in zip(weight_slots, scalar_slots, strict=True)]
    )


def _dirac_mixture(s: Specimen, k: int) -> SimpleSecondOrder:
    """``Vδ(ν) = Σ wᵢ δ_{δᵢ}`` read directly off the specimen's weights."""
    slot, w = s.weights[k]
    space = s.space(slot)
    return SimpleSecondOrder(
        space, tuple((wi, va.unit_delta(space, i)) for i, wi in enumerate(w) if not wi.is_zero)
    )


def _probability(s: Specimen, k: int) -> ProbValuation:
    slot, w = s.weights[k]
    total = ext_sum(w)
    if total.is_zero or total.is_infinite:
        raise PreconditionFailed("weights cannot be normalized", total=str(total))
    return ProbValuation(va.valuation_from_weights(s.space(slot), [wi / total for wi in w]))


def _normalized_weights(s: Specimen, k: int) -> tuple[ExtNonneg, ...]:
    _, w = s.weights[k]
    total = ext_sum(w)
    return tuple(wi / total for wi in w)


# topology-core


def _hit_closure(s: Specimen) -> bool:
    x = s.space(0)
    return all(
        bool(a & u) == bool(x.closure(a) & u) for a in range(1 << x.size) for u in x.opens
    )


def _kolmogorov(s: Specimen) -> bool:
    quotient, q = tp.kolmogorov_quotient(s.space(0))
    return tp.check_separation(quotient).is_t0 and tp.is_equivalence(q).is_equivalence


def _finite_t0_sober(s: Specimen) -> bool:
    report = tp.check_separation(s.space(0))
    return not report.is_t0 or report.is_sober


def _hx_order_is_inclusion(s: Specimen) -> bool:
    hx = hs.build_hyperspace(s.space(0))
    n = hx.space.size
    return all(
        hx.space.le(a, b) == (hx.closed[a] & ~hx.closed[b] == 0) for a in range(n) for b in range(n)
    )


def _functional_tables(functionals) -> list[tuple[bool, ...]]:
    return sorted(phi.table for phi in functionals)


TOPOLOGY_CORE = [
    Diagram(
        "opens-are-upsets",
        lambda s: _opens_sorted(s.space(0).opens),
        lambda s: tp.upsets_by_enumeration(s.space(0)),
    ),
    Diagram(
        "closure-by-intersection",
        lambda s: tuple(s.space(0).closure(m) for m in range(1 << s.space(0).size)),
        lambda s: tuple(tp.closure_by_intersection(s.space(0), m) for m in range(1 << s.space(0).size)),
    ),
    Diagram(
        "specialization-determines-topology",
        lambda s: FiniteSpace.from_preorder(s.space(0).points, tp.specialization(s.space(0))),
        lambda s: s.space(0),
    ),
    prop("hit-iff-closure-hits", _hit_closure),
    Diagram(
        "product-from-rectangles",
        lambda s: _opens_sorted(tp.product_opens_from_rectangles(_prod(s))),
        lambda s: _opens_sorted(_prod(s).space.opens),
    ),
    prop("kolmogorov-quotient", _kolmogorov),
    prop("finite-t0-is-sober", _finite_t0_sober),
    Diagram(
        "lower-vietoris",
        lambda s: _opens_sorted(hs.lower_vietoris_opens(hs.build_hyperspace(s.space(0)))),
        lambda s: _opens_sorted(hs.build_hyperspace(s.space(0)).space.opens),
    ),
    prop("hyperspace-order-is-inclusion", _hx_order_is_inclusion),
    Diagram(
        "closed-duality",
        lambda s: [hs.closed_of_functional(hs.functional_of_closed(c)) for c in _closed_sets(s.space(0))],
        lambda s: _closed_sets(s.space(0)),
    ),
    Diagram(
        "functionals-are-closed-sets",
        lambda s: _functional_tables(hs.enumerate_hit_functionals(s.space(0))),
        lambda s: _functional_tables(hs.functional_of_closed(c) for c in _closed_sets(s.space(0))),
        applies=lambda s: len(s.space(0).opens) <= 16,
    ),
    prop(
        "way-below-is-inclusion",
        lambda s: all(
            tp.way_below(s.space(0), v, u) == (v & ~u == 0) for u in s.space(0).opens for v in s.space(0).opens
        ),
    ),
]


@suite("topology-core", 200, TOPOLOGY_CORE, "finite topology, closure, products, separation, HX topology and duality")
def build_topology_core(gen: InstanceGenerator) -> Specimen:
    x = gen.space(max_points=min(4, gen.cfg.max_points + 1))
    y = gen.space(max_points=min(2, gen.cfg.max_points))
    return Specimen(spaces=(x, y), seed=gen.seed())


# appendixA-2cells


def _pointwise_le(f: ContinuousMap, g: ContinuousMap) -> bool:
    return all(f.target.le(f(i), g(i)) for i in range(f.source.size))


def _reflects_order_and_covers(f: ContinuousMap) -> bool:
    x, y = f.source, f.target
    reflects = all(x.le(i, j) == y.le(f(i), f(j)) for i in range(x.size) for j in range(x.size))
    covers = all(any(y.equivalent(f(i), j) for i in range(x.size)) for j in range(y.size))
    return reflects and covers


def _h_two_functor(s: Specimen) -> bool:
    f, g = s.map(0), s.map(1)
    if not tp.le_2cell(f, g):
        return True
    return all(hs.push_closed(f, c) <= hs.push_closed(g, c) for c in _closed_sets(f.source))


def _v_two_functor(s: Specimen) -> bool:
    f, g = s.map(0), s.map(1)
    if not tp.le_2cell(f, g):
        return True
    nu = s.valuation(0)
    return va.pushforward(f, nu) <= va.pushforward(g, nu)


def _codiscrete_equivalent(s: Specimen) -> bool:
    n = max(1, s.space(0).size)
    codiscrete = FiniteSpace.indiscrete([str(i) for i in range(n)])
    point = FiniteSpace.discrete(["*"])
    return tp.is_equivalence(ContinuousMap.constant(codiscrete, point, 0)).is_equivalence


APPENDIX_A = [
    Diagram("2-cell-criteria", lambda s: tp.le_2cell(s.map(0), s.map(1)), lambda s: _pointwise_le(s.map(0), s.map(1))),
    prop("h-preserves-2-cells", _h_two_functor),
    prop("v-preserves-2-cells", _v_two_functor),
    Diagram(
        "equivalence-criterion",
        lambda s: tp.is_equivalence(s.map(0)).is_equivalence,
        lambda s: _reflects_order_and_covers(s.map(0)),
    ),
    prop("quotient-is-equivalence", lambda s: tp.is_equivalence(tp.kolmogorov_quotient(s.space(0))[1]).is_equivalence),
    prop("codiscrete-spaces-are-equivalent", _codiscrete_equivalent),
]


@suite("appendixA-2cells", 200, APPENDIX_A, "2-cells between maps and equivalences of spaces")
def build_appendix_a(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    y = _nonempty_after(gen, x)
    return Specimen(
        spaces=(x, y),
        maps=((0, 1, gen.assignment(x, y)), (0, 1, gen.assignment(x, y))),
        weights=((0, gen.weights(x)),),
        seed=gen.seed(),
    )


# h-monad


def _small_topologies(limit: int) -> list[FiniteSpace]:
    out: list[FiniteSpace] = []
    for n in range(min(limit, 3) + 1):
        out.extend(enumerate_topologies(n))
    return out


def _hhhx_elements(s: Specimen) -> list[ClosedSet]:
    """Every point of HHHX for two points or fewer, a seeded sample otherwise."""
    x = s.space(0)
    hhx = hs.build_hyperspace(hs.build_hyperspace(x).space)
    if x.size <= 2:
        return list(hs.iter_downsets(hhx.space))
    rng = s.rng()
    return [hs.sample_downset(hhx.space, rng) for _ in range(100 if x.size == 3 else 20)]


def _hhx_elements(s: Specimen, k: int = 0) -> list[ClosedSet]:
    hx = hs.build_hyperspace(s.space(k))
    if s.space(k).size <= 2:
        return _closed_sets(hx.space)
    rng = s.rng()
    return [hs.sample_downset(hx.space, rng) for _ in range(30)]


def _left_unit_h(s: Specimen) -> list[ClosedSet]:
    hx = hs.build_hyperspace(s.space(0))
    sigma = hs.sigma_map(hx)
    return [hs.mult_union(hx, hs.push_closed(sigma, c)) for c in _closed_sets(s.space(0))]


def _right_unit_h(s: Specimen) -> list[ClosedSet]:
    hx = hs.build_hyperspace(s.space(0))
    return [hs.mult_union(hx, hs.unit_sigma(hx.space, hx.position(c))) for c in _closed_sets(s.space(0))]


def _assoc_inner_first(s: Specimen) -> list[ClosedSet]:
    hx = hs.build_hyperspace(s.space(0))
    hhx = hs.build_hyperspace(hx.space)
    return [hs.mult_union(hx, hs.mult_union(hhx, t)) for t in _hhhx_elements(s)]


def _assoc_outer_first(s: Specimen) -> list[ClosedSet]:
    hx = hs.build_hyperspace(s.space(0))
    hhx = hs.build_hyperspace(hx.space)
    union = hs.union_map(hhx, hx)
    return [hs.mult_union(hx, hs.push_closed(union, t)) for t in _hhhx_elements(s)]


def _union_natural_left(s: Specimen) -> list[ClosedSet]:
    f = s.map(0)
    hx = hs.build_hyperspace(f.source)
    return [hs.push_closed(f, hs.mult_union(hx, fam)) for fam in _hhx_elements(s)]


def _union_natural_right(s: Specimen) -> list[ClosedSet]:
    f = s.map(0)
    hx, hy = hs.build_hyperspace(f.source), hs.build_hyperspace(f.target)
    pushed = hs.push_map(f, hx, hy)
    return [hs.mult_union(hy, hs.push_closed(pushed, fam)) for fam in _hhx_elements(s)]


def _unit_closure_expected(space: FiniteSpace, c: ClosedSet) -> bool:
    return any(c.members & ~space.down[x] == 0 for x in range(space.size))


def _sigma_sharp_kleisli(s: Specimen) -> tuple[list[ClosedSet], list[ClosedSet]]:
    f = s.map(0)
    x, y = f.source, f.target

    def kleisli(i: int) -> ClosedSet:
        return hs.unit_sigma(y, f(i))

    left = [hs.bind_closed(hs.unit_sigma(x, i), kleisli, y) for i in range(x.size)]
    right = [kleisli(i) for i in range(x.size)]
    return left, right


H_MONAD = [
    Diagram("left-unit", _left_unit_h, lambda s: _closed_sets(s.space(0))),
    Diagram("right-unit", _right_unit_h, lambda s: _closed_sets(s.space(0))),
    Diagram("associativity", _assoc_inner_first, _assoc_outer_first),
    Diagram(
        "unit-naturality",
        lambda s: [hs.push_closed(s.map(0), hs.unit_sigma(s.space(0), i)) for i in range(s.space(0).size)],
        lambda s: [hs.unit_sigma(s.space(1), s.map(0)(i)) for i in range(s.space(0).size)],
    ),
    Diagram("multiplication-naturality", _union_natural_left, _union_natural_right),
    Diagram(
        "functoriality",
        lambda s: [hs.push_closed(s.map(1).after(s.map(0)), c) for c in _closed_sets(s.space(0))],
        lambda s: [hs.push_closed(s.map(1), hs.push_closed(s.map(0), c)) for c in _closed_sets(s.space(0))],
    ),
    Diagram(
        "identity",
        lambda s: [hs.push_closed(ContinuousMap.identity(s.space(0)), c) for c in _closed_sets(s.space(0))],
        lambda s: _closed_sets(s.space(0)),
    ),
    Diagram("kleisli-left-unit", lambda s: _sigma_sharp_kleisli(s)[0], lambda s: _sigma_sharp_kleisli(s)[1]),
    Diagram(
        "kleisli-right-unit",
        lambda s: [
            hs.bind_closed(c, lambda i: hs.unit_sigma(s.space(0), i), s.space(0)) for c in _closed_sets(s.space(0))
        ],
        lambda s: _closed_sets(s.space(0)),
    ),
    Diagram(
        "unit-closure",
        lambda s: [hs.unit_closure_membership(s.space(0), c) for c in _closed_sets(s.space(0))],
        lambda s: [_unit_closure_expected(s.space(0), c) for c in _closed_sets(s.space(0))],
    ),
    Diagram(
        "unit-embedding-iff-t0",
        lambda s: hs.sigma_is_embedding(s.space(0)),
        lambda s: tp.check_separation(s.space(0)).is_t0,
    ),
]


@suite("h-monad", 60, H_MONAD, "unit, multiplication and functoriality laws of H")
def build_h_monad(gen: InstanceGenerator) -> Specimen:
    exhaustive = _small_topologies(gen.cfg.max_points)
    x = exhaustive[gen.index] if gen.index < len(exhaustive) else gen.space()
    y = _nonempty_after(gen, x)
    z = _nonempty_after(gen, y)
    return Specimen(
        spaces=(x, y, z),
        maps=((0, 1, gen.assignment(x, y)), (1, 2, gen.assignment(y, z))),
        seed=gen.seed(),
    )


# h-strength


def _strength_multiplication(s: Specimen) -> tuple[list[ClosedSet], list[ClosedSet]]:
    prod = _prod(s)
    x, y = prod.left, prod.right
    hy = hs.build_hyperspace(y)
    hprod = hs.build_hyperspace(prod.space)
    x_hy = tp.product(x, hy.space)
    strength = hs.strength_map_h(prod, hy, hprod)
    family = hs.sample_downset(hy.space, s.rng())
    left = [hs.strength_h(prod, i, hs.mult_union(hy, family)) for i in range(x.size)]
    right = [
        hs.mult_union(hprod, hs.push_closed(strength, hs.strength_h(x_hy, i, family))) for i in range(x.size)
    ]
    return left, right


def _associator(pxy: ProductSpace, p_xy_z: ProductSpace, p_yz: ProductSpace, p_x_yz: ProductSpace) -> ContinuousMap:
    """``(X × Y) × Z → X × (Y × Z)``."""
    assignment = []
    for k in range(p_xy_z.space.size):
        ij, c = p_xy_z.unpair(k)
        a, b = pxy.unpair(ij)
        assignment.append(p_x_yz.pair(a, p_yz.pair(b, c)))
    return ContinuousMap(p_xy_z.space, p_x_yz.space, tuple(assignment))


def _strength_associator(s: Specimen, strength: Callable, push: Callable, datum) -> tuple[list, list]:
    x, y, z = s.space(0), s.space(1), s.space(2)
    pxy = tp.product(x, y)
    p_xy_z = tp.product(pxy.space, z)
    p_yz = tp.product(y, z)
    p_x_yz = tp.product(x, p_yz.space)
    assoc = _associator(pxy, p_xy_z, p_yz, p_x_yz)
    pairs = [(i, j) for i in range(x.size) for j in range(y.size)]
    left = [push(assoc, strength(p_xy_z, pxy.pair(i, j), datum)) for i, j in pairs]
    right = [strength(p_x_yz, i, strength(p_yz, j, datum)) for i, j in pairs]
    return left, right


def _commutativity(s: Specimen) -> tuple[ClosedSet, ClosedSet]:
    return hs.commutativity_composites_h(_prod(s), s.closed_set(1), s.closed_set(0))


H_STRENGTH = [
    Diagram(
        "strength-unit",
        lambda s: [
            hs.strength_h(_prod(s), i, hs.unit_sigma(s.space(1), j))
            for i in range(s.space(0).size)
            for j in range(s.space(1).size)
        ],
        lambda s: [
            hs.unit_sigma(_prod(s).space, _prod(s).pair(i, j))
            for i in range(s.space(0).size)
            for j in range(s.space(1).size)
        ],
    ),
    Diagram(
        "strength-multiplication",
        lambda s: _strength_multiplication(s)[0],
        lambda s: _strength_multiplication(s)[1],
    ),
    Diagram(
        "strength-unitor",
        lambda s: [hs.push_closed(_prod(s).proj_right, hs.strength_h(_prod(s), i, s.closed_set(0))) for i in range(s.space(0).size)],
        lambda s: [s.closed_set(0) for _ in range(s.space(0).size)],
    ),
    Diagram(
        "strength-associator",
        lambda s: _strength_associator(s, hs.strength_h, hs.push_closed, s.closed_set(2))[0],
        lambda s: _strength_associator(s, hs.strength_h, hs.push_closed, s.closed_set(2))[1],
    ),
    Diagram(
        "costrength-unitor",
        lambda s: [hs.push_closed(_prod(s).proj_left, hs.costrength_h(_prod(s), s.closed_set(1), j)) for j in range(s.space(1).size)],
        lambda s: [s.closed_set(1) for _ in range(s.space(1).size)],
    ),
    Diagram("commutativity", lambda s: _commutativity(s)[0], lambda s: _commutativity(s)[1]),
    Diagram(
        "commutativity-is-product",
        lambda s: _commutativity(s)[0],
        lambda s: hs.product_closed(_prod(s), s.closed_set(1), s.closed_set(0)),
    ),
    prop(
        "strength-is-continuous",
        lambda s: isinstance(
            hs.strength_map_h(_prod(s), hs.build_hyperspace(s.space(1)), hs.build_hyperspace(_prod(s).space)),
            ContinuousMap,
        ),
    ),
]


@suite("h-strength", 200, H_STRENGTH, "strength and costrength of H and the commutativity square")
def build_h_strength(gen: InstanceGenerator) -> Specimen:
    x = gen.space(max_points=min(2, gen.cfg.max_points))
    y = gen.space()
    z = gen.space(max_points=2)
    # closed[0] lives on Y, closed[1] on X, closed[2] on Z
    return Specimen(
        spaces=(x, y, z),
        closed=((1, gen.closed(y)), (0, gen.closed(x)), (2, gen.closed(z))),
        seed=gen.seed(),
    )


# h-algebra


def _structure(s: Specimen) -> tuple[int, ...]:
    """Join map, a perturbed join map, or a random table, chosen by the specimen seed."""
    a = s.space(0)
    ha = hs.build_hyperspace(a)
    if a.size == 0:
        raise PreconditionFailed("no structure map into the empty space")
    rng = s.rng()
    joins = hs.join_structure_map(a)
    mode = rng.random()
    if joins is not None and mode < 0.5:
        return joins
    if joins is not None and mode < 0.75:
        table = list(joins)
        table[int(rng.integers(0, len(table)))] = int(rng.integers(0, a.size))
        return tuple(table)
    return tuple(int(v) for v in rng.integers(0, a.size, size=ha.space.size))


H_ALGEBRA = [
    prop("verdict-consistent", lambda s: hs.check_H_algebra(s.space(0), _structure(s)).consistent),
    prop(
        "algebra-is-sober",
        lambda s: (lambda v: not v.is_algebra or v.sober)(hs.check_H_algebra(s.space(0), _structure(s))),
    ),
    prop(
        "join-map-of-topological-lattice",
        lambda s: (
            hs.join_structure_map(s.space(0)) is None
            or hs.check_H_algebra(s.space(0), hs.join_structure_map(s.space(0))).consistent
        ),
    ),
]


def _lattice_corpus() -> list[FiniteSpace]:
    return [space for space in canned_corpus() if space.size and hs.join_structure_map(space) is not None]


@suite("h-algebra", 100, H_ALGEBRA, "H-algebras are topological complete lattices with join as structure")
def build_h_algebra(gen: InstanceGenerator) -> Specimen:
    lattices = [space for space in _lattice_corpus() if space.size <= max(gen.cfg.max_points, 4)]
    if lattices and gen.rng.random() < 0.5:
        a = lattices[int(gen.rng.integers(0, len(lattices)))]
    else:
        a = gen.space(min_points=1)
    return Specimen(spaces=(a,), seed=gen.seed())


# v-monad


def _tower(s: Specimen) -> list[tuple[ExtNonneg, SimpleSecondOrder]]:
    return [
        (ExtNonneg(s.scalars[0]), _second_order(s, (1, 2), (2, 3))),
        (ExtNonneg(s.scalars[1]), _second_order(s, (3, 4), (4, 5))),
    ]


def _xi(s: Specimen) -> SimpleSecondOrder:
    return _second_order(s, (1, 2), (2, 3))


def _mult_integral(s: Specimen) -> ExtNonneg:
    g = s.function(0)
    return ext_sum(c * va.integrate(nu, g) for c, nu in _xi(s).atoms)


def _kleisli(s: Specimen) -> tuple[Kernel, Kernel, Kernel]:
    return _kernel(s, 0, 5, 6), _kernel(s, 1, 7, 8), _kernel(s, 2, 9, 10)


def _bind_as_mixture(s: Specimen) -> Valuation:
    h = _kleisli(s)[0]
    slot, w = s.weights[0]
    return va.mult_E(SimpleSecondOrder(h.target, tuple((wi, h(i)) for i, wi in enumerate(w) if not wi.is_zero)))


V_MONAD = [
    Diagram(
        "integral-against-unit",
        lambda s: tuple(va.integrate(va.unit_delta(s.space(0), i), s.function(0)) for i in range(s.space(0).size)),
        lambda s: s.function(0).values,
    ),
    Diagram("left-unit", lambda s: va.mult_E(_dirac_mixture(s, 0)), lambda s: s.valuation(0)),
    Diagram("left-unit-mobius", lambda s: va.mult_E(pr.unit_second_order(s.valuation(0))), lambda s: s.valuation(0)),
    Diagram(
        "unit-formulations-agree",
        lambda s: pr.unit_second_order(s.valuation(0)),
        lambda s: _dirac_mixture(s, 0),
        applies=_t0,
    ),
    Diagram("right-unit", lambda s: va.mult_E(SimpleSecondOrder.dirac(s.valuation(0))), lambda s: s.valuation(0)),
    Diagram(
        "associativity",
        lambda s: va.mult_E(va.flatten_tower(s.space(0), _tower(s))),
        lambda s: va.mult_E(va.push_mult_tower(s.space(0), _tower(s))),
    ),
    Diagram("multiplication-integral", lambda s: va.integrate(va.mult_E(_xi(s)), s.function(0)), _mult_integral),
    Diagram(
        "unit-naturality",
        lambda s: [va.pushforward(s.map(0), va.unit_delta(s.space(0), i)) for i in range(s.space(0).size)],
        lambda s: [va.unit_delta(s.space(1), s.map(0)(i)) for i in range(s.space(0).size)],
    ),
    Diagram(
        "multiplication-naturality",
        lambda s: va.pushforward(s.map(0), va.mult_E(_xi(s))),
        lambda s: va.mult_E(va.push_second_order(s.map(0), _xi(s))),
    ),
    Diagram(
        "functoriality",
        lambda s: va.pushforward(s.map(1).after(s.map(0)), s.valuation(0)),
        lambda s: va.pushforward(s.map(1), va.pushforward(s.map(0), s.valuation(0))),
    ),
    Diagram(
        "change-of-variables",
        lambda s: va.integrate(va.pushforward(s.map(0), s.valuation(0)), s.function(1)),
        lambda s: va.integrate(s.valuation(0), va.precompose(s.function(1), s.map(0))),
    ),
    Diagram(
        "kleisli-associativity",
        lambda s: (lambda h, k, l: va.kleisli_compose(l, va.kleisli_compose(k, h)))(*_kleisli(s)),
        lambda s: (lambda h, k, l: va.kleisli_compose(va.kleisli_compose(l, k), h))(*_kleisli(s)),
    ),
    Diagram(
        "kleisli-left-unit",
        lambda s: va.kleisli_compose(va.delta_kernel(s.space(1)), _kleisli(s)[0]),
        lambda s: _kleisli(s)[0],
    ),
    Diagram(
        "kleisli-right-unit",
        lambda s: va.kleisli_compose(_kleisli(s)[0], va.delta_kernel(s.space(0))),
        lambda s: _kleisli(s)[0],
    ),
    Diagram("bind-is-mixture", lambda s: va.bind_valuation(s.valuation(0), _kleisli(s)[0]), _bind_as_mixture),
    Diagram(
        "bind-along-map",
        lambda s: va.bind_valuation(s.valuation(0), va.kernel_of_map(s.map(0))),
        lambda s: va.pushforward(s.map(0), s.valuation(0)),
    ),
]


@suite("v-monad", 500, V_MONAD, "unit and multiplication laws of V, molecular towers, Kleisli composition")
def build_v_monad(gen: InstanceGenerator) -> Specimen:
    x = gen.space(min_points=1)
    y = gen.space(min_points=1)
    z = gen.space(min_points=1)
    return Specimen(
        spaces=(x, y, z),
        weights=(
            (0, gen.weights(x)),
            (0, gen.weights(x)),
            (0, gen.weights(x)),
            (0, gen.weights(x)),
            (0, gen.weights(x)),
            (0, gen.weights(x)),
            (1, gen.weights(y)),
            (1, gen.weights(y)),
            (2, gen.weights(z)),
            (2, gen.weights(z)),
            (0, gen.weights(x)),
        ),
        functions=((0, gen.function_values(x)), (1, gen.function_values(y))),
        maps=((0, 1, gen.assignment(x, y)), (1, 2, gen.assignment(y, z)), (2, 0, gen.assignment(z, x))),
        scalars=tuple(gen.positive_scalar() for _ in range(6)),
        seed=gen.seed(),
    )


# v-strength


def _strength_multiplication_v(s: Specimen) -> tuple[list[Valuation], list[Valuation]]:
    prod = _prod(s)
    xi = _second_order(s, (1, 2), (0, 1))
    left = [va.strength_v(prod, i, va.mult_E(xi)) for i in range(prod.left.size)]
    right = [
        va.mult_E(SimpleSecondOrder(prod.space, tuple((c, va.strength_v(prod, i, nu)) for c, nu in xi.atoms)))
        for i in range(prod.left.size)
    ]
    return left, right


V_STRENGTH = [
    Diagram(
        "strength-unit",
        lambda s: [
            va.strength_v(_prod(s), i, va.unit_delta(s.space(1), j))
            for i in range(s.space(0).size)
            for j in range(s.space(1).size)
        ],
        lambda s: [
            va.unit_delta(_prod(s).space, _prod(s).pair(i, j))
            for i in range(s.space(0).size)
            for j in range(s.space(1).size)
        ],
    ),
    Diagram(
        "strength-multiplication",
        lambda s: _strength_multiplication_v(s)[0],
        lambda s: _strength_multiplication_v(s)[1],
    ),
    Diagram(
        "strength-unitor",
        lambda s: [va.pushforward(_prod(s).proj_right, va.strength_v(_prod(s), i, s.valuation(0))) for i in range(s.space(0).size)],
        lambda s: [s.valuation(0) for _ in range(s.space(0).size)],
    ),
    Diagram(
        "strength-associator",
        lambda s: _strength_associator(s, va.strength_v, va.pushforward, s.valuation(4))[0],
        lambda s: _strength_associator(s, va.strength_v, va.pushforward, s.valuation(4))[1],
    ),
    Diagram(
        "costrength-unitor",
        lambda s: [va.pushforward(_prod(s).proj_left, va.costrength_v(_prod(s), s.valuation(3), j)) for j in range(s.space(1).size)],
        lambda s: [s.valuation(3) for _ in range(s.space(1).size)],
    ),
]


@suite("v-strength", 200, V_STRENGTH, "strength and costrength of V")
def build_v_strength(gen: InstanceGenerator) -> Specimen:
    x = gen.space(max_points=min(2, gen.cfg.max_points))
    y = gen.space()
    z = gen.space(max_points=2)
    return Specimen(
        spaces=(x, y, z),
        weights=(
            (1, gen.weights(y)),
            (1, gen.weights(y)),
            (1, gen.weights(y)),
            (0, gen.weights(x)),
            (2, gen.weights(z)),
        ),
        scalars=(gen.positive_scalar(), gen.positive_scalar()),
        seed=gen.seed(),
    )


# v-fubini


def _rectangles(s: Specimen) -> tuple[list[ExtNonneg], list[ExtNonneg]]:
    prod = _prod(s)
    nu, rho = s.valuation(0), s.valuation(1)
    joint = va.product_valuation(prod, nu, rho)
    pairs = [(u, v) for u in prod.left.opens for v in prod.right.opens]
    return [joint(prod.rectangle(u, v)) for u, v in pairs], [nu(u) * rho(v) for u, v in pairs]


def _finite_integrals(s: Specimen) -> bool:
    return not (
        va.integrate(s.valuation(0), s.function(0)).is_infinite
        or va.integrate(s.valuation(1), s.function(1)).is_infinite
    )


V_FUBINI = [
    Diagram(
        "fubini",
        lambda s: va.fubini_composites(_prod(s), s.valuation(0), s.valuation(1))[0],
        lambda s: va.fubini_composites(_prod(s), s.valuation(0), s.valuation(1))[1],
    ),
    Diagram(
        "fubini-is-product",
        lambda s: va.fubini_composites(_prod(s), s.valuation(0), s.valuation(1))[0],
        lambda s: va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)),
    ),
    Diagram(
        "product-by-inclusion-exclusion",
        lambda s: va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)),
        lambda s: va.product_by_inclusion_exclusion(_prod(s), s.valuation(0), s.valuation(1)),
    ),
    Diagram(
        "product-by-weights",
        lambda s: va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)),
        lambda s: va.product_by_weights(_prod(s), s.weights[0][1], s.weights[1][1]),
    ),
    Diagram("product-on-rectangles", lambda s: _rectangles(s)[0], lambda s: _rectangles(s)[1]),
    Diagram(
        "product-is-valuation",
        lambda s: va.validate_valuation(
            _prod(s).space, va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)).values
        ),
        lambda s: va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)),
    ),
    Diagram(
        "product-of-functions",
        lambda s: va.integrate(
            va.product_valuation(_prod(s), s.valuation(0), s.valuation(1)),
            va.product_function(_prod(s), s.function(0), s.function(1)),
        ),
        lambda s: va.integrate(s.valuation(0), s.function(0)) * va.integrate(s.valuation(1), s.function(1)),
        applies=_finite_integrals,
    ),
]


@suite("v-fubini", 200, V_FUBINI, "product valuations and the Fubini square")
def build_v_fubini(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    y = gen.space()
    return Specimen(
        spaces=(x, y),
        weights=((0, gen.weights(x)), (1, gen.weights(y))),
        functions=((0, gen.function_values(x)), (1, gen.function_values(y))),
        seed=gen.seed(),
    )


# v-duality


def _pointwise(g: LowerSemiFn, h: LowerSemiFn, op: Callable[[ExtNonneg, ExtNonneg], ExtNonneg]) -> LowerSemiFn:
    return LowerSemiFn(g.space, tuple(op(a, b) for a, b in zip(g.values, h.values, strict=True)))


def _orders_agree(s: Specimen) -> bool:
    report = va.order_checks(s.valuation(0), s.valuation(1))
    return report.opens_order == report.integrals_order == report.stochastic_order


V_DUALITY = [
    Diagram(
        "layer-cake-vs-simple-functions",
        lambda s: va.integrate(s.valuation(0), s.function(0)),
        lambda s: va.integrate_by_simple_functions(s.valuation(0), s.function(0)),
    ),
    Diagram(
        "additive-in-function",
        lambda s: va.integrate(s.valuation(0), _pointwise(s.function(0), s.function(1), lambda a, b: a + b)),
        lambda s: va.integrate(s.valuation(0), s.function(0)) + va.integrate(s.valuation(0), s.function(1)),
    ),
    Diagram(
        "additive-in-valuation",
        lambda s: va.integrate(s.valuation(0) + s.valuation(1), s.function(0)),
        lambda s: va.integrate(s.valuation(0), s.function(0)) + va.integrate(s.valuation(1), s.function(0)),
    ),
    Diagram(
        "homogeneous",
        lambda s: va.integrate(s.valuation(0).scaled(s.scalars[0]), s.function(0)),
        lambda s: va.integrate(s.valuation(0), s.function(0)) * s.scalars[0],
    ),
    Diagram(
        "indicators-recover-valuation",
        lambda s: tuple(va.integrate(s.valuation(0), LowerSemiFn.indicator(s.space(0), u)) for u in s.space(0).opens),
        lambda s: s.valuation(0).values,
    ),
    prop(
        "monotone-in-function",
        lambda s: va.integrate(s.valuation(0), s.function(0))
        <= va.integrate(s.valuation(0), _pointwise(s.function(0), s.function(1), max)),
    ),
    prop("orders-agree", _orders_agree, applies=lambda s: s.space(0).size <= 3),
]


@suite("v-duality", 500, V_DUALITY, "lower integral: oracle agreement, linearity, duality with valuations")
def build_v_duality(gen: InstanceGenerator) -> Specimen:
    x = gen.space(max_points=min(5, gen.cfg.max_points + 2))
    return Specimen(
        spaces=(x,),
        weights=((0, gen.weights(x)), (0, gen.weights(x))),
        functions=((0, gen.function_values(x)), (0, gen.function_values(x))),
        scalars=(gen.scalar(),),
        seed=gen.seed(),
    )


# v-portmanteau


def _threshold(s: Specimen) -> Fraction:
    total = va.integrate(s.valuation(0), s.function(0))
    if total.is_infinite:
        return s.scalars[1]
    return total.finite * s.scalars[0]


def _certificate_valid(s: Specimen) -> bool:
    nu, f, r = s.valuation(0), s.function(0), _threshold(s)
    return va.check_certificate(va.portmanteau_witness(nu, f, r), nu, f, r)


def _certificate_neighbourhood(s: Specimen) -> bool:
    nu, f, r = s.valuation(0), s.function(0), _threshold(s)
    certificate = va.portmanteau_witness(nu, f, r)
    rho = s.valuation(1)
    if not all(rho(u) > t for u, t in certificate.pairs):
        return True
    return va.integrate(rho, f) > r


V_PORTMANTEAU = [
    prop("certificate-passes-checker", _certificate_valid),
    prop("certificate-opens-lie-inside", _certificate_neighbourhood),
    Diagram(
        "integral-membership",
        lambda s: va.topology_membership(s.valuation(0), va.SubbasicIntegral(s.function(0), _threshold(s))),
        lambda s: va.integrate(s.valuation(0), s.function(0)) > _threshold(s),
    ),
    Diagram(
        "subbasic-open-as-integral",
        lambda s: [
            va.topology_membership(s.valuation(0), va.SubbasicOpen(u, _threshold(s))) for u in s.space(0).opens
        ],
        lambda s: [
            va.topology_membership(
                s.valuation(0), va.SubbasicIntegral(LowerSemiFn.indicator(s.space(0), u), _threshold(s))
            )
            for u in s.space(0).opens
        ],
    ),
]


@suite("v-portmanteau", 200, V_PORTMANTEAU, "weak topology: certificates by subbasic opens")
def build_v_portmanteau(gen: InstanceGenerator) -> Specimen:
    x = gen.space(min_points=1)
    den = int(gen.rng.integers(2, gen.cfg.weight_denominator_bound + 2))
    fraction = Fraction(int(gen.rng.integers(0, den)), den)
    return Specimen(
        spaces=(x,),
        weights=((0, gen.weights(x)), (0, gen.weights(x))),
        functions=((0, gen.function_values(x)),),
        scalars=(fraction, gen.scalar()),
        seed=gen.seed(),
    )


# p-submonad


def _mixture(s: Specimen) -> SimpleSecondOrder:
    total = s.scalars[0] + s.scalars[1]
    return SimpleSecondOrder.of(
        s.space(0),
        [
            (s.scalars[0] / total, _probability(s, 1).underlying),
            (s.scalars[1] / total, _probability(s, 2).underlying),
        ],
    )


P_SUBMONAD = [
    prop(
        "unit-is-probability",
        lambda s: all(
            pr.as_probability(va.unit_delta(s.space(0), i)).underlying.total == 1 for i in range(s.space(0).size)
        ),
    ),
    prop("multiplication-is-probability", lambda s: pr.as_probability(va.mult_E(_mixture(s))).underlying.total == 1),
    Diagram("multiplication-on-measures", lambda s: pr.mult_E_measure(_mixture(s)).underlying, lambda s: va.mult_E(_mixture(s))),
    Diagram(
        "pushforward",
        lambda s: pr.push_probability(s.map(0), _probability(s, 0)).underlying,
        lambda s: va.pushforward(s.map(0), _probability(s, 0).underlying),
    ),
    Diagram(
        "multiplication-naturality",
        lambda s: pr.push_probability(s.map(0), pr.mult_E_measure(_mixture(s))),
        lambda s: pr.mult_E_measure(va.push_second_order(s.map(0), _mixture(s))),
    ),
    prop(
        "strength-is-probability",
        lambda s: all(
            pr.strength_p(_prod(s), i, _probability(s, 3)).underlying.total == 1 for i in range(s.space(0).size)
        ),
    ),
    Diagram(
        "a-topology",
        lambda s: [pr.a_topology_membership(_probability(s, 0), u, s.scalars[2]) for u in s.space(0).opens],
        lambda s: [_probability(s, 0)(u) > s.scalars[2] for u in s.space(0).opens],
    ),
]


@suite("p-submonad", 300, P_SUBMONAD, "probability valuations form a submonad of V")
def build_p_submonad(gen: InstanceGenerator) -> Specimen:
    x = gen.space(min_points=1)
    y = gen.space(min_points=1)
    den = int(gen.rng.integers(1, gen.cfg.weight_denominator_bound + 1))
    return Specimen(
        spaces=(x, y),
        weights=(
            (0, gen.probability_weights(x)),
            (0, gen.probability_weights(x)),
            (0, gen.probability_weights(x)),
            (1, gen.probability_weights(y)),
        ),
        maps=((0, 1, gen.assignment(x, y)),),
        scalars=(gen.positive_scalar(), gen.positive_scalar(), Fraction(int(gen.rng.integers(0, den + 1)), den)),
        seed=gen.seed(),
    )


# p-extension


def _extended(s: Specimen, k: int = 0):
    return pr.extend_to_measure(s.valuation(k))


def _quotient_round_trip(s: Specimen) -> tuple[Valuation, Valuation]:
    measure = _extended(s, 1)
    nu = s.valuation(1)
    if measure.quotient is None:
        return pr.restriction(measure), nu
    return pr.restriction(measure), va.pushforward(measure.quotient, nu)


P_EXTENSION = [
    Diagram("round-trip", lambda s: pr.restriction(_extended(s)), lambda s: s.valuation(0)),
    Diagram(
        "weights-recovered",
        lambda s: tuple(ExtNonneg(w) for w in _extended(s).weights),
        lambda s: s.weights[0][1],
    ),
    Diagram(
        "integral-agrees",
        lambda s: pr.integrate_measure(_extended(s), s.function(0)),
        lambda s: va.integrate(s.valuation(0), s.function(0)),
    ),
    Diagram(
        "support-has-full-measure",
        lambda s: _extended(s).measure(sp.support(s.valuation(0)).members),
        lambda s: _extended(s).total,
    ),
    Diagram(
        "support-is-least-full-closed-set",
        lambda s: sp.support_of_measure(_extended(s)),
        lambda s: sp.support(s.valuation(0)),
    ),
    Diagram("quotient-round-trip", lambda s: _quotient_round_trip(s)[0], lambda s: _quotient_round_trip(s)[1]),
]


@suite("p-extension", 500, P_EXTENSION, "valuations extend uniquely to measures by Möbius inversion")
def build_p_extension(gen: InstanceGenerator) -> Specimen:
    x = gen.space(t0=True)
    q = gen.space()
    return Specimen(
        spaces=(x, q),
        weights=((0, gen.weights(x, infinite=False)), (1, gen.weights(q, infinite=False))),
        functions=((0, gen.function_values(x)),),
        seed=gen.seed(),
    )


# p-product


P_PRODUCT = [
    Diagram(
        "left-marginal",
        lambda s: pr.push_probability(_prod(s).proj_left, pr.product_measure(_prod(s), _probability(s, 0), _probability(s, 1))),
        lambda s: _probability(s, 0),
    ),
    Diagram(
        "right-marginal",
        lambda s: pr.push_probability(_prod(s).proj_right, pr.product_measure(_prod(s), _probability(s, 0), _probability(s, 1))),
        lambda s: _probability(s, 1),
    ),
    Diagram(
        "product-of-point-weights",
        lambda s: pr.product_measure(_prod(s), _probability(s, 0), _probability(s, 1)).underlying,
        lambda s: va.product_by_weights(_prod(s), _normalized_weights(s, 0), _normalized_weights(s, 1)),
    ),
    Diagram(
        "fubini",
        lambda s: va.fubini_composites(_prod(s), _probability(s, 0).underlying, _probability(s, 1).underlying)[0],
        lambda s: va.fubini_composites(_prod(s), _probability(s, 0).underlying, _probability(s, 1).underlying)[1],
    ),
]


@suite("p-product", 200, P_PRODUCT, "product probability measures and their marginals")
def build_p_product(gen: InstanceGenerator) -> Specimen:
    x = gen.space(min_points=1)
    y = gen.space(min_points=1)
    return Specimen(
        spaces=(x, y),
        weights=((0, gen.probability_weights(x)), (1, gen.probability_weights(y))),
        seed=gen.seed(),
    )


# supp-unit


def _valuations(s: Specimen) -> list[Valuation]:
    space = s.space(0)
    return [s.valuation(k) for k in range(len(s.weights))] + [
        va.unit_delta(space, i) for i in range(space.size)
    ]


def _verdict_witness(verdict):
    return verdict.counterexample


SUPP_UNIT = [
    Diagram("unit", lambda s: _verdict_witness(sp.check_monad_morphism(s.space(0), [])), lambda s: None),
    Diagram("support-of-zero", lambda s: sp.support(Valuation.zero(s.space(0))), lambda s: ClosedSet.empty(s.space(0))),
    Diagram(
        "continuity",
        lambda s: _verdict_witness(sp.check_supp_continuity(s.space(0), _valuations(s))),
        lambda s: None,
    ),
    Diagram(
        "test-by-functions",
        lambda s: sp.support_test_lsc(s.valuation(0), s.function(0)),
        lambda s: va.integrate(s.valuation(0), s.function(0)) > 0,
    ),
    Diagram("scaling", lambda s: sp.support(s.valuation(0).scaled(s.scalars[0])), lambda s: sp.support(s.valuation(0))),
    Diagram(
        "sum-is-union",
        lambda s: sp.support(s.valuation(0) + s.valuation(1)).members,
        lambda s: sp.support(s.valuation(0)).members | sp.support(s.valuation(1)).members,
    ),
    prop(
        "monotone",
        lambda s: sp.support(s.valuation(0)) <= sp.support(s.valuation(0) + s.valuation(1))
        and (not s.valuation(1) <= s.valuation(2) or sp.support(s.valuation(1)) <= sp.support(s.valuation(2))),
    ),
    Diagram(
        "hits-positive-opens",
        lambda s: [hs.hit(sp.support(s.valuation(0)), u) for u in s.space(0).opens],
        lambda s: [s.valuation(0)(u) > 0 for u in s.space(0).opens],
    ),
]


@suite("supp-unit", 200, SUPP_UNIT, "supports of Dirac valuations are point closures; support basics")
def build_supp_unit(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    return Specimen(
        spaces=(x,),
        weights=((0, gen.weights(x)), (0, gen.weights(x)), (0, gen.weights(x))),
        functions=((0, gen.function_values(x)),),
        scalars=(gen.positive_scalar(),),
        seed=gen.seed(),
    )


# supp-mult


def _atoms(s: Specimen) -> SimpleSecondOrder:
    count = len(s.scalars)
    return _second_order(s, tuple(range(count)), tuple(range(count)))


def _closure_of_supports(s: Specimen) -> ClosedSet:
    space = s.space(0)
    members = 0
    for _, nu in _atoms(s).atoms:
        members |= sp.support(nu).members
    return ClosedSet(space, space.closure(members))


SUPP_MULT = [
    Diagram(
        "multiplication",
        lambda s: _verdict_witness(sp.check_monad_morphism(s.space(0), [_atoms(s)])),
        lambda s: None,
    ),
    Diagram("closure-of-union", lambda s: sp.support(va.mult_E(_atoms(s))), _closure_of_supports),
]


@suite("supp-mult", 500, SUPP_MULT, "supp commutes with the multiplications of V and H")
def build_supp_mult(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    count = int(gen.rng.integers(1, 4))
    return Specimen(
        spaces=(x,),
        weights=tuple((0, gen.weights(x)) for _ in range(count)),
        scalars=tuple(gen.positive_scalar() for _ in range(count)),
        seed=gen.seed(),
    )


# supp-natural


SUPP_NATURAL = [
    Diagram(
        "naturality",
        lambda s: _verdict_witness(sp.check_supp_naturality(s.map(0), s.valuation(0))),
        lambda s: None,
    ),
    Diagram(
        "closure-of-image",
        lambda s: sp.support(va.pushforward(s.map(0), s.valuation(0))),
        lambda s: ClosedSet(s.space(1), s.space(1).closure(s.map(0).image(sp.support(s.valuation(0)).members))),
    ),
]


@suite("supp-natural", 500, SUPP_NATURAL, "supp is natural in the space")
def build_supp_natural(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    y = _nonempty_after(gen, x)
    return Specimen(
        spaces=(x, y),
        weights=((0, gen.weights(x)),),
        maps=((0, 1, gen.assignment(x, y)),),
        seed=gen.seed(),
    )


# supp-monoidal


SUPP_MONOIDAL = [
    Diagram(
        "monoidal",
        lambda s: _verdict_witness(sp.check_supp_monoidal(_prod(s), s.valuation(0), s.valuation(1))),
        lambda s: None,
    ),
    Diagram(
        "support-of-product",
        lambda s: sp.support(va.product_valuation(_prod(s), s.valuation(0), s.valuation(1))),
        lambda s: hs.product_closed(_prod(s), sp.support(s.valuation(0)), sp.support(s.valuation(1))),
    ),
]


def _pair_of_valuations(gen: InstanceGenerator) -> Specimen:
    x = gen.space()
    y = gen.space()
    return Specimen(
        spaces=(x, y),
        weights=((0, gen.weights(x)), (1, gen.weights(y))),
        seed=gen.seed(),
    )


@suite("supp-monoidal", 200, SUPP_MONOIDAL, "supp preserves strengths and products")
def build_supp_monoidal(gen: InstanceGenerator) -> Specimen:
    return _pair_of_valuations(gen)


# algebra-transfer


def _induced(s: Specimen) -> sp.InducedVAlgebra:
    structure = hs.join_structure_map(s.space(0))
    if structure is None:
        raise PreconditionFailed("space has no join map")
    return sp.induced_V_algebra(s.space(0), structure)


def _second_orders(s: Specimen) -> list[SimpleSecondOrder]:
    return [_second_order(s, (0, 1), (0, 1)), _second_order(s, (2, 3), (2, 3))]


def _join_table(s: Specimen) -> tuple[list[int], list[int | None]]:
    alg = _induced(s)
    a = s.space(0)
    pairs = [(x, y) for x in range(a.size) for y in range(a.size)]
    return [alg.add(x, y) for x, y in pairs], [hs.join_of_closed(a, a.down[x] | a.down[y]) for x, y in pairs]


ALGEBRA_TRANSFER = [
    Diagram("induced-laws", lambda s: _verdict_witness(_induced(s).check_laws(_second_orders(s))), lambda s: None),
    Diagram("induced-cone", lambda s: _verdict_witness(_induced(s).check_cone()), lambda s: None),
    Diagram("addition-is-join", lambda s: _join_table(s)[0], lambda s: _join_table(s)[1]),
    Diagram(
        "zero-scaling-is-bottom",
        lambda s: [_induced(s).scale(Fraction(0), x) for x in range(s.space(0).size)],
        lambda s: [hs.join_of_closed(s.space(0), 0) for _ in range(s.space(0).size)],
    ),
]


@suite("algebra-transfer", 100, ALGEBRA_TRANSFER, "H-algebras induce V-algebras through supp")
def build_algebra_transfer(gen: InstanceGenerator) -> Specimen:
    lattices = _lattice_corpus()
    if gen.rng.random() < 0.5:
        a = lattices[int(gen.rng.integers(0, len(lattices)))]
    else:
        a = gen.space(min_points=1)
    return Specimen(
        spaces=(a,),
        weights=tuple((0, gen.weights(a)) for _ in range(4)),
        scalars=tuple(gen.positive_scalar() for _ in range(4)),
        seed=gen.seed(),
    )


# appendixC-morphism-equivalence


APPENDIX_C = [
    Diagram(
        "strength-iff-monoidal",
        lambda s: sp.check_supp_strength(_prod(s), s.valuation(1)).ok,
        lambda s: sp.check_supp_product(_prod(s), s.valuation(0), s.valuation(1)).ok,
    ),
    Diagram(
        "h-product-from-strength",
        lambda s: hs.commutativity_composites_h(_prod(s), sp.support(s.valuation(0)), sp.support(s.valuation(1)))[0],
        lambda s: hs.product_closed(_prod(s), sp.support(s.valuation(0)), sp.support(s.valuation(1))),
    ),
]


@suite("appendixC-morphism-equivalence", 200, APPENDIX_C, "preserving strengths is preserving the monoidal structure")
def build_appendix_c(gen: InstanceGenerator) -> Specimen:
    return _pair_of_valuations(gen)
