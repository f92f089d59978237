"""Valuation monad V: integration, δ, ℰ, Kleisli composition, strength, products, weak topology."""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from structlog import get_logger

from powerdomains.core.exceptions import (
    Anomaly,
    NotModular,
    NotMonotone,
    NotOpen,
    NotStrict,
    OrderNotClosed,
    PreconditionFailed,
    ShapeMismatch,
)
from powerdomains.models.extended import INFINITY, ONE, ZERO, ExtNonneg, Number, ext_sum, signed_combination
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace, iter_bits, mask_of
from powerdomains.models.valuation import Kernel, LowerSemiFn, SimpleSecondOrder, Valuation, weights_tuple
from powerdomains.services import topology

logger = get_logger()

Tower = Sequence[tuple[ExtNonneg, SimpleSecondOrder]]


@dataclass(frozen=True)
class SubbasicOpen:
    """``θ(U, r) = {ν : ν(U) > r}``."""

    open: int
    threshold: Fraction


@dataclass(frozen=True)
class SubbasicIntegral:
    """``Θ(f, r) = {ν : ⟨ν, f⟩ > r}``."""

    function: LowerSemiFn
    threshold: Fraction


@dataclass(frozen=True)
class CertificateTerm:
    open: int
    threshold: Fraction
    coefficient: Fraction


@dataclass(frozen=True)
class PortmanteauCertificate:
    """Subbasic opens ``θ(Uᵢ, rᵢ)`` whose intersection lies inside ``Θ(f, r)``."""

    terms: tuple[CertificateTerm, ...]
    threshold: Fraction

    @property
    def pairs(self) -> list[tuple[int, Fraction]]:
        return [(t.open, t.threshold) for t in self.terms]


@dataclass(frozen=True)
class OrderReport:
    opens_order: bool
    integrals_order: bool
    stochastic_order: bool


# Construction and validation


def valuation_from_weights(
    space: FiniteSpace, weights: Sequence[Number | str] | dict[str, Number | str]
) -> Valuation:
    w = weights_tuple(space, weights)
    return Valuation(space, tuple(ext_sum(w[i] for i in iter_bits(u)) for u in space.opens))


def validate_valuation(
    space: FiniteSpace, table: Sequence[Number | str] | Mapping[int, Number | str]
) -> Valuation:
    """Check strictness, monotonicity and modularity of a table on the opens."""
    opens = space.opens
    if isinstance(table, Mapping):
        for u in table:
            if u not in space.open_position:
                raise NotOpen("table mentions a non-open set", subset=space.label(u))
        missing = [space.label(u) for u in opens if u not in table]
        if missing:
            raise ShapeMismatch("table does not cover the opens", missing=missing)
        values = tuple(ExtNonneg(table[u]) for u in opens)
    else:
        if len(table) != len(opens):
            raise ShapeMismatch("table does not cover the opens", size=len(table))
        values = tuple(ExtNonneg(v) for v in table)
    nu = Valuation(space, values)

    if not nu(0).is_zero:
        raise NotStrict("valuation of ∅ is not 0", value=str(nu(0)))
    for u in opens:
        for v in opens:
            if u & ~v == 0 and not nu(u) <= nu(v):
                raise NotMonotone(
                    "valuation decreases along an inclusion",
                    smaller=space.label(u),
                    larger=space.label(v),
                    values=[str(nu(u)), str(nu(v))],
                )
    for a_pos, u in enumerate(opens):
        for v in opens[a_pos + 1 :]:
            if nu(u | v) + nu(u & v) != nu(u) + nu(v):
                raise NotModular(
                    "valuation is not modular",
                    left=space.label(u),
                    right=space.label(v),
                    union_plus_meet=str(nu(u | v) + nu(u & v)),
                    sum=str(nu(u) + nu(v)),
                )
    return nu


# Integration


def layers(g: LowerSemiFn) -> list[tuple[ExtNonneg, int]]:
    """Layer-cake decomposition ``g = Σ hᵢ · 1_{Uᵢ}`` over the distinct values of ``g``."""
    finite = sorted({v for v in g.values if not v.is_infinite and not v.is_zero})
    out = []
    previous = ZERO
    for v in finite:
        out.append((v - previous, g.at_least(v)))
        previous = v
    top = g.at_least(INFINITY)
    if top:
        out.append((INFINITY, top))
    return out


def integrate(nu: Valuation, g: LowerSemiFn) -> ExtNonneg:
    """Lower integral ``⟨ν, g⟩``."""
    if nu.space != g.space:
        raise ShapeMismatch("valuation and function live on different spaces")
    return ext_sum(height * nu(level) for height, level in layers(g))


def _peel(nu: Valuation, values: Sequence[ExtNonneg]) -> ExtNonneg:
    remaining = list(values)
    total = ZERO
    while True:
        support = mask_of(i for i, v in enumerate(remaining) if not v.is_zero)
        if not support:
            return total
        step = min(remaining[i] for i in iter_bits(support))
        total = total + step * nu(support)
        if step.is_infinite:
            return total
        remaining = [v if v.is_zero else v - step for v in remaining]


def iter_monotone(space: FiniteSpace, choices: Sequence[Sequence[ExtNonneg]]) -> Iterator[tuple[ExtNonneg, ...]]:
    """Monotone functions with ``f(x) ∈ choices[x]``, by depth-first search."""
    order = sorted(range(space.size), key=lambda i: bin(space.down[i]).count("1"))
    assigned: list[ExtNonneg | None] = [None] * space.size

    def walk(pos: int) -> Iterator[tuple[ExtNonneg, ...]]:
        if pos == len(order):
            yield tuple(v for v in assigned if v is not None)
            return
        x = order[pos]
        for c in choices[x]:
            ok = True
            for j in range(space.size):
                value = assigned[j]
                if value is None:
                    continue
                if space.le(j, x) and not value <= c:
                    ok = False
                    break
                if space.le(x, j) and not c <= value:
                    ok = False
                    break
            if ok:
                assigned[x] = c
                yield from walk(pos + 1)
                assigned[x] = None

    yield from walk(0)


def integrate_by_simple_functions(nu: Valuation, g: LowerSemiFn) -> ExtNonneg:
    """Supremum of ``⟨ν, s⟩`` over simple lsc ``s ≤ g`` valued in ``g``'s values.

    Each ``s`` is integrated by repeatedly peeling off its smallest
    positive value on its support.
    """
    if nu.space != g.space:
        raise ShapeMismatch("valuation and function live on different spaces")
    levels = sorted(set(g.values) | {ZERO})
    choices = [[v for v in levels if v <= g(i)] for i in range(g.space.size)]
    best = ZERO
    for s in iter_monotone(g.space, choices):
        best = max(best, _peel(nu, s))
    return best


def precompose(g: LowerSemiFn, f: ContinuousMap) -> LowerSemiFn:
    """``g ∘ f``."""
    if g.space != f.target:
        raise ShapeMismatch("function does not live on the target of the map")
    return LowerSemiFn(f.source, tuple(g(f(i)) for i in range(f.source.size)))


# Monad structure


def pushforward(f: ContinuousMap, nu: Valuation) -> Valuation:
    """``f*ν(U) = ν(f⁻¹U)``."""
    if nu.space != f.source:
        raise ShapeMismatch("valuation does not live on the source of the map")
    return Valuation(f.target, tuple(nu(f.preimage(u)) for u in f.target.opens))


def unit_delta(space: FiniteSpace, point: str | int) -> Valuation:
    i = space.index(point)
    return Valuation(space, tuple(ONE if (u >> i) & 1 else ZERO for u in space.opens))


def mult_E(xi: SimpleSecondOrder) -> Valuation:
    """``ℰ(Σ cⱼ δ_{νⱼ}) = Σ cⱼ νⱼ``."""
    out = Valuation.zero(xi.space)
    for weight, inner in xi.atoms:
        out = out + inner.scaled(weight)
    return out


def push_second_order(f: ContinuousMap, xi: SimpleSecondOrder) -> SimpleSecondOrder:
    """``VVf`` on a molecular element."""
    return SimpleSecondOrder(f.target, tuple((c, pushforward(f, nu)) for c, nu in xi.atoms))


def flatten_tower(space: FiniteSpace, tower: Tower) -> SimpleSecondOrder:
    """``ℰ_{VX}`` on a molecular third-level element ``Σ aₖ δ_{ξₖ}``."""
    atoms = []
    for a, xi in tower:
        if xi.space != space:
            raise ShapeMismatch("tower level lives on another space")
        atoms.extend((a * c, nu) for c, nu in xi.atoms)
    return SimpleSecondOrder(space, tuple(atoms))


def push_mult_tower(space: FiniteSpace, tower: Tower) -> SimpleSecondOrder:
    """``Vℰ`` on a molecular third-level element."""
    return SimpleSecondOrder(space, tuple((a, mult_E(xi)) for a, xi in tower))


def bind_valuation(nu: Valuation, kernel: Kernel) -> Valuation:
    """``U ↦ ⟨ν, y ↦ k(y)(U)⟩``, the Kleisli extension of ``k`` applied to ``ν``."""
    if nu.space != kernel.source:
        raise ShapeMismatch("valuation does not live on the kernel's source")
    target = kernel.target
    values = []
    for pos, _ in enumerate(target.opens):
        g = LowerSemiFn(kernel.source, tuple(kernel(y).values[pos] for y in range(kernel.source.size)))
        values.append(integrate(nu, g))
    return Valuation(target, tuple(values))


def kleisli_compose(k: Kernel, h: Kernel) -> Kernel:
    """``(k ∘ h)(x)(U) = ⟨h(x), y ↦ k(y)(U)⟩``; the result is re-validated as a kernel."""
    if k.source != h.target:
        raise ShapeMismatch("kernels are not composable")
    return Kernel(h.source, k.target, tuple(bind_valuation(h(x), k) for x in range(h.source.size)))


def delta_kernel(space: FiniteSpace) -> Kernel:
    return Kernel(space, space, tuple(unit_delta(space, i) for i in range(space.size)))


def kernel_of_map(f: ContinuousMap) -> Kernel:
    """``δ ∘ f``."""
    return Kernel(f.source, f.target, tuple(unit_delta(f.target, f(i)) for i in range(f.source.size)))


# Strength and products


def strength_v(prod: ProductSpace, point: int, nu: Valuation) -> Valuation:
    """``s(x, ν) = (j_x)*ν``."""
    return pushforward(prod.insert_left(point), nu)


def costrength_v(prod: ProductSpace, nu: Valuation, point: int) -> Valuation:
    """``t(ν, y) = (i_y)*ν``."""
    return pushforward(prod.insert_right(point), nu)


def product_valuation(prod: ProductSpace, nu: Valuation, rho: Valuation) -> Valuation:
    """``ν ⊗ ρ`` from its rectangle values ``ν(U)·ρ(V)``.

    Each open is split as ``↑p ∪ W'`` at a minimal point ``p`` and evaluated
    by binary modularity, memoised over the opens. Cross-checked against
    ``ν(U)·ρ(V)`` on every rectangle.
    """
    if nu.space != prod.left or rho.space != prod.right:
        raise ShapeMismatch("valuations do not match the product factors")
    space = prod.space
    memo: dict[int, ExtNonneg] = {0: ZERO}

    def measure(w: int) -> ExtNonneg:
        if w in memo:
            return memo[w]
        p = next(i for i in iter_bits(w) if space.down[i] & w & ~space.up[i] == 0)
        i, j = prod.unpair(p)
        rectangle = space.up[p]
        rest = w & ~(space.up[p] & space.down[p])
        rect_value = nu(prod.left.up[i]) * rho(prod.right.up[j])
        rest_value = measure(rest)
        if rect_value.is_infinite or rest_value.is_infinite:
            value = INFINITY
        else:
            value = rect_value + rest_value - measure(rectangle & rest)
        memo[w] = value
        return value

    out = Valuation(space, tuple(measure(u) for u in space.opens))
    for u in prod.left.opens:
        for v in prod.right.opens:
            if out(prod.rectangle(u, v)) != nu(u) * rho(v):
                where = {"left": prod.left.label(u), "right": prod.right.label(v)}
                logger.error("Product disagrees on a rectangle", **where)
                raise Anomaly("product valuation disagrees on a rectangle", **where)
    logger.debug("Built product valuation", opens=len(space.opens))
    return out


def inclusion_exclusion(prod: ProductSpace, nu: Valuation, rho: Valuation, w: int) -> ExtNonneg:
    """n-ary modularity over the rectangles ``↑p`` at the minimal points of ``w``."""
    space = prod.space
    if not space.is_open(w):
        raise NotOpen("inclusion-exclusion expects an open set", subset=space.label(w))
    minimal: list[int] = []
    seen: set[int] = set()
    for p in iter_bits(w):
        if space.down[p] & w & ~space.up[p] == 0 and space.up[p] not in seen:
            seen.add(space.up[p])
            minimal.append(p)
    terms: list[tuple[int, ExtNonneg]] = []
    for size in range(1, len(minimal) + 1):
        sign = 1 if size % 2 else -1
        for chosen in combinations(minimal, size):
            u, v = prod.left.full, prod.right.full
            for p in chosen:
                i, j = prod.unpair(p)
                u &= prod.left.up[i]
                v &= prod.right.up[j]
            terms.append((sign, nu(u) * rho(v)))
    return signed_combination(terms)


def product_by_inclusion_exclusion(prod: ProductSpace, nu: Valuation, rho: Valuation) -> Valuation:
    return Valuation(prod.space, tuple(inclusion_exclusion(prod, nu, rho, w) for w in prod.space.opens))


def product_by_weights(
    prod: ProductSpace, left_weights: Sequence[ExtNonneg], right_weights: Sequence[ExtNonneg]
) -> Valuation:
    """Weight-product oracle: ``w(x, y) = w(x) · w(y)``."""
    weights = [ZERO] * prod.space.size
    for i, a in enumerate(left_weights):
        for j, b in enumerate(right_weights):
            weights[prod.pair(i, j)] = a * b
    return valuation_from_weights(prod.space, weights)


def fubini_composites(prod: ProductSpace, nu: Valuation, rho: Valuation) -> tuple[Valuation, Valuation]:
    """The diagonals ``ℰ∘t*∘s`` and ``ℰ∘s*∘t``, integrated slice by slice."""
    via_strength = bind_valuation(
        nu, Kernel(prod.left, prod.space, tuple(strength_v(prod, i, rho) for i in range(prod.left.size)))
    )
    via_costrength = bind_valuation(
        rho,
        Kernel(prod.right, prod.space, tuple(costrength_v(prod, nu, j) for j in range(prod.right.size))),
    )
    return via_strength, via_costrength


def product_function(prod: ProductSpace, g: LowerSemiFn, h: LowerSemiFn) -> LowerSemiFn:
    """``(g·h)(x, y) = g(x)·h(y)``."""
    return LowerSemiFn(
        prod.space, tuple(g(i) * h(j) for i, j in (prod.unpair(k) for k in range(prod.space.size)))
    )


# Weak topology


def _finite_threshold(r: Number | ExtNonneg) -> Fraction:
    value = ExtNonneg(r)
    if value.is_infinite:
        raise PreconditionFailed("subbasic thresholds are finite rationals")
    return value.finite


def topology_membership(nu: Valuation, kind: SubbasicOpen | SubbasicIntegral) -> bool:
    if isinstance(kind, SubbasicOpen):
        r = _finite_threshold(kind.threshold)
        if not nu.space.is_open(kind.open):
            raise NotOpen("θ(U, r) needs an open U", subset=nu.space.label(kind.open))
        return nu(kind.open) > r
    r = _finite_threshold(kind.threshold)
    return integrate(nu, kind.function) > r


def portmanteau_witness(nu: Valuation, f: LowerSemiFn, r: Number) -> PortmanteauCertificate:
    """Subbasic opens ``θ(Uᵢ, rᵢ)`` with weights ``cᵢ`` certifying ``ν ∈ Θ(f, r)``.

    Finite case: the layers of ``f`` with positive mass are kept and each
    threshold is ``ν(Uᵢ)·λ`` with ``λ = (r + T)/2T``, so ``Σ cᵢrᵢ`` sits
    halfway between ``r`` and ``T = ⟨ν, f⟩``.
    """
    threshold = _finite_threshold(r)
    total = integrate(nu, f)
    if not total > threshold:
        raise PreconditionFailed("integral does not exceed the threshold", integral=str(total), r=str(threshold))
    decomposition = layers(f)

    for height, u in decomposition:
        if nu(u).is_infinite:
            c = Fraction(1) if height.is_infinite else height.finite
            term = CertificateTerm(u, threshold / c + 1, c)
            return PortmanteauCertificate((term,), threshold)
    if total.is_infinite:
        _, top = decomposition[-1]
        mass = nu(top).finite
        term = CertificateTerm(top, mass / 2, 2 * (threshold + 1) / mass)
        return PortmanteauCertificate((term,), threshold)

    t = total.finite
    scale = (threshold + t) / (2 * t)
    terms = tuple(
        CertificateTerm(u, nu(u).finite * scale, height.finite)
        for height, u in decomposition
        if not height.is_infinite and not nu(u).is_zero
    )
    return PortmanteauCertificate(terms, threshold)


def check_certificate(
    certificate: PortmanteauCertificate, nu: Valuation, f: LowerSemiFn, r: Number
) -> bool:
    """Independent check: ``Σ cᵢ 1_{Uᵢ} ≤ f``, ``ν(Uᵢ) > rᵢ`` and ``Σ cᵢ rᵢ > r``."""
    space = f.space
    threshold = _finite_threshold(r)
    for term in certificate.terms:
        if not space.is_open(term.open) or term.coefficient <= 0 or term.threshold < 0:
            return False
    for i in range(space.size):
        simple = ext_sum(ExtNonneg(t.coefficient) for t in certificate.terms if (t.open >> i) & 1)
        if not simple <= f(i):
            return False
    if not all(nu(t.open) > t.threshold for t in certificate.terms):
        return False
    return sum((t.coefficient * t.threshold for t in certificate.terms), Fraction(0)) > threshold


# Orders


def _canonical_functions(space: FiniteSpace) -> Iterator[LowerSemiFn]:
    grid = [ExtNonneg(k) for k in range(space.size + 1)]
    for values in iter_monotone(space, [grid] * space.size):
        yield LowerSemiFn(space, values)
    for u in space.opens:
        yield LowerSemiFn.indicator(space, u)


def order_checks(
    nu: Valuation, rho: Valuation, auxiliary: Sequence[tuple[str, str]] | None = None
) -> OrderReport:
    """Opens order, integral order and stochastic order between two valuations.

    ``auxiliary`` is a preorder on the points whose graph must be closed in
    ``X × X``; ``None`` stands for equality, under which every open is an
    upper set.
    """
    space = nu.space
    if rho.space != space:
        raise ShapeMismatch("valuations live on different spaces")
    opens_order = nu <= rho
    integrals_order = all(integrate(nu, g) <= integrate(rho, g) for g in _canonical_functions(space))
    if opens_order != integrals_order:
        raise Anomaly("opens order and integral order disagree")

    if auxiliary is None:
        upper_opens = list(space.opens)
    else:
        order = FiniteSpace.from_preorder(space.points, auxiliary)
        square = topology.product(space, space)
        graph = mask_of(square.pair(i, j) for i in range(space.size) for j in iter_bits(order.up[i]))
        if not square.space.is_closed(graph):
            missing = square.space.closure(graph) & ~graph
            raise OrderNotClosed(
                "graph of the preorder is not closed in the product",
                missing=list(square.space.members(missing)),
            )
        upper_opens = [u for u in space.opens if order.is_open(u)]
    stochastic_order = all(nu(u) <= rho(u) for u in upper_opens)
    return OrderReport(opens_order, integrals_order, stochastic_order)
