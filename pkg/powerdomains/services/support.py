"""The support map supp : V → H and its checks as a morphism of monads."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from structlog import get_logger

from powerdomains.core.exceptions import Anomaly, NotAnHAlgebra, ShapeMismatch
from powerdomains.models.closed import ClosedSet, HitFunctional
from powerdomains.models.extended import ExtNonneg
from powerdomains.models.measure import FiniteMeasure
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.models.verdict import MorphismVerdict, VerdictBuilder
from powerdomains.services import hyperspace as hs
from powerdomains.services import valuation as va

logger = get_logger()

SCALAR_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3))


def sgn(value: ExtNonneg) -> int:
    """0 on 0, 1 on every positive value including ∞."""
    return 0 if value.is_zero else 1


def support(nu: Valuation) -> ClosedSet:
    """Complement of the union of the null opens.

    Cross-checked against the closed set dual to the functional ``sgn ∘ ν``.
    """
    space = nu.space
    null = 0
    for u in space.opens:
        if sgn(nu(u)) == 0:
            null |= u
    result = ClosedSet(space, space.full & ~null)
    dual = hs.closed_of_functional(
        HitFunctional(space, tuple(bool(sgn(nu(u))) for u in space.opens))
    )
    if dual != result:
        logger.error("Support disagrees with its dual functional", space=repr(space))
        raise Anomaly("support disagrees with the sgn functional", support=repr(result), dual=repr(dual))
    return result


def support_of_measure(m: FiniteMeasure) -> ClosedSet:
    """Intersection of all closed sets of full measure."""
    space = m.space
    total = m.total
    members = space.full
    for c in space.closed_sets:
        if m.measure(c) == total:
            members &= c
    return ClosedSet(space, members)


def support_test_lsc(nu: Valuation, g: LowerSemiFn) -> bool:
    """``sgn⟨ν, g⟩``, asserted equal to ``⟨supp ν, {g > 0}⟩``."""
    if nu.space != g.space:
        raise ShapeMismatch("valuation and function live on different spaces")
    by_integral = bool(sgn(va.integrate(nu, g)))
    by_support = bool(support(nu).members & g.above(ExtNonneg(0)))
    if by_integral != by_support:
        logger.error("Support test disagrees with the integral", integral=by_integral)
        raise Anomaly("support test by lsc functions failed", integral=by_integral, support=by_support)
    return by_integral


def check_supp_continuity(space: FiniteSpace, valuations: Sequence[Valuation]) -> MorphismVerdict:
    """``supp⁻¹(Hit(U)) = θ(U, 0)`` over a family of valuations, for every open ``U``."""
    verdict = VerdictBuilder(f"continuity on {space!r}")
    supports = [support(nu) for nu in valuations]
    for u in space.opens:
        hits = frozenset(k for k, c in enumerate(supports) if c.members & u)
        positive = frozenset(k for k, nu in enumerate(valuations) if nu(u) > 0)
        verdict.compare("preimage-of-hit", hits, positive, open=space.label(u))
    return verdict.build()


def check_supp_naturality(f: ContinuousMap, nu: Valuation) -> MorphismVerdict:
    """``supp(f*ν) = f♯ supp(ν)``."""
    if nu.space != f.source:
        raise ShapeMismatch("valuation does not live on the source of the map")
    verdict = VerdictBuilder(f"naturality along {f.as_mapping()}")
    verdict.compare(
        "naturality",
        support(va.pushforward(f, nu)),
        hs.push_closed(f, support(nu)),
        valuation=nu.as_table(),
    )
    return verdict.build()


def check_monad_morphism(space: FiniteSpace, xis: Sequence[SimpleSecondOrder]) -> MorphismVerdict:
    """Unit square over every point and multiplication square over each ``ξ``.

    The right route of the multiplication square takes the supports of the
    atoms with positive weight, closes them in ``HX`` (``supp♯`` of the
    support of ``ξ``) and applies ``𝒰``.
    """
    verdict = VerdictBuilder(f"monad morphism on {space!r}")
    for x in range(space.size):
        verdict.compare(
            "unit", support(va.unit_delta(space, x)), hs.unit_sigma(space, x), point=space.points[x]
        )
    hx = hs.build_hyperspace(space)
    for xi in xis:
        if xi.space != space:
            raise ShapeMismatch("second-order valuation lives on another space")
        left = support(va.mult_E(xi))
        positions = 0
        for c, nu in xi.atoms:
            if sgn(c):
                positions |= 1 << hx.position(support(nu))
        family = ClosedSet(hx.space, hx.space.closure(positions))
        right = hs.mult_union(hx, family)
        verdict.compare("multiplication", left, right, atoms=len(xi.atoms))
    return verdict.build()


def check_supp_strength(prod: ProductSpace, rho: Valuation) -> MorphismVerdict:
    """``supp(s(x, ρ)) = s(x, supp ρ)`` for every ``x``."""
    verdict = VerdictBuilder("strength square")
    supp_rho = support(rho)
    for x in range(prod.left.size):
        verdict.compare(
            "strength",
            support(va.strength_v(prod, x, rho)),
            hs.strength_h(prod, x, supp_rho),
            point=prod.left.points[x],
        )
    return verdict.build()


def check_supp_product(prod: ProductSpace, nu: Valuation, rho: Valuation) -> MorphismVerdict:
    """Monoidal and opmonoidal squares for a pair of valuations."""
    verdict = VerdictBuilder("monoidal squares")
    joint = va.product_valuation(prod, nu, rho)
    supp_joint = support(joint)
    verdict.compare(
        "monoidal", supp_joint, hs.product_closed(prod, support(nu), support(rho))
    )
    one = FiniteSpace.discrete(["*"])
    verdict.compare("monoidal-unit", support(va.unit_delta(one, 0)), hs.unit_sigma(one, 0))
    verdict.compare(
        "opmonoidal-left",
        support(va.pushforward(prod.proj_left, joint)),
        hs.push_closed(prod.proj_left, supp_joint),
    )
    verdict.compare(
        "opmonoidal-right",
        support(va.pushforward(prod.proj_right, joint)),
        hs.push_closed(prod.proj_right, supp_joint),
    )
    return verdict.build()


def check_supp_monoidal(prod: ProductSpace, nu: Valuation, rho: Valuation) -> MorphismVerdict:
    strength = check_supp_strength(prod, rho)
    product = check_supp_product(prod, nu, rho)
    checks = {**strength.checks, **product.checks}
    return MorphismVerdict(
        f"monoidal on {prod.space!r}",
        checks,
        strength.counterexample or product.counterexample,
    )


class InducedVAlgebra:
    """``e = a ∘ supp`` for an H-algebra ``(A, a)``, with the derived cone operations."""

    def __init__(self, space: FiniteSpace, structure: Sequence[int]):
        self.space = space
        self.hyperspace = hs.build_hyperspace(space)
        self.structure = tuple(structure)

    def __call__(self, nu: Valuation) -> int:
        return self.structure[self.hyperspace.position(support(nu))]

    def zero(self) -> int:
        return self(Valuation.zero(self.space))

    def add(self, x: int, y: int) -> int:
        return self(va.unit_delta(self.space, x) + va.unit_delta(self.space, y))

    def scale(self, r: Fraction, x: int) -> int:
        return self(va.unit_delta(self.space, x).scaled(r))

    def push(self, xi: SimpleSecondOrder) -> Valuation:
        """``e*ξ = Σ cⱼ δ_{e(νⱼ)}``."""
        out = Valuation.zero(self.space)
        for c, nu in xi.atoms:
            out = out + va.unit_delta(self.space, self(nu)).scaled(c)
        return out

    def check_laws(self, xis: Sequence[SimpleSecondOrder]) -> MorphismVerdict:
        verdict = VerdictBuilder(f"V-algebra on {self.space!r}")
        for x in range(self.space.size):
            verdict.compare("unit", self(va.unit_delta(self.space, x)), x, point=self.space.points[x])
        for xi in xis:
            verdict.compare("multiplication", self(va.mult_E(xi)), self(self.push(xi)))
        return verdict.build()

    def check_cone(self, grid: Sequence[Fraction] = SCALAR_GRID) -> MorphismVerdict:
        """Semimodule axioms on a scalar grid, and monotonicity in the scalar."""
        verdict = VerdictBuilder(f"cone on {self.space!r}")
        points = range(self.space.size)
        zero = self.zero()
        add, scale = self.add, self.scale
        for x in points:
            verdict.compare("additive-unit", add(x, zero), x)
            verdict.compare("scalar-one", scale(Fraction(1), x), x)
            verdict.compare("scalar-zero", scale(Fraction(0), x), zero)
            for y in points:
                verdict.compare("commutativity", add(x, y), add(y, x))
                for z in points:
                    verdict.compare("associativity", add(x, add(y, z)), add(add(x, y), z))
                for r in grid:
                    verdict.compare("distributivity-points", scale(r, add(x, y)), add(scale(r, x), scale(r, y)))
            for r in grid:
                for s in grid:
                    verdict.compare("distributivity-scalars", scale(r + s, x), add(scale(r, x), scale(s, x)))
                    verdict.compare("scalar-associativity", scale(r * s, x), scale(r, scale(s, x)))
                    if r <= s:
                        verdict.compare(
                            "monotone-in-scalar", self.space.le(scale(r, x), scale(s, x)), True
                        )
        return verdict.build()


def induced_V_algebra(space: FiniteSpace, structure: Sequence[int]) -> InducedVAlgebra:
    """``ν ↦ a(supp ν)`` for a verified H-algebra."""
    verdict = hs.check_H_algebra(space, structure)
    if not (verdict.is_algebra and verdict.join_map and verdict.is_topological_lattice):
        raise NotAnHAlgebra("structure map is not an H-algebra", verdict=repr(verdict))
    return InducedVAlgebra(space, structure)
