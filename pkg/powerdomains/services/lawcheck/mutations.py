"""Single-line semantic mutations of the core, for checking that the suites bite."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from types import ModuleType
from typing import Any
from unittest.mock import patch

from structlog import get_logger

from powerdomains.core.exceptions import ShapeMismatch, UnknownSuite
from powerdomains.models.closed import ClosedSet, Hyperspace
from powerdomains.models.extended import ONE, ZERO, ExtNonneg, ext_sum
from powerdomains.models.measure import FiniteMeasure
from powerdomains.models.space import ContinuousMap, FiniteSpace, ProductSpace, iter_bits
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import hyperspace as hs
from powerdomains.services import probability as pr
from powerdomains.services import support as sp
from powerdomains.services import valuation as va
from powerdomains.services.lawcheck.config import GenConfig
from powerdomains.schemas.report import SuiteReport
from powerdomains.services.lawcheck.runner import run_instance, run_suite
from powerdomains.services.lawcheck.suites import get_suite

logger = get_logger()


@dataclass(frozen=True)
class Mutation:
    name: str
    module: ModuleType
    attribute: str
    replacement: Callable[..., Any]
    suites: tuple[str, ...]
    description: str


def _push_image_no_closure(f: ContinuousMap, c: ClosedSet) -> ClosedSet:
    return ClosedSet(f.target, f.image(c.members))


def _sigma_singleton(space: FiniteSpace, point: str | int) -> ClosedSet:
    return ClosedSet(space, 1 << space.index(point))


def _union_intersection(hx: Hyperspace, family) -> ClosedSet:
    if not isinstance(family, ClosedSet):
        family = hs.family_of(hx, family)
    members = hx.base.full if family.members else 0
    for k in iter_bits(family.members):
        members &= hx.closed[k]
    return ClosedSet(hx.base, hx.base.closure(members))


def _sgn_non_strict(value: ExtNonneg) -> int:
    return 1


def _delta_shifted(space: FiniteSpace, point: str | int) -> Valuation:
    i = (space.index(point) + 1) % space.size
    return Valuation(space, tuple(ONE if (u >> i) & 1 else ZERO for u in space.opens))


def _integrate_drop_top_layer(nu: Valuation, g: LowerSemiFn) -> ExtNonneg:
    if nu.space != g.space:
        raise ShapeMismatch("valuation and function live on different spaces")
    return ext_sum(height * nu(level) for height, level in va.layers(g)[:-1])


def _mult_e_ignore_weights(xi: SimpleSecondOrder) -> Valuation:
    out = Valuation.zero(xi.space)
    for _, inner in xi.atoms:
        out = out + inner
    return out


def _strength_h_no_closure(prod: ProductSpace, point: int, c: ClosedSet) -> ClosedSet:
    return ClosedSet(prod.space, prod.insert_left(point).image(c.members))


def _product_no_correction(prod: ProductSpace, nu: Valuation, rho: Valuation) -> Valuation:
    space = prod.space
    memo: dict[int, ExtNonneg] = {0: ZERO}

    def measure(w: int) -> ExtNonneg:
        if w in memo:
            return memo[w]
        p = next(i for i in iter_bits(w) if space.down[i] & w & ~space.up[i] == 0)
        i, j = prod.unpair(p)
        rest = w & ~(space.up[p] & space.down[p])
        value = nu(prod.left.up[i]) * rho(prod.right.up[j]) + measure(rest)
        memo[w] = value
        return value

    return Valuation(space, tuple(measure(u) for u in space.opens))


def _extend_no_mobius(nu: Valuation) -> FiniteMeasure:
    space = nu.space
    return FiniteMeasure(space, tuple(nu(space.up[x]).finite for x in range(space.size)))


MUTATIONS: dict[str, Mutation] = {
    m.name: m
    for m in (
        Mutation(
            "push-image-no-closure", hs, "push_closed", _push_image_no_closure, ("h-monad",),
            "f♯C is the bare image instead of its closure",
        ),
        Mutation(
            "sigma-singleton", hs, "unit_sigma", _sigma_singleton, ("h-monad",),
            "σ(x) is {x} instead of cl{x}",
        ),
        Mutation(
            "union-intersection", hs, "mult_union", _union_intersection, ("h-monad",),
            "𝒰 intersects the family instead of taking the closed union",
        ),
        Mutation(
            "sgn-non-strict", sp, "sgn", _sgn_non_strict, ("supp-unit",),
            "sgn sends 0 to 1",
        ),
        Mutation(
            "delta-shifted", va, "unit_delta", _delta_shifted, ("v-monad",),
            "δ_x puts its mass on the next point",
        ),
        Mutation(
            "integrate-drop-top-layer", va, "integrate", _integrate_drop_top_layer, ("v-duality",),
            "the lower integral forgets the highest layer",
        ),
        Mutation(
            "mult-e-ignore-weights", va, "mult_E", _mult_e_ignore_weights, ("v-monad",),
            "ℰ sums the atoms without their weights",
        ),
        Mutation(
            "strength-h-no-closure", hs, "strength_h", _strength_h_no_closure, ("h-strength",),
            "s(x, C) is {x} × C without closure",
        ),
        Mutation(
            "product-no-correction", va, "product_valuation", _product_no_correction, ("v-fubini",),
            "the product drops the overlap term of binary modularity",
        ),
        Mutation(
            "extend-no-mobius", pr, "extend_to_measure", _extend_no_mobius, ("p-extension",),
            "point weights are ν(↑x) with no Möbius inversion",
        ),
    )
}


def get_mutation(name: str) -> Mutation:
    try:
        return MUTATIONS[name]
    except KeyError:
        raise UnknownSuite(f"unknown mutation {name!r}", known=sorted(MUTATIONS)) from None


def _shrink_first_failure(report: SuiteReport, cfg: GenConfig) -> SuiteReport:
    if not report.failures:
        return report
    index = report.failures[0].index
    _, _, records = run_instance(get_suite(report.suite), cfg, index)
    rest = [record for record in report.failures if record.index != index]
    return report.model_copy(update={"failures": records + rest})


def run_mutation(
    name: str, cfg: GenConfig | None = None, count: int | None = None
) -> dict[str, SuiteReport]:
    """Run the mutation's suites with the core patched; one report per suite.

    Runs in-process so the patch is visible to every check. Only the first
    failing instance of each suite is shrunk.
    """
    mutation = get_mutation(name)
    cfg = cfg or GenConfig()
    if count is not None:
        cfg = cfg.model_copy(update={"instance_count": count})
    reports: dict[str, SuiteReport] = {}
    with patch.object(mutation.module, mutation.attribute, mutation.replacement):
        for suite_name in mutation.suites:
            report = run_suite(suite_name, cfg, jobs=1, shrink_failures=False)
            reports[suite_name] = _shrink_first_failure(report, cfg)
    logger.info(
        "Ran mutation", mutation=name, failures={suite: r.failed for suite, r in reports.items()}
    )
    return reports

