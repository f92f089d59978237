"""Tests for the support map supp : V → H."""

from fractions import Fraction

import pytest

from powerdomains.core.exceptions import NotAnHAlgebra
from powerdomains.models.closed import ClosedSet
from powerdomains.models.extended import INFINITY, ZERO, ExtNonneg
from powerdomains.models.space import ContinuousMap
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import hyperspace as hs
from powerdomains.services import probability as pr
from powerdomains.services import support as sp
from powerdomains.services import topology as tp
from powerdomains.services import valuation as va


def test_sgn():
    assert sp.sgn(ZERO) == 0
    assert sp.sgn(ExtNonneg(Fraction(1, 100))) == 1
    assert sp.sgn(INFINITY) == 1


def test_support_of_dirac(S):
    """Test supp δ_x = cl{x}."""
    assert sp.support(va.unit_delta(S, 1)) == ClosedSet(S, 0b11)
    assert sp.support(va.unit_delta(S, 0)) == ClosedSet(S, 0b01)
    assert sp.support(Valuation.zero(S)) == ClosedSet.empty(S)


def test_support_with_infinite_weight(W):
    nu = va.valuation_from_weights(W, {"x": "inf"})
    assert sp.support(nu) == hs.unit_sigma(W, "x")


def test_support_of_measure_agrees(W):
    """Test that the smallest closed set of full measure is the support."""
    nu = va.valuation_from_weights(W, ["0", "1/2", "0", "1/4"])
    assert sp.support_of_measure(pr.extend_to_measure(nu)) == sp.support(nu)


def test_support_test_lsc(W):
    nu = va.valuation_from_weights(W, {"x": "1"})
    assert sp.support_test_lsc(nu, LowerSemiFn.of(W, [0, 1, 0, 1]))
    assert not sp.support_test_lsc(nu, LowerSemiFn.of(W, [0, 0, 1, 1]))


def test_continuity(S):
    valuations = [
        Valuation.zero(S),
        va.unit_delta(S, 0),
        va.unit_delta(S, 1),
        va.valuation_from_weights(S, ["1/2", "3"]),
    ]
    assert sp.check_supp_continuity(S, valuations).ok


def test_naturality(S, W):
    """Test supp(f*ν) = f♯ supp ν."""
    f = ContinuousMap.from_mapping(W, S, {"0": "0", "x": "0", "y": "1", "t": "1"})
    nu = va.valuation_from_weights(W, ["0", "2", "0", "0"])
    verdict = sp.check_supp_naturality(f, nu)
    assert verdict.ok
    assert verdict.counterexample is None


def test_monad_morphism(S, W):
    """Test the unit and multiplication squares."""
    xis = [
        SimpleSecondOrder.of(S, [(1, va.unit_delta(S, 0)), ("1/2", Valuation.zero(S))]),
        SimpleSecondOrder.of(S, [("3", va.valuation_from_weights(S, ["1", "0"])), (1, va.unit_delta(S, 1))]),
    ]
    assert sp.check_monad_morphism(S, xis).ok
    assert sp.check_monad_morphism(W, [pr.unit_second_order(va.valuation_from_weights(W, ["1", "0", "2", "0"]))]).ok


def test_monoidal(S, discrete2):
    prod = tp.product(S, discrete2)
    nu = va.valuation_from_weights(S, ["1", "0"])
    rho = va.valuation_from_weights(discrete2, ["0", "1/2"])
    verdict = sp.check_supp_monoidal(prod, nu, rho)
    assert verdict.ok
    assert {"strength", "monoidal", "monoidal-unit", "opmonoidal-left", "opmonoidal-right"} <= set(verdict.checks)


def test_induced_v_algebra(S):
    """Test that ν ↦ a(supp ν) is a V-algebra whose addition is the join."""
    algebra = sp.induced_V_algebra(S, hs.join_structure_map(S))
    assert algebra.zero() == 0
    assert algebra.add(0, 1) == 1
    assert algebra.scale(Fraction(0), 1) == 0
    assert algebra.scale(Fraction(5, 2), 1) == 1
    xis = [SimpleSecondOrder.of(S, [(2, va.unit_delta(S, 0)), (1, va.unit_delta(S, 1))])]
    assert algebra.check_laws(xis).ok
    assert algebra.check_cone().ok


def test_induced_requires_an_algebra(S):
    with pytest.raises(NotAnHAlgebra):
        sp.induced_V_algebra(S, (0, 0, 0))
