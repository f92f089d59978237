"""Tests for the probability submonad P and Möbius extension."""

from fractions import Fraction

import pytest

from powerdomains.core.exceptions import InfiniteMass, NotNormalized, PreconditionFailed
from powerdomains.models.extended import ONE
from powerdomains.models.measure import ProbValuation
from powerdomains.models.valuation import LowerSemiFn, SimpleSecondOrder
from powerdomains.services import probability as pr
from powerdomains.services import topology as tp
from powerdomains.services import valuation as va


def test_mobius_function_of_a_chain(chain3):
    mu = pr.mobius_function(chain3)
    assert mu[0, 0] == 1
    assert mu[0, 1] == -1
    assert mu[0, 2] == 0
    assert mu[1, 2] == -1


def test_mobius_needs_t0(indiscrete2):
    with pytest.raises(PreconditionFailed):
        pr.mobius_function(indiscrete2)


def test_extend_sierpinski(S):
    """Test that ν({1}) = 1/3, ν(S) = 1 extends to weights 2/3 and 1/3."""
    nu = va.validate_valuation(S, ["0", "1/3", "1"])
    measure = pr.extend_to_measure(nu)
    assert measure.weights == (Fraction(2, 3), Fraction(1, 3))
    assert measure.as_mapping() == {"0": "2/3", "1": "1/3"}
    assert measure.quotient is None
    assert pr.restriction(measure) == nu


def test_extend_recovers_weights(W):
    weights = ["1/4", "0", "1/2", "1/4"]
    nu = va.valuation_from_weights(W, weights)
    measure = pr.extend_to_measure(nu)
    assert measure.as_mapping() == {"0": "1/4", "x": "0", "y": "1/2", "t": "1/4"}
    g = LowerSemiFn.of(W, [0, 1, 2, 3])
    assert pr.integrate_measure(measure, g) == va.integrate(nu, g)


def test_extend_non_t0_goes_through_the_quotient(indiscrete2):
    nu = va.valuation_from_weights(indiscrete2, ["1/2", "1/2"])
    measure = pr.extend_to_measure(nu)
    assert measure.quotient is not None
    assert measure.weights == (Fraction(1),)


def test_extend_rejects_infinite_mass(S):
    with pytest.raises(InfiniteMass):
        pr.extend_to_measure(va.valuation_from_weights(S, ["0", "inf"]))


def test_unit_second_order(S):
    """Test that Vδ(ν) flattens back to ν."""
    nu = va.valuation_from_weights(S, ["2/3", "1/3"])
    xi = pr.unit_second_order(nu)
    assert len(xi.atoms) == 2
    assert va.mult_E(xi) == nu


def test_probability_valuation(S):
    with pytest.raises(NotNormalized):
        ProbValuation(va.valuation_from_weights(S, ["1", "1"]))
    p = pr.as_probability(va.unit_delta(S, 1))
    assert p(S.full) == ONE
    assert pr.a_topology_membership(p, 0b10, Fraction(1, 2))
    assert not pr.a_topology_membership(p, 0b10, 1)


def test_mixture(S):
    """Test E on a mixture of probability valuations, checked on every subset."""
    mixture = SimpleSecondOrder.of(S, [("1/2", va.unit_delta(S, 0)), ("1/2", va.unit_delta(S, 1))])
    p = pr.mult_E_measure(mixture)
    assert p.underlying == va.valuation_from_weights(S, ["1/2", "1/2"])
    with pytest.raises(NotNormalized):
        pr.mult_E_measure(SimpleSecondOrder.of(S, [("1/2", va.unit_delta(S, 0))]))


def test_product_and_strength(S, discrete2):
    prod = tp.product(S, discrete2)
    p = pr.as_probability(va.valuation_from_weights(S, ["1/3", "2/3"]))
    q = pr.as_probability(va.valuation_from_weights(discrete2, ["1/4", "3/4"]))
    joint = pr.product_measure(prod, p, q)
    assert joint(prod.space.full) == ONE
    assert pr.extend_to_measure(joint.underlying).weights[prod.pair(1, 1)] == Fraction(1, 2)
    assert pr.strength_p(prod, 0, q)(prod.space.full) == ONE
    assert pr.push_probability(prod.proj_left, joint).underlying == p.underlying
