"""Tests for the valuation monad V."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerdomains.core.exceptions import (
    InvalidSecondOrder,
    NotAKernel,
    NotLowerSemicontinuous,
    NotModular,
    NotMonotone,
    NotStrict,
    PreconditionFailed,
)
from powerdomains.models.extended import INFINITY, ZERO, ExtNonneg
from powerdomains.models.space import ContinuousMap
from powerdomains.models.valuation import Kernel, LowerSemiFn, SimpleSecondOrder, Valuation
from powerdomains.services import topology as tp
from powerdomains.services import valuation as va
from powerdomains.services.lawcheck.generators import w_lattice

weight = st.fractions(min_value=0, max_value=3, max_denominator=6)


def test_validate_table(S, discrete2):
    """Test strictness, monotonicity and modularity checks."""
    nu = va.validate_valuation(S, ["0", "1/3", "1"])
    assert nu(0b10) == Fraction(1, 3)
    assert nu.total == 1
    with pytest.raises(NotStrict):
        va.validate_valuation(S, ["1", "1", "1"])
    with pytest.raises(NotMonotone):
        va.validate_valuation(S, ["0", "1", "1/2"])
    with pytest.raises(NotModular):
        va.validate_valuation(discrete2, ["0", "1", "1", "1"])


def test_weights_and_table_agree(W):
    nu = va.valuation_from_weights(W, {"x": "1/2", "t": "2"})
    assert va.validate_valuation(W, {u: v for u, v in zip(W.opens, nu.values)}) == nu
    assert nu.total == Fraction(5, 2)


def test_lower_semicontinuity(S):
    with pytest.raises(NotLowerSemicontinuous):
        LowerSemiFn.of(S, [1, 0])


def test_integral_layer_cake(S):
    """Test the lower integral by layers against the point-weight sum."""
    nu = va.valuation_from_weights(S, ["1/2", "1/2"])
    g = LowerSemiFn.of(S, [1, 3])
    assert va.layers(g) == [(ExtNonneg(1), 0b11), (ExtNonneg(2), 0b10)]
    assert va.integrate(nu, g) == 2
    assert va.integrate_by_simple_functions(nu, g) == 2
    assert va.integrate(nu, LowerSemiFn.indicator(S, 0b10)) == nu(0b10)


def test_integral_with_infinity(S):
    nu = va.valuation_from_weights(S, ["0", "inf"])
    assert va.integrate(nu, LowerSemiFn.of(S, [0, 1])).is_infinite
    assert va.integrate(nu, LowerSemiFn.of(S, [0, 0])) == ZERO
    assert va.integrate(va.valuation_from_weights(S, ["1", "0"]), LowerSemiFn(S, (INFINITY, INFINITY))).is_infinite


@given(st.tuples(weight, weight, weight, weight), st.lists(st.sampled_from([0, 1, 2, 5]), min_size=4, max_size=4))
def test_layer_cake_matches_simple_functions(weights, raw):
    """Test that both integral definitions agree on the lattice W."""
    space = w_lattice()
    values = [max(raw[j] for j in range(4) if space.le(j, i)) for i in range(4)]
    nu = va.valuation_from_weights(space, list(weights))
    g = LowerSemiFn.of(space, values)
    assert va.integrate(nu, g) == va.integrate_by_simple_functions(nu, g)
    assert va.integrate(nu, g) == sum(w * v for w, v in zip(weights, values))


def test_unit_and_pushforward(S, one_point):
    """Test δ on opens and f*ν on preimages."""
    delta = va.unit_delta(S, "0")
    assert delta.values == (ZERO, ZERO, ExtNonneg(1))
    nu = va.valuation_from_weights(S, ["1/4", "1/2"])
    pushed = va.pushforward(ContinuousMap.constant(S, one_point, "*"), nu)
    assert pushed.total == Fraction(3, 4)


def test_multiplication(S):
    """Test ℰ(Σ cⱼ δ_{νⱼ}) = Σ cⱼ νⱼ."""
    xi = SimpleSecondOrder.of(S, [(2, va.unit_delta(S, 0)), ("1/2", va.unit_delta(S, 1))])
    assert va.mult_E(xi) == va.valuation_from_weights(S, ["2", "1/2"])
    with pytest.raises(InvalidSecondOrder):
        SimpleSecondOrder.of(S, [(0, va.unit_delta(S, 0))])


def test_kleisli_units(S, W):
    """Test the unit laws of bind against δ."""
    nu = va.valuation_from_weights(W, ["1/3", "0", "2", "1"])
    assert va.bind_valuation(nu, va.delta_kernel(W)) == nu

    f = ContinuousMap.from_mapping(S, W, {"0": "x", "1": "t"})
    kernel = va.kernel_of_map(f)
    for i in range(S.size):
        assert va.bind_valuation(va.unit_delta(S, i), kernel) == kernel(i)


def test_kleisli_composition_of_maps(S, discrete2, one_point):
    f = ContinuousMap.from_mapping(discrete2, S, {"a": "0", "b": "1"})
    g = ContinuousMap.constant(S, one_point, "*")
    composite = va.kleisli_compose(va.kernel_of_map(g), va.kernel_of_map(f))
    assert composite == va.kernel_of_map(g.after(f))


def test_kernel_continuity(S):
    with pytest.raises(NotAKernel):
        Kernel(S, S, (va.unit_delta(S, 1), va.unit_delta(S, 0)))


def test_products(S, W):
    """Test the product valuation against weights, inclusion-exclusion and Fubini."""
    prod = tp.product(S, W)
    left = ("1/2", "3")
    right = ("1", "0", "1/4", "2")
    nu = va.valuation_from_weights(S, list(left))
    rho = va.valuation_from_weights(W, list(right))
    joint = va.product_valuation(prod, nu, rho)
    assert joint == va.product_by_weights(
        prod, [ExtNonneg(w) for w in left], [ExtNonneg(w) for w in right]
    )
    assert joint == va.product_by_inclusion_exclusion(prod, nu, rho)
    first, second = va.fubini_composites(prod, nu, rho)
    assert first == second == joint
    assert joint(prod.rectangle(0b10, W.up[3])) == nu(0b10) * rho(W.up[3])


def test_product_function_integral(S, discrete2):
    prod = tp.product(S, discrete2)
    nu = va.valuation_from_weights(S, ["1", "1/2"])
    rho = va.valuation_from_weights(discrete2, ["2", "1/3"])
    g = LowerSemiFn.of(S, [1, 2])
    h = LowerSemiFn.of(discrete2, [3, 0])
    joint = va.product_valuation(prod, nu, rho)
    assert va.integrate(joint, va.product_function(prod, g, h)) == va.integrate(nu, g) * va.integrate(rho, h)


def test_weak_topology(S):
    nu = va.valuation_from_weights(S, ["1/2", "1/2"])
    assert va.topology_membership(nu, va.SubbasicOpen(0b10, Fraction(1, 3)))
    assert not va.topology_membership(nu, va.SubbasicOpen(0b10, Fraction(1, 2)))
    g = LowerSemiFn.of(S, [1, 3])
    assert va.topology_membership(nu, va.SubbasicIntegral(g, Fraction(1)))


def test_portmanteau_certificate(S):
    """Test that a certificate for ν ∈ Θ(f, r) passes the independent check."""
    nu = va.valuation_from_weights(S, ["1/2", "1/2"])
    g = LowerSemiFn.of(S, [1, 3])
    certificate = va.portmanteau_witness(nu, g, 1)
    assert va.check_certificate(certificate, nu, g, 1)
    with pytest.raises(PreconditionFailed):
        va.portmanteau_witness(nu, g, 2)


def test_portmanteau_infinite_mass(S):
    nu = va.valuation_from_weights(S, ["0", "inf"])
    g = LowerSemiFn.of(S, [0, 1])
    certificate = va.portmanteau_witness(nu, g, 5)
    assert va.check_certificate(certificate, nu, g, 5)


def test_orders(S):
    """Test that the opens, integral and stochastic orders agree."""
    low, high = va.unit_delta(S, 0), va.unit_delta(S, 1)
    assert va.order_checks(low, high) == va.OrderReport(True, True, True)
    assert va.order_checks(high, low) == va.OrderReport(False, False, False)


def test_zero_valuation(S):
    assert Valuation.zero(S).total == ZERO
    assert Valuation.zero(S) <= va.unit_delta(S, 0)


def test_product_with_infinite_mass(S, discrete2):
    """Test that ∞·0 = 0 holds on rectangles of the product."""
    prod = tp.product(S, discrete2)
    nu = va.valuation_from_weights(S, ["0", "inf"])
    rho = va.valuation_from_weights(discrete2, ["0", "1"])
    joint = va.product_valuation(prod, nu, rho)
    assert joint == va.product_by_weights(prod, [ZERO, INFINITY], [ZERO, ExtNonneg(1)])
    assert joint.total == INFINITY
    assert joint(prod.rectangle(0b10, 0b01)) == ZERO
