"""Tests for the hyperspace monad H."""

import numpy as np
import pytest

from powerdomains.core.exceptions import NotAValidFunctional, NotClosed, NotClosedFamily
from powerdomains.models.closed import ClosedSet, HitFunctional
from powerdomains.models.space import ContinuousMap, FiniteSpace
from powerdomains.services import hyperspace as hs
from powerdomains.services import topology as tp
from powerdomains.services.lawcheck.generators import enumerate_topologies

NAMED = ["S", "one_point", "discrete2", "indiscrete2", "W", "chain3"]


@pytest.fixture(params=NAMED)
def space(request):
    return request.getfixturevalue(request.param)


def test_hyperspace_of_sierpinski(S):
    """Test that HS is the three-element chain of closed sets."""
    hx = hs.build_hyperspace(S)
    assert hx.closed == (0b00, 0b01, 0b11)
    assert hx.space.points == ("{}", "{0}", "{0,1}")
    assert hx.space.up == (0b111, 0b110, 0b100)


def test_lower_vietoris_is_inclusion_order(space):
    """Test that Hit(U) generates the up-sets of inclusion."""
    hx = hs.build_hyperspace(space)
    assert hs.lower_vietoris_opens(hx) == hx.space.opens


def test_hit_functionals_are_closed_sets(space):
    """Test the duality between closed sets and strict union-preserving functionals."""
    functionals = hs.enumerate_hit_functionals(space)
    assert len(functionals) == len(space.closed_sets)
    for c in hs.iter_downsets(space):
        assert hs.closed_of_functional(hs.functional_of_closed(c)) == c


def test_invalid_functional(S):
    with pytest.raises(NotAValidFunctional):
        HitFunctional(S, (True, True, True))
    with pytest.raises(NotAValidFunctional):
        HitFunctional(S, (False, True, False))


def test_closed_set_validation(S):
    with pytest.raises(NotClosed):
        ClosedSet(S, 0b10)


def test_unit_is_point_closure(S):
    assert hs.unit_sigma(S, "0") == ClosedSet(S, 0b01)
    assert hs.unit_sigma(S, "1") == ClosedSet(S, 0b11)


def test_push_closes_the_image(S, discrete2):
    """Test that f♯C is the closure of the image."""
    f = ContinuousMap.from_mapping(discrete2, S, {"a": "1", "b": "1"})
    assert hs.push_closed(f, ClosedSet(discrete2, 0b01)) == ClosedSet(S, 0b11)
    assert hs.push_closed(f, ClosedSet.empty(discrete2)) == ClosedSet.empty(S)


def test_union_of_a_family(S):
    """Test 𝒰 on a family of closed sets of S."""
    hx = hs.build_hyperspace(S)
    family = hs.family_of(hx, [ClosedSet(S, 0), ClosedSet(S, 0b01)])
    assert hs.mult_union(hx, family) == ClosedSet(S, 0b01)
    with pytest.raises(NotClosedFamily):
        hs.family_of(hx, [ClosedSet.whole(S)])


@pytest.mark.parametrize("x", [*enumerate_topologies(2), *enumerate_topologies(3)], ids=repr)
def test_unit_laws(x):
    """Test 𝒰 ∘ Hσ = id and 𝒰 ∘ σ_H = id on every closed set."""
    hx = hs.build_hyperspace(x)
    sigma = hs.sigma_map(hx)
    for c in hs.iter_downsets(x):
        assert hs.mult_union(hx, hs.push_closed(sigma, c)) == c
        assert hs.mult_union(hx, hs.unit_sigma(hx.space, hx.position(c))) == c


@pytest.mark.parametrize("x", enumerate_topologies(2), ids=repr)
def test_associativity(x):
    """Test 𝒰 ∘ 𝒰 = 𝒰 ∘ H𝒰 on every point of HHHX."""
    hx = hs.build_hyperspace(x)
    hhx = hs.build_hyperspace(hx.space)
    hhhx = hs.build_hyperspace(hhx.space)
    union = hs.union_map(hhx, hx)
    for k in range(hhhx.space.size):
        t = hhhx.closed_at(k)
        assert hs.mult_union(hx, hs.mult_union(hhx, t)) == hs.mult_union(hx, hs.push_closed(union, t))


def test_unit_closure_membership(discrete2, S):
    assert hs.unit_closure_membership(discrete2, ClosedSet(discrete2, 0b01))
    assert hs.unit_closure_membership(discrete2, ClosedSet.empty(discrete2))
    assert not hs.unit_closure_membership(discrete2, ClosedSet.whole(discrete2))
    assert hs.unit_closure_membership(S, ClosedSet.whole(S))


def test_unit_closure_on_the_empty_space():
    """Test that cl σ(∅) is empty, so ∅ is not in it."""
    empty = FiniteSpace.discrete([])
    assert not hs.unit_closure_membership(empty, ClosedSet.empty(empty))


def test_sigma_embedding_iff_t0(space):
    assert hs.sigma_is_embedding(space) == tp.check_separation(space).is_t0


def test_strength(S):
    """Test s(x, C) = closure of {x} × C."""
    prod = tp.product(S, S)
    below = ClosedSet(S, 0b01)
    assert hs.strength_h(prod, 1, below) == ClosedSet(prod.space, 0b0101)
    assert hs.strength_h(prod, 0, below) == ClosedSet(prod.space, 0b0001)
    assert hs.costrength_h(prod, below, 1) == ClosedSet(prod.space, 0b0011)
    assert hs.product_closed(prod, below, below) == ClosedSet(prod.space, 0b0001)


def test_commutativity(S, discrete2):
    """Test that both diagonals of the commutativity square give C × D."""
    prod = tp.product(discrete2, S)
    for c in hs.iter_downsets(discrete2):
        for d in hs.iter_downsets(S):
            first, second = hs.commutativity_composites_h(prod, c, d)
            assert first == second == hs.product_closed(prod, c, d)


def test_sample_downset_is_seeded(W):
    first = hs.sample_downset(W, np.random.default_rng(5))
    second = hs.sample_downset(W, np.random.default_rng(5))
    assert first == second
    assert W.is_closed(first.members)


def test_sample_downset_draws_from_a_maximal_antichain(discrete2, chain3):
    """Test that every subset of an antichain comes out, and only principal sets on a chain."""
    drawn = {hs.sample_downset(discrete2, np.random.default_rng(seed)).members for seed in range(50)}
    assert drawn == {0b00, 0b01, 0b10, 0b11}
    principal = {0} | set(chain3.down)
    for seed in range(20):
        assert hs.sample_downset(chain3, np.random.default_rng(seed)).members in principal


def test_join_algebra(S, W):
    """Test that the join map of a finite lattice is an H-algebra."""
    structure = hs.join_structure_map(S)
    assert structure == (0, 0, 1)
    verdict = hs.check_H_algebra(S, structure)
    assert verdict.is_algebra
    assert verdict.join_map
    assert verdict.is_topological_lattice
    assert verdict.consistent

    lattice = hs.check_H_algebra(W, hs.join_structure_map(W))
    assert lattice.is_algebra
    assert lattice.consistent


def test_non_algebra(S, discrete2):
    verdict = hs.check_H_algebra(S, (0, 0, 0))
    assert not verdict.unit
    assert not verdict.is_algebra
    assert verdict.consistent
    assert hs.join_structure_map(discrete2) is None
