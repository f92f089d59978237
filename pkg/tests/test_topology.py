"""Tests for finite spaces and the topology service."""

import pytest

from powerdomains.core.exceptions import NotAPreorder, NotATopology, NotContinuous, NotOpen
from powerdomains.models.space import ContinuousMap, FiniteSpace
from powerdomains.services import topology as tp
from powerdomains.services.lawcheck.generators import enumerate_topologies

SMALL = [*enumerate_topologies(2), *enumerate_topologies(3)]


def test_sierpinski_opens(S):
    """Test the opens and closed sets of the Sierpiński space."""
    assert S.opens == (0b00, 0b10, 0b11)
    assert S.closed_sets == (0b00, 0b01, 0b11)
    assert S.le(0, 1)
    assert not S.le(1, 0)
    assert tp.specialization(S) == {("0", "0"), ("1", "1"), ("0", "1")}


def test_separation_flags(S, discrete2, indiscrete2, W):
    """Test T0, T1 and sobriety on the canned spaces."""
    assert tp.check_separation(S) == tp.SeparationReport(is_t0=True, is_t1=False, is_sober=True)
    assert tp.check_separation(discrete2) == tp.SeparationReport(is_t0=True, is_t1=True, is_sober=True)
    assert tp.check_separation(indiscrete2) == tp.SeparationReport(is_t0=False, is_t1=False, is_sober=False)
    assert tp.check_separation(W).is_sober


def test_topology_counts():
    """Test the number of labelled topologies on small point sets."""
    assert [len(enumerate_topologies(n)) for n in range(4)] == [1, 1, 4, 29]


@pytest.mark.parametrize("space", SMALL, ids=repr)
def test_opens_are_upsets(space):
    assert space.opens == tp.upsets_by_enumeration(space)


@pytest.mark.parametrize("space", SMALL, ids=repr)
def test_closure_by_intersection(space):
    """Test that down-closure equals the intersection of closed supersets."""
    for subset in range(1 << space.size):
        assert tp.closure(space, subset) == tp.closure_by_intersection(space, subset)


def test_from_opens_rejects_non_topology():
    """Test that an open family missing a union is rejected."""
    with pytest.raises(NotATopology):
        FiniteSpace.from_opens(["a", "b", "c"], [0b000, 0b001, 0b010, 0b111])
    with pytest.raises(NotATopology):
        FiniteSpace.from_opens(["a", "b"], [0b01, 0b11])


def test_from_open_members(S):
    assert FiniteSpace.from_open_members(["0", "1"], [[], ["1"], ["0", "1"]]) == S


def test_from_preorder_rejects_bad_relations():
    """Test reflexivity, transitivity and duplicate point checks."""
    points = ["a", "b", "c"]
    reflexive = [(p, p) for p in points]
    with pytest.raises(NotAPreorder):
        FiniteSpace.from_preorder(points, reflexive + [("a", "b"), ("b", "c")])
    with pytest.raises(NotAPreorder):
        FiniteSpace.from_preorder(points, [("a", "a"), ("b", "b")])
    with pytest.raises(NotAPreorder):
        FiniteSpace.from_preorder(points, reflexive + [("a", "z")])
    with pytest.raises(NotATopology):
        FiniteSpace.from_preorder(["a", "a"], [("a", "a")])


def test_continuous_maps(S):
    """Test that continuity is monotonicity for the specialization order."""
    with pytest.raises(NotContinuous):
        ContinuousMap(S, S, (1, 0))
    identity = ContinuousMap.identity(S)
    assert identity.after(identity) == identity
    assert identity.preimage(0b10) == 0b10


def test_product(S):
    """Test that the product topology is generated by rectangles."""
    prod = tp.product(S, S)
    assert prod.space.size == 4
    assert len(prod.space.opens) == 6
    assert tp.product_opens_from_rectangles(prod) == prod.space.opens
    assert prod.unpair(prod.pair(1, 0)) == (1, 0)
    assert prod.proj_left(prod.pair(1, 0)) == 1


def test_subspace(W):
    sub, inclusion = tp.subspace(W, W.mask(["x", "y"]))
    assert sub.points == ("x", "y")
    assert sub.up == (0b01, 0b10)
    assert inclusion.assignment == (1, 2)


def test_kolmogorov_quotient(indiscrete2):
    """Test that equivalent points are identified and the quotient is an equivalence."""
    quotient, q = tp.kolmogorov_quotient(indiscrete2)
    assert quotient.points == ("a~b",)
    assert q.assignment == (0, 0)
    assert tp.is_equivalence(q).is_equivalence


def test_equivalences(S, discrete2, one_point):
    assert tp.is_equivalence(ContinuousMap.identity(S)).is_equivalence
    result = tp.is_equivalence(ContinuousMap.constant(discrete2, one_point, "*"))
    assert not result.is_equivalence
    assert result.reason


def test_two_cells(S):
    """Test the pointwise order between maps."""
    bottom = ContinuousMap.constant(S, S, "0")
    top = ContinuousMap.constant(S, S, "1")
    identity = ContinuousMap.identity(S)
    assert tp.le_2cell(bottom, identity)
    assert tp.le_2cell(identity, top)
    assert not tp.le_2cell(top, identity)


def test_way_below_is_inclusion(S):
    assert tp.way_below(S, 0b10, 0b11)
    assert not tp.way_below(S, 0b11, 0b10)
    with pytest.raises(NotOpen):
        tp.way_below(S, 0b01, 0b11)


def test_opens_checksum(S, discrete2):
    assert S.opens_checksum == FiniteSpace.chain(2).opens_checksum
    assert S.opens_checksum != discrete2.opens_checksum
