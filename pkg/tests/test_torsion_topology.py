import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelian_pw.errors import DomainError
from abelian_pw.torsion_topology import (
    FGAbGroup,
    Z,
    ball_pair,
    cone_rp_pair,
    cyclic,
    kunneth_pairs,
    local_homology,
    manifold_obstruction,
    obstruction_closed_form,
    rational_sphere_check,
    tensor,
    tor,
)

groups = st.builds(FGAbGroup, st.integers(0, 3), st.lists(st.integers(2, 12), max_size=3).map(tuple))


def order_of_torsion(grp):
    out = 1
    for d in grp.torsion:
        out *= d
    return out


@given(groups, groups)
def test_tensor_and_tor_are_symmetric(a, b):
    assert tensor(a, b) == tensor(b, a)
    assert tor(a, b) == tor(b, a)


@given(groups)
def test_tensor_with_z_is_identity_and_tor_with_z_vanishes(a):
    assert tensor(a, Z) == a
    assert tor(a, Z).is_zero()


@given(st.integers(1, 30), st.integers(1, 30))
def test_cyclic_tensor_and_tor_are_gcd(m, n):
    import math

    d = math.gcd(m, n)
    assert order_of_torsion(tensor(cyclic(m), cyclic(n))) == d
    assert order_of_torsion(tor(cyclic(m), cyclic(n))) == d


def test_invariant_factors():
    assert FGAbGroup(0, (2, 3)) == cyclic(6)
    assert FGAbGroup(0, (4, 6)).torsion == (2, 12)
    assert str(FGAbGroup(2, (2,))) == "Z^2 + Z/2"
    assert str(FGAbGroup()) == "0"


def test_cone_on_rp3():
    t = cone_rp_pair(3)
    assert t[2] == cyclic(2) and t[4] == Z and t[3].is_zero()
    with pytest.raises(DomainError):
        cone_rp_pair(2)


def test_kunneth_with_ball_is_a_shift():
    t = kunneth_pairs(ball_pair(3), cone_rp_pair(3))
    assert t.groups == {5: cyclic(2), 7: Z}


def test_g2_r2_local_homology():
    t = local_homology(2, 2)
    assert t.groups == {5: cyclic(2), 7: Z}


@pytest.mark.parametrize("g", range(1, 5))
@pytest.mark.parametrize("r", range(2, 5))
def test_closed_form_and_verdict(g, r):
    assert local_homology(g, r) == obstruction_closed_form(g, r)
    rep = manifold_obstruction(g, r)
    assert rep.passed
    assert rep.details["is_obstructed"] == (g >= 2)


def test_rank_one_is_vacuous():
    assert manifold_obstruction(3, 1).passed


@pytest.mark.parametrize("g", range(1, 5))
@pytest.mark.parametrize("r", range(1, 5))
def test_rational_sphere(g, r):
    rep = rational_sphere_check(g, r)
    assert rep.passed
    assert rep.details["rational_betti"] == {"0": 1, str(2 * g * r - 1): 1}


def test_faults():
    assert not manifold_obstruction(2, 2, inject_fault=True).passed
    assert not rational_sphere_check(1, 1, inject_fault=True).passed
    assert not rational_sphere_check(2, 3, inject_fault=True).passed
