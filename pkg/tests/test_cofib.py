import pytest

from thetakit import simplicial as ss
from thetakit.cofib import (build_PQ, generating_cofibration, has_rlp, reedy_cofibration,
                            theta_count, verify_hom_decomposition)
from thetakit.corpus import walking_arrow_nerve, walking_iso_nerve
from thetakit.kan import ObjectSubset
from thetakit.presheaf import boundary, constant, product, representable, terminal
from thetakit.search import first_nat
from thetakit.theta import bounded, cell, enumerate_objects, tau_theta

T0 = ObjectSubset.bottom(0, 2)
T1 = ObjectSubset.bottom(1, 2)


@pytest.mark.parametrize("t", enumerate_objects(2, 3))
def test_vertex_count(t):
    assert theta_count(0, t) == t.width + 1


def test_q_is_a_product_with_the_simplex():
    pq = build_PQ(1, cell(1, 2), T0)
    # with T = {[0]}, Q glues Delta[1] x Theta[t] to a copy of [0] per vertex of t
    assert pq.Q.validate() is None and pq.P.validate() is None
    assert pq.P_to_Q.check_natural() is None
    assert pq.P_to_Q.is_mono()


def test_p_to_q_identifies_in_degree_zero():
    # for m = 0 the boundary of Delta[0] is empty, so P is the cell copies alone;
    # copies of [0] and [1]([0]) that meet in Theta[t] are merged in Q
    pq = build_PQ(0, cell(1, 2), T1)
    assert not pq.P_to_Q.is_mono()
    assert pq.identifications()


def test_reedy_cofibration_is_mono():
    for t in (cell(1, 2), tau_theta(2, 2)):
        assert reedy_cofibration(1, t).is_mono()


def test_generating_cofibration_is_discrete():
    rep = generating_cofibration(1, cell(1, 2), T0)
    assert rep.T_discrete
    assert rep.map.check_natural() is None


@pytest.mark.parametrize("T", [T0, T1])
@pytest.mark.parametrize("m", [0, 1])
def test_hom_decomposition_small(T, m):
    cat = bounded(2, 2)
    X, _, _ = product(representable(cell(1, 2), cat, 1), constant(ss.simplex(1, 1), cat))
    for which in "QP":
        r = verify_hom_decomposition(X, m, cell(1, 2), T, which)
        assert r.lhs == r.rhs
        assert r.bijection_ok


def test_lifting_against_an_edge_boundary():
    cat = bounded(2, 2)
    B, i = boundary(cell(1, 2), cat)
    # every pair of objects of the walking isomorphism is joined by an edge
    iso = walking_iso_nerve(cat)
    to_point = first_nat(iso, terminal(cat))
    assert has_rlp(to_point, i).ok
    # the walking arrow has no edge from 1 to 0
    arrow = walking_arrow_nerve(cat)
    res = has_rlp(first_nat(arrow, terminal(cat)), i)
    assert not res.ok and res.stuck is not None
