from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from thetakit import simplicial as ss


@pytest.mark.parametrize("m", range(4))
def test_simplex_sizes(m):
    s = ss.simplex(m, 3)
    assert s.validate() is None
    # monotone maps [k] -> [m]
    assert list(s.sizes) == [comb(m + k + 1, k + 1) for k in range(4)]


def test_boundary_drops_surjections():
    for m in range(1, 4):
        full, bd = ss.simplex(m, 3), ss.boundary_simplex(m, 3)
        assert bd.validate() is None
        for k in range(4):
            # surjections [k] -> [m] number C(k, m)
            assert full.sizes[k] - bd.sizes[k] == comb(k, m)


def test_yoneda_for_simplices():
    for m in range(3):
        for l in range(3):
            maps = ss.maps(ss.simplex(m, 2), ss.simplex(l, 2))
            assert len(maps) == comb(l + m + 1, m + 1)


def test_product_and_components():
    p = ss.product(ss.simplex(1, 2), ss.simplex(1, 2))
    assert p.validate() is None
    assert p.sizes == (4, 9, 16)
    assert ss.component_count(p) == 1
    two = ss.coproduct([ss.point(2), ss.simplex(2, 2)])
    assert two.validate() is None
    assert ss.component_count(two) == 2
    assert two.sizes == (1 + 3, 1 + 6, 1 + 10)


def test_discrete_is_discrete():
    assert ss.discrete(3, 2).is_discrete()
    assert not ss.simplex(1, 1).is_discrete()
    assert ss.component_count(ss.discrete(3, 2)) == 3


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2))
def test_operators_compose(m, k):
    s = ss.simplex(m, 3)
    for alpha in ss.monotone(k, 2):
        for beta in ss.monotone(2, 3):
            # pulling back along beta then alpha is pulling back along beta . alpha
            ab = ss.compose_maps(beta, alpha)
            direct = s.act(ab, 3)
            stepwise = [s.act(alpha, 2)[y] for y in s.act(beta, 3)]
            assert list(direct) == stepwise


def test_union_find():
    uf = ss.UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3)
    assert uf.find(2) != uf.find(0)
