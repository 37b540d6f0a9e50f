import pytest

from thetakit import simplicial as ss
from thetakit.corpus import (nerve, preorder_category, walking_arrow_nerve, walking_iso_nerve)
from thetakit.enrich import (NotCertified, homotopy_category, invertibles, is_dk_equivalence,
                             is_strictly_complete, is_T_segal_category, v1, walking_arrow,
                             walking_isomorphism)
from thetakit.kan import ObjectSubset
from thetakit.presheaf import (constant, identity_map, is_strict_segal, representable, spine)
from thetakit.search import nat_transformations
from thetakit.theta import bounded, cell, tau_theta

CAT = bounded(2, 3)


def test_small_categories_are_lawful():
    for C in (walking_arrow(), walking_isomorphism(), preorder_category(4, [(0, 1), (1, 2)])):
        assert C.law_violations() == []
    assert sorted(invertibles(walking_isomorphism())) == [0, 1, 2, 3]
    assert sorted(invertibles(walking_arrow())) == [0, 1]


def test_homotopy_category_of_a_nerve():
    C = preorder_category(3, [(0, 1), (1, 2)])
    H = homotopy_category(nerve(C, CAT))
    assert len(H.objects) == 3
    assert len(H.morphisms) == len(C.morphisms)
    assert H.law_violations() == []


def test_completeness():
    arrow = is_strictly_complete(walking_arrow_nerve(CAT))
    assert arrow.ok
    iso = is_strictly_complete(walking_iso_nerve(CAT))
    # the non-identity isomorphism is not witnessed by a degenerate edge
    assert not iso.complete_at(0)
    assert iso.witnesses[0]["invertible"] is not None


def test_discrete_levels_count_as_complete():
    rep = is_T_segal_category(walking_iso_nerve(CAT), ObjectSubset.bottom(0, 2))
    assert rep.ok and rep.completeness.levels[0] == "discrete"


def test_completeness_refuses_non_segal():
    Sp, _ = spine(tau_theta(2, 2), CAT)
    with pytest.raises(NotCertified):
        is_strictly_complete(Sp)


def test_v1_is_segal():
    A = constant(ss.simplex(1, 1), bounded(1, 2), name="D[1]")
    V = v1(A, 3)
    assert V.validate() is None
    assert is_strict_segal(V).ok
    # two objects, and the hom from lo to hi is A
    assert V.size(cell(0, 2)) == 2


def test_dk_equivalences():
    X = walking_iso_nerve(CAT)
    rep = is_dk_equivalence(identity_map(X))
    assert rep.ok and rep.exact
    point = representable(cell(0, 2), CAT)
    # including one object of the walking isomorphism is a DK equivalence, not a bijection
    maps = [f for f in nat_transformations(point, X)]
    assert maps and all(is_dk_equivalence(f).ok for f in maps)
    assert not any(f.is_iso() for f in maps)
    # the arrow is not equivalent to a point
    arrow = walking_arrow_nerve(CAT)
    assert not any(is_dk_equivalence(f).ok for f in nat_transformations(point, arrow))


def test_dk_refuses_non_segal():
    Sp, inc = spine(tau_theta(2, 2), CAT)
    with pytest.raises(NotCertified):
        is_dk_equivalence(inc)
