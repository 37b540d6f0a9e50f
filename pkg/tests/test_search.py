import random

import pytest

from thetakit import search
from thetakit import _kernels_py
from thetakit import simplicial as ss
from thetakit.corpus import random_discrete, walking_arrow_nerve, walking_iso_nerve
from thetakit.presheaf import coproduct, empty, representable
from thetakit.search import NatProblem, count_nat, first_nat, nat_transformations
from thetakit.theta import bounded, cell


CAT = bounded(2, 2)


def test_maps_are_natural():
    X, Y = walking_arrow_nerve(CAT), walking_iso_nerve(CAT)
    maps = nat_transformations(X, Y)
    # a functor from the arrow to the iso is a choice of source and target object
    assert len(maps) == 4
    assert all(f.check_natural() is None for f in maps)


def test_count_splits_over_components():
    parts = [representable(cell(0, 2), CAT) for _ in range(30)]
    A, _ = coproduct(parts)
    X = walking_iso_nerve(CAT)
    # 30 independent points, two choices each
    assert count_nat(A, X) == 2 ** 30
    prob = NatProblem(A, X)
    assert len(prob.components()) == 30


def test_count_matches_enumeration():
    rng = random.Random(4)
    for _ in range(5):
        A, X = random_discrete(CAT, rng), random_discrete(CAT, rng, pieces=3)
        prob = NatProblem(A, X)
        assert prob.count() == prob.solve(collect=False)[0]


def test_first_nat():
    A = representable(cell(1, 2), CAT)
    assert first_nat(A, empty(CAT)) is None
    f = first_nat(A, walking_arrow_nerve(CAT))
    assert f is not None and f.check_natural() is None


def test_simplicial_hom_counts():
    maps = search.simplicial_hom(ss.simplex(1, 1), ss.simplex(2, 1))
    assert len(maps) == 6


def test_pure_backend_gives_same_counts(monkeypatch):
    X, Y = walking_arrow_nerve(CAT), walking_iso_nerve(CAT)
    fast = [f.comps for f in nat_transformations(X, Y)]
    monkeypatch.setattr(search._kernels, "solve_functional_csp",
                        _kernels_py.solve_functional_csp)
    slow = [f.comps for f in nat_transformations(X, Y)]
    assert fast == slow


def test_problem_rejects_mismatched_bounds():
    with pytest.raises(ValueError):
        NatProblem(representable(cell(0, 2), CAT, 0), representable(cell(0, 2), CAT, 1))
