import itertools

import pytest
from hypothesis import given, settings, strategies as st

from thetakit.theta import (ThetaMorphism, ThetaObject, bounded, cell, compose, degree,
                            enumerate_objects, format_object, hom, identity, is_epi, is_mono,
                            tau_theta, zero)


def test_cells_and_degrees():
    assert format_object(cell(0, 2)) == "[0]"
    assert format_object(cell(1, 2)) == "[1]([0])"
    assert format_object(cell(2, 2)) == "[1]([1])"
    assert degree(cell(2, 3)) == 2
    assert degree(tau_theta(3, 2)) == 3
    with pytest.raises(ValueError):
        cell(3, 2)


@pytest.mark.parametrize("n,d,morphisms", [(2, 3, 558), (3, 3, 668), (2, 4, 5895)])
def test_bounded_sizes(n, d, morphisms):
    assert len(bounded(n, d).morphisms) == morphisms


def test_objects_are_interned():
    a = ThetaObject(2, [ThetaObject(1, [zero(0)])])
    assert a is cell(2, 2)
    f = hom(cell(1, 2), cell(1, 2))[0]
    assert ThetaMorphism(f.source, f.target, list(f.delta), list(f.subs)) is f


def test_hom_into_point_cells():
    # maps out of [0] pick a vertex
    for t in enumerate_objects(2, 3):
        assert len(hom(zero(2), t)) == t.width + 1


def test_level1_table_matches_compose():
    cat = bounded(1, 5)
    table = cat.composition_array()
    for (a, b), fs in cat.hom_ids.items():
        for c in cat.objects:
            for g in cat.hom_ids[(b, c)]:
                for f in fs:
                    h = compose(cat.morphisms[g], cat.morphisms[f])
                    assert cat.morphisms[table[g, f]] is h


def test_non_composable_raises():
    f = hom(zero(2), cell(1, 2))[0]
    with pytest.raises(ValueError):
        compose(f, f)


def test_bad_morphisms_rejected():
    with pytest.raises(ValueError):
        ThetaMorphism(cell(1, 1), cell(1, 1), (1, 0), ())


_cat = bounded(2, 3)
_mor = st.sampled_from(_cat.morphisms)


@settings(max_examples=300, deadline=None)
@given(_mor, st.data())
def test_associativity_sampled(f, data):
    gs = [_cat.morphisms[i] for i in _cat.out_of[f.target]]
    g = data.draw(st.sampled_from(gs))
    hs = [_cat.morphisms[i] for i in _cat.out_of[g.target]]
    h = data.draw(st.sampled_from(hs))
    assert compose(h, compose(g, f)) is compose(compose(h, g), f)
    assert compose(identity(f.target), f) is f
    assert compose(f, identity(f.source)) is f


def test_mono_epi_identity():
    for t in _cat.objects:
        assert is_mono(identity(t)) and is_epi(identity(t))


def test_mono_agrees_with_left_cancellation():
    cat = bounded(2, 2)
    for f in cat.morphisms:
        into = [cat.morphisms[i] for i in cat.into[f.source]]
        cancels = all(g is h for g, h in itertools.product(into, into)
                      if g.source is h.source and compose(f, g) is compose(f, h))
        assert is_mono(f) == cancels
