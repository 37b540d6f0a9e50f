"""The compiled and pure-Python kernels must agree with each other and with brute force."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from thetakit import _kernels_py
from thetakit.search import _topological_order
from thetakit.theta import bounded

try:
    from thetakit import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


@st.composite
def csps(draw):
    n = draw(st.integers(1, 6))
    dom = draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    tables, out = [], [[] for _ in range(n)]
    for v, w in edges:
        off = len(tables)
        tables.extend(draw(st.integers(0, dom[w] - 1)) for _ in range(dom[v]))
        out[v].append((w, off))
    out_start, out_tgt, out_off = [0], [], []
    for v in range(n):
        for w, off in out[v]:
            out_tgt.append(w)
            out_off.append(off)
        out_start.append(len(out_tgt))
    preset = draw(st.lists(st.integers(-1, 0), min_size=n, max_size=n))
    return dom, out_start, out_tgt, out_off, tables, preset


def _brute(dom, out_start, out_tgt, out_off, tables, preset):
    sols = []
    for val in itertools.product(*[range(d) for d in dom]):
        if any(p >= 0 and val[v] != p for v, p in enumerate(preset)):
            continue
        if all(val[out_tgt[e]] == tables[out_off[e] + val[v]]
               for v in range(len(dom)) for e in range(out_start[v], out_start[v + 1])):
            sols.append(list(val))
    return sols


def _run(mod, problem, limit=0):
    dom, out_start, out_tgt, out_off, tables, preset = problem
    order = _topological_order(len(dom), out_start, out_tgt)
    return mod.solve_functional_csp(dom, out_start, out_tgt, out_off, tables, order,
                                    [], [], preset, limit, True)


@settings(max_examples=200, deadline=None)
@given(csps())
def test_pure_solver_matches_brute_force(problem):
    count, sols = _run(_kernels_py, problem)
    expected = _brute(*problem)
    assert count == len(expected)
    assert sorted(sols) == sorted(expected)


@needs_ext
@settings(max_examples=200, deadline=None)
@given(csps(), st.integers(0, 3))
def test_compiled_solver_matches_pure(problem, limit):
    assert _run(_ckernels, problem, limit) == _run(_kernels_py, problem, limit)


def test_allowed_mask_restricts():
    # two free variables of domain 2, the mask forbids value 0 for variable 1
    args = ([2, 2], [0, 0, 0], [], [], [], [0, 1], [1, 1, 0, 1], [0, 2], [-1, -1], 0, True)
    count, sols = _kernels_py.solve_functional_csp(*args)
    assert count == 2 and all(s[1] == 1 for s in sols)
    if _ckernels is not None:
        assert _ckernels.solve_functional_csp(*args) == (count, sols)


def _law_args(cat):
    n = len(cat.morphisms)
    src = [cat.obj_index[f.source] for f in cat.morphisms]
    tgt = [cat.obj_index[f.target] for f in cat.morphisms]
    ident = [cat.identity_id[t] for t in cat.objects]
    return n, src, tgt, ident, cat.composition_array().ravel().tolist()


def test_law_checker_detects_corruption():
    n, src, tgt, ident, flat = _law_args(bounded(1, 2))
    assert _kernels_py.check_category_laws(n, src, tgt, ident, flat) == 0
    # redirect one composite to another morphism with the same ends
    for i, h in enumerate(flat):
        if h >= 0:
            others = [k for k in range(n) if k != h and src[k] == src[h] and tgt[k] == tgt[h]]
            if others:
                flat[i] = others[0]
                break
    assert _kernels_py.check_category_laws(n, src, tgt, ident, flat) > 0
    if _ckernels is not None:
        assert _ckernels.check_category_laws(n, src, tgt, ident, flat) == \
            _kernels_py.check_category_laws(n, src, tgt, ident, flat)


@needs_ext
def test_law_checker_backends_agree():
    args = _law_args(bounded(2, 2))
    assert _ckernels.check_category_laws(*args) == _kernels_py.check_category_laws(*args) == 0
