"""One check per acceptance criterion.

Every expected value is computed here from an independent oracle (brute
force or a closed form) rather than taken from the library.  Tolerances are
exact equality; the time limits are pinned in the constants below.
"""

import itertools
import random
import time

import numpy as np

from thetakit import simplicial as ss
from thetakit.cofib import theta_count, verify_hom_decomposition
from thetakit.corpus import random_discrete, standard_corpus
from thetakit.enrich import (NotCertified, is_dk_equivalence, is_strictly_complete,
                             is_T_segal_category, v1)
from thetakit.fileio import (PresheafFileError, dumps, loads_presheaf, presheaf_from_dict,
                             presheaf_to_dict)
from thetakit.kan import (ObjectSubset, R_discretize, coskeleton, coskeleton_size, discretize,
                          discretize_right, phi, skeleton, truncate)
from thetakit.presheaf import (boundary, constant, coproduct, is_isomorphic, is_strict_segal,
                               product, representable, spine)
from thetakit.search import count_nat, first_nat, nat_transformations
from thetakit.textio import parse_morphism, parse_object
from thetakit.theta import (ThetaCategory, ThetaMorphism, bounded, category, cell,
                            edge, enumerate_objects, format_morphism, format_object, tau_theta,
                            vertex)

DELTA_LIMIT_S = 1.0
LAWS_LIMIT_S = 60.0


# 1

def _monotone_oracle(m, k):
    return [f for f in itertools.product(range(k + 1), repeat=m + 1)
            if all(f[i] <= f[i + 1] for i in range(m))]


def test_01_theta1_is_delta(acceptance):
    t0 = time.perf_counter()
    objs = enumerate_objects(1, 5)
    cat = ThetaCategory(objs)
    width = {t: t.width for t in objs}
    oracle = {(a, b): np.array(_monotone_oracle(width[a], width[b]), dtype=np.int64)
              for a in objs for b in objs}
    hom_ok = all(len(cat.hom_ids[key]) == len(maps) and
                 sorted(cat.morphisms[i].delta for i in cat.hom_ids[key]) ==
                 sorted(map(tuple, maps.tolist()))
                 for key, maps in oracle.items())
    # line the library's morphism ids up with the oracle's rows
    ids = {}
    for key, maps in oracle.items():
        by_delta = {cat.morphisms[i].delta: i for i in cat.hom_ids[key]}
        ids[key] = np.array([by_delta.get(tuple(r), -1) for r in maps.tolist()], dtype=np.int64)
    table = cat.composition_array()
    pairs = mismatches = 0
    for a, b, c in itertools.product(objs, repeat=3):
        F, G, H = oracle[(a, b)], oracle[(b, c)], oracle[(a, c)]
        # position of each composite G[g] . F[f] among the oracle maps a -> c
        radix = (width[c] + 1) ** np.arange(width[a] + 1)
        lookup = {int(v): r for r, v in enumerate(H @ radix)}
        expected = np.vectorize(lookup.__getitem__, otypes=[np.int64])(G[:, F] @ radix)
        got = table[np.ix_(ids[(b, c)], ids[(a, b)])]
        mismatches += int((got != ids[(a, c)][expected]).sum())
        pairs += expected.size
    elapsed = time.perf_counter() - t0
    ok = hom_ok and mismatches == 0 and elapsed < DELTA_LIMIT_S
    acceptance(1, ok, f"homs {'agree' if hom_ok else 'DIFFER'}; {pairs} composable pairs, "
                      f"{mismatches} mismatches; {elapsed:.3f}s (limit {DELTA_LIMIT_S}s)")
    assert ok


# 2

def test_02_category_laws(acceptance):
    t0 = time.perf_counter()
    report = []
    violations = 0
    for n in (2, 3):
        cat = bounded(n, 3)
        v = cat.law_violations()
        violations += v
        report.append(f"Theta_{n}: {len(cat.morphisms)} morphisms, {v} violations")
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < LAWS_LIMIT_S
    acceptance(2, ok, "; ".join(report) + f"; {elapsed:.2f}s (limit {LAWS_LIMIT_S}s)")
    assert ok


# 3

def _edge_chains(X, q):
    """|X[1]([0]) x_X[0] ... x_X[0] X[1]([0])| with q factors, by dynamic programming."""
    c0, c1 = cell(0, 2), cell(1, 2)
    src = X.pull(ThetaMorphism(c0, c1, (0,)))
    tgt = X.pull(ThetaMorphism(c0, c1, (1,)))
    ending = [0] * X.size(c0)
    for e in range(X.size(c1)):
        ending[tgt[e]] += 1
    for _ in range(q - 1):
        nxt = [0] * X.size(c0)
        for e in range(X.size(c1)):
            nxt[tgt[e]] += ending[src[e]]
        ending = nxt
    return sum(ending)


def _width_one_points(t):
    """c when t = [1]([c]) with every cell of [c] a point, else None."""
    if t.width == 1 and all(c.width == 0 for c in t.cells[0].cells):
        return t.cells[0].width
    return None


def test_03_coskeleton_formulas(acceptance):
    rng = random.Random(20240611)
    small = bounded(2, 2)
    targets = bounded(2, 4).objects
    c0, c1 = cell(0, 2), cell(1, 2)
    S = ObjectSubset.S(2)
    checks = {"X[0]^(q+1)": [0, 0], "X[0]^(2c+2)": [0, 0], "X[1]([0])^(c+1)": [0, 0],
              "fiber product": [0, 0]}
    first_bad = {}

    def check(name, got, want, where):
        checks[name][0] += 1
        if got != want:
            checks[name][1] += 1
            first_bad.setdefault(name, f"{where}: {got} != {want}")

    samples = 0
    while samples < 12:
        X = random_discrete(small, rng, pieces=rng.randint(1, 3))
        if not X.is_levelwise_discrete():
            continue
        samples += 1
        x0, x1 = X.size(c0), X.size(c1)
        for t in targets:
            q = t.width
            if t.level == 2 and all(c.width == 0 for c in t.cells):
                check("X[0]^(q+1)", coskeleton_size(X, [c0], t), x0 ** (q + 1), format_object(t))
                if q >= 1:
                    check("fiber product", coskeleton_size(X, S, t), _edge_chains(X, q),
                          f"cosk_S at {format_object(t)}")
            c = _width_one_points(t)
            if c is not None:
                check("X[0]^(2c+2)", coskeleton_size(X, [c0], t), x0 ** (2 * c + 2),
                      format_object(t))
                for T, label in (([c1], "cosk_[1]([0])"), (S, "cosk_S")):
                    check("X[1]([0])^(c+1)", coskeleton_size(X, T, t), x1 ** (c + 1),
                          f"{label} at {format_object(t)}")
    ok = all(bad == 0 for _, bad in checks.values())
    detail = f"{samples} sets; " + "; ".join(
        f"{name}: {n - bad}/{n} agree" + (f" (first: {first_bad[name]})" if bad else "")
        for name, (n, bad) in checks.items())
    acceptance(3, ok, detail)
    assert ok


# 4

def _adjunction_cases():
    cat = bounded(2, 2)
    K = constant(ss.simplex(1, 1), cat, name="D[1]")
    point = representable(cell(0, 2), cat, 1)
    sources = [representable(cell(1, 2), cat, 1), boundary(cell(1, 2), cat, 1)[0],
               spine(tau_theta(2, 2), cat, 1)[0], product(point, K)[0]]
    targets = [K, product(representable(cell(1, 2), cat, 1), K)[0],
               representable(tau_theta(2, 2), cat, 1),
               coproduct([point, representable(cell(1, 2), cat, 1)])[0]]
    Ts = [ObjectSubset.bottom(0, 2), ObjectSubset.bottom(1, 2), ObjectSubset.cells([1], 2)]
    return [(A, X, T) for A in sources for X in targets for T in Ts]


def test_04_adjunction_counts(acceptance):
    cases = _adjunction_cases()
    bad = []
    for A, X, T in cases:
        left, right = count_nat(skeleton(A, T), X), count_nat(A, coskeleton(X, T))
        A_T, _ = discretize(A, T)
        X_T, _ = discretize_right(X, T)
        d_left, d_right = count_nat(A_T, X_T), count_nat(A_T, X)
        if left != right or d_left != d_right:
            bad.append(f"{A.name}->{X.name} at {[format_object(c) for c in T]}: "
                       f"{left}/{right}, {d_left}/{d_right}")
    ok = len(cases) >= 20 and not bad
    acceptance(4, ok, f"{len(cases)} pairs, {len(bad)} failures" + (f" ({bad[0]})" if bad else ""))
    assert ok


# 5

def _decomposition_target(n):
    cat = bounded(n, 3)
    X, _ = coproduct([representable(cell(1, n), cat, 2), representable(tau_theta(2, n), cat, 2)])
    return product(X, constant(ss.simplex(1, 2), cat))[0]


def test_05_hom_decomposition(acceptance):
    runs, failures = 0, []
    for n in (1, 2):
        X = _decomposition_target(n)
        for j in range(n):
            T = ObjectSubset.bottom(j, n)
            for t in enumerate_objects(n, 3):
                for m in range(3):
                    for which in "QP":
                        r = verify_hom_decomposition(X, m, t, T, which)
                        runs += 1
                        if not (r.equal and r.bijection_ok):
                            failures.append(r.as_dict())
    ok = not failures
    acceptance(5, ok, f"{runs} cases (n in 1,2; m <= 2; degree <= 3), {len(failures)} failures"
                      + (f" (first: {failures[0]})" if failures else ""))
    assert ok


# 6

def _theta2_edge_count(t):
    q = t.width
    c = [cell_.width for cell_ in t.cells]
    total = q + 1
    for a in range(q):
        for b in range(a + 1, q + 1):
            prod = 1
            for j in range(a + 1, b + 1):
                prod *= c[j - 1] + 1
            total += prod
    return total


def test_06_theta_counts(acceptance):
    vertex_checks = vertex_bad = 0
    for n in (1, 2, 3):
        for t in enumerate_objects(n, 4):
            vertex_checks += 1
            vertex_bad += theta_count(0, t) != t.width + 1
    edge_checks = edge_bad = 0
    for t in enumerate_objects(2, 5):
        edge_checks += 1
        edge_bad += theta_count(1, t) != _theta2_edge_count(t)
    ok = vertex_bad == 0 and edge_bad == 0
    acceptance(6, ok, f"vertices {vertex_checks - vertex_bad}/{vertex_checks}, "
                      f"edges in Theta_2 {edge_checks - edge_bad}/{edge_checks}")
    assert ok


# 7

def _witness_is_genuine(X, t, w):
    """The witness must be a composable string of edges outside the image of X(t)."""
    if w is None or w.get("kind") != "uncovered":
        return False
    edges = w["edges"]
    n = t.level
    spokes = [type(t)(n, (c,)) for c in t.cells]
    for i in range(1, len(edges)):
        if X.pull(vertex(spokes[i - 1], 1))[edges[i - 1]] != X.pull(vertex(spokes[i], 0))[edges[i]]:
            return False
    image = {tuple(X.pull(edge(t, i + 1))[y] for i in range(t.width)) for y in range(X.size(t))}
    return tuple(edges) not in image


def test_07_segal_verdicts(acceptance):
    reps = bad_reps = 0
    for n in (1, 2, 3):
        cat = bounded(n, 3)
        for t in cat.objects:
            reps += 1
            bad_reps += not is_strict_segal(representable(t, cat)).ok
    spine_results = []
    for n, t in ((1, tau_theta(2, 1)), (2, tau_theta(2, 2))):
        X, _ = spine(t, bounded(n, 3))
        r = is_strict_segal(X)
        w = r.witness or {}
        genuine = (not r.ok and w.get("object") == format_object(t) and not w.get("surjective")
                   and _witness_is_genuine(X, t, w.get("witness")))
        spine_results.append((format_object(t), genuine, w.get("witness")))
    ok = bad_reps == 0 and all(g for _, g, _ in spine_results)
    acceptance(7, ok, f"representables {reps - bad_reps}/{reps} strictly Segal; " + "; ".join(
        f"spine {name}: {'rejected, witness ' + str(w) if g else 'WRONG'}"
        for name, g, w in spine_results))
    assert ok


# 8

def _segal_corpus():
    cat = bounded(2, 3)
    corpus = standard_corpus(2, 3, 0, seed=3)
    K = constant(ss.simplex(1, 1), cat, name="const(D[1])")
    for t in (cell(0, 2), cell(1, 2)):
        X = product(representable(t, cat, 1), K)[0]
        corpus.append((f"rep{format_object(t)} x D[1]", X))
    corpus.append(("const(D[1])", K))
    return [(name, X) for name, X in corpus if is_strict_segal(X).ok]


def test_08_r_functor(acceptance):
    runs, failures = 0, []
    c0 = cell(0, 2)
    for name, W in _segal_corpus():
        for j in range(2):
            runs += 1
            r = R_discretize(W, j)
            discrete = r.RW.values[cell(j, 2)].is_discrete()
            vertices = sorted(r.to_W.comps[c0][0]) == list(range(W.size(c0)))
            try:
                dk = is_dk_equivalence(r.to_W)
                dk_ok = dk.ok and dk.exact
            except NotCertified:
                dk_ok = False
            if not (discrete and vertices and dk_ok):
                failures.append(f"{name} j={j}: discrete={discrete} vertices={vertices} dk={dk_ok}")
    ok = runs > 0 and not failures
    acceptance(8, ok, f"{runs} (W, j) cases, {len(failures)} failures"
                      + (f" (first: {failures[0]})" if failures else ""))
    assert ok


# 9

PHI_PAIRS = [("boundary[1]([0])", "rep[1]([0])"), ("spine[2]([0],[0])", "rep[2]([0],[0])"),
             ("N(iso)", "N(arrow)"), ("N(arrow)", "N(iso)"), ("rep[1]([1])", "N(iso)"),
             ("random0", "random1"), ("N(poset0)", "N(poset1)"), ("rep[2]([0],[0])", "N(poset2)"),
             ("spine[3]([0],[0],[0])", "N(iso)"), ("random3", "rep[0]")]


def test_09_phi_construction(acceptance):
    corpus = dict(standard_corpus(2, 3, 0, seed=3))
    Ts = [ObjectSubset.bottom(0, 2), ObjectSubset.bottom(1, 2), ObjectSubset.cells([1], 2)]
    runs, failures = 0, []
    for a, b in PHI_PAIRS:
        X, Y = corpus[a], corpus[b]
        f = first_nat(X, Y)
        if f is None:
            continue
        for T in Ts:
            runs += 1
            r = phi(Y, X, f, T)
            iso = all(is_isomorphic(truncate(r.PhiY, [cell(i, 2)]), truncate(X, [cell(i, 2)]))
                      for i in T.cell_indices())
            factors = r.from_X.then(r.to_Y) == f
            if not (iso and factors):
                failures.append(f"{a}->{b} at {[format_object(c) for c in T]}")
    ok = runs >= 10 and not failures
    acceptance(9, ok, f"{runs} triples, {len(failures)} failures"
                      + (f" (first: {failures[0]})" if failures else ""))
    assert ok


# 10

def test_10_bottom_up_discreteness(acceptance):
    cat = bounded(2, 3)
    corpus = standard_corpus(2, 3, 0, seed=5) + standard_corpus(2, 3, 1, seed=5)
    K = constant(ss.simplex(1, 1), cat)
    corpus += [("rep[0] x D[1]", product(representable(cell(0, 2), cat, 1), K)[0]),
               ("rep[1]([0]) x D[1]", product(representable(cell(1, 2), cat, 1), K)[0])]
    Ts = [ObjectSubset(2, list(s)) for r in (1, 2)
          for s in itertools.combinations([cell(0, 2), cell(1, 2), cell(2, 2)], r)]
    certified, checks, counterexamples = 0, 0, []
    for name, X in corpus:
        for T in Ts:
            if not is_T_segal_category(X, T).ok:
                continue
            certified += 1
            for i in T.cell_indices():
                if i >= 1:
                    checks += 1
                    if not X.values[cell(i - 1, 2)].is_discrete():
                        counterexamples.append(f"{name} at {[format_object(c) for c in T]}")
    ok = checks > 0 and not counterexamples
    acceptance(10, ok, f"{certified} certified (X, T), {checks} checks, "
                       f"{len(counterexamples)} counterexamples")
    assert ok


# 11

def test_11_dk_rigidity(acceptance):
    corpus = standard_corpus(2, 3, 0, seed=3)
    A = constant(ss.simplex(1, 1), bounded(1, 2), name="D[1]")
    corpus.append(("V[1](D[1])", v1(A, 3)))
    complete = []
    for name, X in corpus:
        if not X.is_levelwise_discrete() or not is_strict_segal(X).ok:
            continue
        if is_strictly_complete(X, (), check_segal=False).ok:
            complete.append((name, X))
    equivalences, counterexamples = 0, []
    for (a, X), (b, Y) in itertools.product(complete, complete):
        if X.bound != Y.bound:
            continue
        for f in nat_transformations(X, Y, limit=50):
            if is_dk_equivalence(f).ok:
                equivalences += 1
                if not f.is_iso():
                    counterexamples.append(f"{a}->{b}")
    ok = equivalences > 0 and not counterexamples
    acceptance(11, ok, f"{len(complete)} complete objects, {equivalences} DK equivalences, "
                       f"{len(counterexamples)} not bijective")
    assert ok


# 12

def _base_file():
    cat = category([cell(0, 2), cell(1, 2)])
    return presheaf_to_dict(representable(cell(1, 2), cat, 1))


def _invalid_files():
    """(label, file text, expected path prefix)."""
    out = []

    def mutated(label, path, change):
        d = _base_file()
        change(d)
        out.append((label, dumps(d), path))

    out.append(("truncated JSON", dumps(_base_file())[:-20], "$"))
    mutated("wrong format tag", '$["format"]', lambda d: d.update(format="thetakit-presheaf/9"))
    mutated("negative n", '$["n"]', lambda d: d.update(n=-2))
    mutated("unbalanced object key", '$["cells"]["[1]([0]"]',
            lambda d: d["cells"].update({"[1]([0]": d["cells"].pop("[1]([0])")}))
    mutated("wrong number of degrees", '$["cells"]["[0]"]',
            lambda d: d["cells"]["[0]"].pop())
    mutated("unknown simplex in a face", '$["simplicial_actions"]["[1]([0])"]["faces"][0][1]',
            lambda d: d["simplicial_actions"]["[1]([0])"]["faces"][0][1].update(
                {"(d=[0,0])": "nowhere"}))
    mutated("non-monotone morphism key", '$["theta_actions"]["(d=[1,0]):[1]([0])->[1]([0])"]',
            lambda d: d["theta_actions"].update(
                {"(d=[1,0]):[1]([0])->[1]([0])": d["theta_actions"].pop(
                    "(d=[1,1]):[1]([0])->[1]([0])")}))
    mutated("missing action", '$["theta_actions"]',
            lambda d: d["theta_actions"].pop("(d=[0]):[0]->[1]([0])"))
    # keys are sorted on writing, so the written-out form is the one seen second
    mutated("key repeated after normalization", '$["cells"]["[1]([0])"]',
            lambda d: d["cells"].update({"[1] ( [0] )": d["cells"]["[1]([0])"]}))

    def break_functoriality(d):
        # swap the two vertex actions: the functor laws then fail
        acts = d["theta_actions"]
        a, b = "(d=[0]):[0]->[1]([0])", "(d=[1]):[0]->[1]([0])"
        acts[a], acts[b] = acts[b], acts[a]
    mutated("action is not a functor", '$["theta_actions"]', break_functoriality)
    return out


def _parser_round_trip():
    total = bad = 0
    for n in (1, 2, 3):
        cat = bounded(n, 3)
        for t in cat.objects:
            total += 1
            bad += parse_object(format_object(t), n) is not t
        for f in cat.morphisms:
            total += 1
            bad += parse_morphism(format_morphism(f), f.source, f.target) is not f
    return total, bad


def test_12_round_trip_and_validation(acceptance):
    total, bad = _parser_round_trip()
    corpus = standard_corpus(2, 3, 0, seed=1) + standard_corpus(2, 3, 1, seed=1)
    files_bad = []
    for name, X in corpus:
        text = dumps(presheaf_to_dict(X))
        Y = loads_presheaf(text)
        if dumps(presheaf_to_dict(Y)) != text or Y.sizes() != X.sizes():
            files_bad.append(name)
    rejected, wrong = 0, []
    cases = _invalid_files()
    for label, text, path in cases:
        try:
            loads_presheaf(text)
        except PresheafFileError as e:
            if e.path.startswith(path) and e.path != "" and (path != "$" or "line" in e.message):
                rejected += 1
            else:
                wrong.append(f"{label}: reported {e.path!r}, expected {path!r}")
        else:
            wrong.append(f"{label}: accepted")
    # the base file itself must load
    presheaf_from_dict(_base_file())
    ok = bad == 0 and not files_bad and rejected == len(cases) == 10
    acceptance(12, ok, f"parser {total - bad}/{total}; files {len(corpus) - len(files_bad)}/"
                       f"{len(corpus)} byte-identical; invalid files rejected with position "
                       f"{rejected}/{len(cases)}" + (f" ({wrong[0]})" if wrong else ""))
    assert ok
