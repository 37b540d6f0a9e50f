"""Generators for test and benchmark presheaves.

Everything random takes an explicit seed or ``random.Random``; there is no
hidden entropy.
"""

import random

from . import simplicial as ss
from .enrich import FinCategory, v1, walking_arrow, walking_isomorphism
from .presheaf import (PresheafMap, ThetaSet, boundary, constant, coproduct, generated_congruence,
                       generated_subsets, quotient_presheaf, representable, spine,
                       sub_presheaf)
from .theta import bounded, cell, degree, format_object, tau_theta


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# nerves of finite categories, pulled back along Theta_n -> Delta

def chains(C, q):
    """Composable strings ``c_0 -> ... -> c_q`` as ``(objects, morphisms)``."""
    out = [((x,), ()) for x in range(len(C.objects))]
    for _ in range(q):
        nxt = []
        for objs, mors in out:
            for m, (a, b) in enumerate(C.morphisms):
                if a == objs[-1]:
                    nxt.append((objs + (b,), mors + (m,)))
        out = nxt
    return out


def _chain_pull(C, delta, chain):
    objs, mors = chain
    new_objs = tuple(objs[d] for d in delta)
    new_mors = []
    for lo, hi in zip(delta, delta[1:]):
        g = C.ident[objs[lo]]
        for m in mors[lo:hi]:
            g = C.comp[(m, g)]
        new_mors.append(g)
    return new_objs, tuple(new_mors)


def nerve(C, cat, name="nerve"):
    """The nerve of C as a levelwise-discrete presheaf: ``X(t) = N(C)_q`` for width q."""
    if cat.level == 0:
        raise ValueError("the nerve lives on Theta_n with n >= 1")
    elements = {t: [chains(C, t.width)] for t in cat.objects}
    return ThetaSet.from_action(cat, 0, elements, lambda f, k, e: _chain_pull(C, f.delta, e),
                                name=name)


def nerve_map(F_obj, F_mor, NC, ND, C, D):
    """The map of nerves induced by the functor ``(F_obj, F_mor)``."""
    index = {t: {e: i for i, e in enumerate(ND.elements[t][0])} for t in ND.cat.objects}

    def fn(t, k, x):
        objs, mors = NC.elements[t][0][x]
        return index[t][(tuple(F_obj[o] for o in objs), tuple(F_mor[m] for m in mors))]

    return PresheafMap.from_function(NC, ND, fn)


def preorder_category(size, relation):
    """The preorder on ``range(size)`` generated by ``relation`` (pairs a <= b)."""
    le = [[a == b for b in range(size)] for a in range(size)]
    for a, b in relation:
        le[a][b] = True
    for k in range(size):
        for a in range(size):
            if le[a][k]:
                for b in range(size):
                    if le[k][b]:
                        le[a][b] = True
    morphisms = [(a, b) for a in range(size) for b in range(size) if le[a][b]]
    mid = {p: i for i, p in enumerate(morphisms)}
    comp = {}
    for f, (a, b) in enumerate(morphisms):
        for g, (b2, c) in enumerate(morphisms):
            if b2 == b:
                comp[(g, f)] = mid[(a, c)]
    ident = [mid[(a, a)] for a in range(size)]
    return FinCategory(list(range(size)), morphisms, comp, ident)


def random_preorder(rng, size, density=0.3):
    rng = _rng(rng)
    rel = [(a, b) for a in range(size) for b in range(size) if a != b and rng.random() < density]
    return preorder_category(size, rel)


def random_poset(rng, size, density=0.4):
    rng = _rng(rng)
    rel = [(a, b) for a in range(size) for b in range(a + 1, size) if rng.random() < density]
    return preorder_category(size, rel)


def discrete_category(size):
    return preorder_category(size, [])


# random sub-presheaves and quotients

def random_subpresheaf(X, rng, generators=2):
    rng = _rng(rng)
    cells = [(t, k, x) for t in X.cat.objects for k in range(X.bound + 1)
             for x in range(X.size(t, k))]
    if not cells:
        return X
    gens = [rng.choice(cells) for _ in range(generators)]
    S, _ = sub_presheaf(X, generated_subsets(X, gens), name=f"sub({X.name})")
    return S


def random_quotient(X, rng, pairs=1):
    """Quotient by the congruence generated by random pairs of vertices."""
    rng = _rng(rng)
    pts = [t for t in X.cat.objects if X.size(t, 0) > 1]
    glue = []
    for _ in range(pairs):
        if not pts:
            break
        t = rng.choice(pts)
        x, y = rng.sample(range(X.size(t, 0)), 2)
        glue.append((t, 0, x, y))
    Q, _ = quotient_presheaf(X, generated_congruence(X, glue), name=f"quot({X.name})")
    return Q


def random_discrete(cat, rng, pieces=2, max_degree=2):
    """A levelwise-discrete presheaf: a random quotient of a coproduct of representables."""
    rng = _rng(rng)
    shapes = [t for t in cat.objects if degree(t) <= max_degree]
    parts = [representable(rng.choice(shapes), cat, 0) for _ in range(pieces)]
    X, _ = coproduct(parts, name="sum")
    return random_quotient(X, rng, pairs=rng.randint(0, 2))


# named families

def walking_iso_nerve(cat):
    return nerve(walking_isomorphism(), cat, name="N(iso)")


def walking_arrow_nerve(cat):
    return nerve(walking_arrow(), cat, name="N(arrow)")


def constant_simplicial(K, cat, name="const"):
    return constant(K, cat, name=name)


def suspension(A, degree_bound=None):
    """The two-object presheaf one level up whose only non-trivial hom is A."""
    return v1(A, degree_bound)


def standard_corpus(n=2, theta_bound=3, simp_bound=0, seed=0, random_count=4):
    """Named presheaves on ``bounded(n, theta_bound)``: a list of ``(name, X)``."""
    cat = bounded(n, theta_bound)
    rng = _rng(seed)
    out = []
    for t in cat.objects:
        if degree(t) <= 2:
            out.append((f"rep{format_object(t)}", representable(t, cat, simp_bound)))
    for t in (tau_theta(2, n), tau_theta(3, n) if theta_bound >= 3 else None):
        if t is not None and t in cat:
            out.append((f"spine{format_object(t)}", spine(t, cat, simp_bound)[0]))
    if n >= 2:
        t = cell(1, n)
        out.append((f"boundary{format_object(t)}", boundary(t, cat, simp_bound)[0]))
    if simp_bound == 0:
        out.append(("N(arrow)", walking_arrow_nerve(cat)))
        out.append(("N(iso)", walking_iso_nerve(cat)))
        for i in range(random_count):
            P = random_poset(rng, rng.randint(2, 3))
            out.append((f"N(poset{i})", nerve(P, cat, name=f"N(poset{i})")))
        for i in range(random_count):
            X = random_discrete(cat, rng)
            X.name = f"random{i}"
            out.append((X.name, X))
    if simp_bound >= 1:
        out.append(("const(D[1])", constant(ss.simplex(1, simp_bound), cat, name="const(D[1])")))
    return out

