"""Two-object enriched categories, homotopy categories, completeness and
Dwyer-Kan equivalences, all at the strict level.

Weak equivalences between levelwise-discrete presheaves are bijections, and
homotopy equivalences in a strictly Segal presheaf are invertible morphisms
of its homotopy category.  For presheaves with non-discrete values the
checks below work with components and say so in their reports.
"""

from . import simplicial as ss
from .kan import _as_subset
from .presheaf import (PresheafMap, ThetaSet, _canonical_category, fiber_simplices, is_strict_segal,
                       mapping_object, segal_map)
from .theta import (ThetaMorphism, bounded, cell, degree, format_object, identity, tau_theta,
                    vertex, zero)


class FinCategory:
    """A finite category given by tables.

    ``morphisms`` is a list of ``(source, target)`` object indices,
    ``comp[(g, f)]`` the id of ``g . f`` and ``ident[x]`` the identity of x.
    """

    def __init__(self, objects, morphisms, comp, ident, labels=None):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.comp = dict(comp)
        self.ident = list(ident)
        self.labels = labels

    def hom(self, x, y):
        return [m for m, (a, b) in enumerate(self.morphisms) if a == x and b == y]

    def law_violations(self):
        bad = []
        n = len(self.morphisms)
        for f, (a, b) in enumerate(self.morphisms):
            if self.comp.get((self.ident[b], f)) != f or self.comp.get((f, self.ident[a])) != f:
                bad.append(("unit", f))
        for f, (a, b) in enumerate(self.morphisms):
            for g in range(n):
                if self.morphisms[g][0] != b:
                    continue
                gf = self.comp.get((g, f))
                for h in range(n):
                    if self.morphisms[h][0] != self.morphisms[g][1]:
                        continue
                    if self.comp.get((h, gf)) != self.comp.get((self.comp.get((h, g)), f)):
                        bad.append(("assoc", h, g, f))
        return bad

    def __repr__(self):
        return f"FinCategory(objects={len(self.objects)}, morphisms={len(self.morphisms)})"


def invertibles(C):
    """Morphisms f with some g such that ``g . f`` and ``f . g`` are identities."""
    out = []
    for f, (a, b) in enumerate(C.morphisms):
        for g in C.hom(b, a):
            if C.comp.get((g, f)) == C.ident[a] and C.comp.get((f, g)) == C.ident[b]:
                out.append(f)
                break
    return out


def walking_arrow():
    return FinCategory([0, 1], [(0, 0), (1, 1), (0, 1)],
                       {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2}, [0, 1])


def walking_isomorphism():
    comp = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3, (0, 3): 3,
            (3, 2): 0, (2, 3): 1}
    return FinCategory([0, 1], [(0, 0), (1, 1), (0, 1), (1, 0)], comp, [0, 1])


# the intertwining functor

def v1_elements(A, t, k):
    """Simplices of ``V[1](A)(t)`` in degree k: ``("lo",)``, ``("hi",)`` and ``(i, a)``
    for a simplex a of ``A(c_i)`` (the summand of delta jumping at i)."""
    out = [("lo",), ("hi",)]
    for i, c in enumerate(t.cells, start=1):
        out.extend((i, a) for a in range(A.size(c, k)))
    return out


def v1_pull(A, f, k, e):
    """Action of ``f = (eps, {f_li})`` on a simplex of ``V[1](A)``."""
    if len(e) == 1:
        return e
    i, a = e
    eps = f.delta
    for l in range(1, len(eps)):
        if eps[l - 1] < i <= eps[l]:
            sub = f.sub(l, i)
            return (l, A.pull(sub, k)[a])
    return ("lo",) if eps[-1] < i else ("hi",)


def v1_category(A, degree_bound=None):
    n = A.level + 1
    d = degree_bound
    if d is None:
        d = max(degree(c) for c in A.cat.objects) + 1
    objs = [t for t in bounded(n, d).objects if all(c in A.cat for c in t.cells)]
    return _canonical_category(objs)


def v1(A, degree_bound=None):
    """``V[1](A)``: the level n+1 presheaf of a two-object category with one
    non-trivial hom A.

    At ``[q](c_1..c_q)`` the value is a point for each constant
    ``delta: [q] -> [1]`` and ``A(c_i)`` for the delta jumping at i.
    """
    cat = v1_category(A, degree_bound)
    elements = {t: [v1_elements(A, t, k) for k in range(A.bound + 1)] for t in cat.objects}

    def simp_op(t, alpha, l, e):
        if len(e) == 1:
            return e
        i, a = e
        return (i, A.values[t.cells[i - 1]].act(alpha, l)[a])

    return ThetaSet.from_action(cat, A.bound, elements, lambda f, k, e: v1_pull(A, f, k, e),
                                simp_op, name=f"V[1]({A.name})")


def v1_map(g, V_src, V_tgt):
    """``V[1](g): V[1](A) -> V[1](B)`` for ``g: A -> B``."""
    index = {t: [{e: i for i, e in enumerate(V_tgt.elements[t][k])} for k in range(V_tgt.bound + 1)]
             for t in V_tgt.cat.objects}

    def fn(t, k, x):
        e = V_src.elements[t][k][x]
        if len(e) == 1:
            return index[t][k][e]
        i, a = e
        return index[t][k][(i, g.comps[t.cells[i - 1]][k][a])]

    return PresheafMap.from_function(V_src, V_tgt, fn)


# homotopy categories

class HoCategory(FinCategory):
    """Homotopy category with morphism classes recorded as 0-simplices of ``X[1]([0],...)``."""

    def __init__(self, objects, morphisms, comp, ident, reps, class_of, partial):
        super().__init__(objects, morphisms, comp, ident)
        self.reps = reps
        self.class_of = class_of
        self.partial = partial


class NotCertified(ValueError):
    pass


def _fiber_class_labels(X, t1, x0, x1):
    """Component labels of the 0-simplices in the fiber of ``X(t1)`` over (x0, x1)."""
    conds = [(vertex(t1, 0), x0), (vertex(t1, 1), x1)]
    keep = [fiber_simplices(X, t1, conds, k) for k in range(X.bound + 1)]
    sub, idx = ss.subset(X.values[t1], keep)
    lab = ss.pi0(sub)
    return {y: lab[i] for i, y in enumerate(idx[0])}


def homotopy_category(X, check_segal=True):
    """Objects ``X[0]_0``; morphisms are components of the fibers of ``X([1]([0],..))``;
    composition transported through the inverse of the Segal map at ``[2]``.

    Raises :class:`NotCertified` when the Segal maps at ``[2]`` and ``[3]``
    are not bijective inside the bound.
    """
    n = X.level
    z, t1, t2 = zero(n), tau_theta(1, n), tau_theta(2, n)
    for t in (z, t1, t2):
        if t not in X.cat:
            raise NotCertified(f"bound excludes {format_object(t)}")
    if check_segal:
        for t in (t2, tau_theta(3, n)):
            if t in X.cat:
                for k in range(X.bound + 1):
                    if not segal_map(X, t, k).bijective:
                        raise NotCertified(f"Segal map at {format_object(t)} is not bijective")
    nobj = X.size(z)
    degen = X.pull(ThetaMorphism(t1, z, (0, 0), ()))
    partial = not X.values[t1].is_discrete()
    morphisms, reps, class_of = [], [], {}
    for x0 in range(nobj):
        for x1 in range(nobj):
            labels = _fiber_class_labels(X, t1, x0, x1)
            first = {}
            for y in sorted(labels):
                lab = labels[y]
                if lab not in first:
                    first[lab] = len(morphisms)
                    morphisms.append((x0, x1))
                    reps.append(y)
                class_of[y] = first[lab]
    ident = [class_of[degen[x]] for x in range(nobj)]
    e01 = X.pull(ThetaMorphism(t1, t2, (0, 1), (identity(zero(n - 1)),)))
    e12 = X.pull(ThetaMorphism(t1, t2, (1, 2), (identity(zero(n - 1)),)))
    e02 = X.pull(ThetaMorphism(t1, t2, (0, 2), (identity(zero(n - 1)),) * 2))
    by_pair = {}
    for w in range(X.size(t2)):
        by_pair.setdefault((e01[w], e12[w]), w)
    comp = {}
    for f, (a, b) in enumerate(morphisms):
        for g, (b2, c) in enumerate(morphisms):
            if b2 != b:
                continue
            w = by_pair.get((reps[f], reps[g]))
            if w is None:
                raise NotCertified("composable pair without a filler")
            comp[(g, f)] = class_of[e02[w]]
    return HoCategory(list(range(nobj)), morphisms, comp, ident, reps, class_of, partial)


class CompletenessReport:
    """Per level i: ``discrete``, ``strictly-complete``, ``fails`` or ``uncertified``."""

    def __init__(self, levels, witnesses, partial=False):
        self.levels = levels
        self.witnesses = witnesses
        self.partial = partial

    def complete_at(self, i):
        return self.levels.get(i) in ("strictly-complete", "discrete")

    @property
    def ok(self):
        return all(s in ("strictly-complete", "discrete") for s in self.levels.values())

    def as_dict(self):
        return {"levels": {str(i): s for i, s in sorted(self.levels.items())},
                "witnesses": {str(i): w for i, w in sorted(self.witnesses.items())},
                "partial": self.partial}


def _complete_level0(X):
    """None when X[0] -> invertibles of Ho(X) is a bijection, else a witness."""
    H = homotopy_category(X, check_segal=False)
    inv = set(invertibles(H))
    idents = set(H.ident)
    extra = sorted(inv - idents)
    if extra:
        f = extra[0]
        return {"invertible": H.reps[f], "source": H.morphisms[f][0], "target": H.morphisms[f][1]}
    return None


def _complete_at(X, i):
    """Strict completeness of X at level i (via mapping objects for i > 0)."""
    if i == 0:
        return _complete_level0(X)
    z = zero(X.level)
    for x0 in range(X.size(z)):
        for x1 in range(X.size(z)):
            M = mapping_object(X, x0, x1)
            if M is None:
                continue
            w = _complete_at(M, i - 1)
            if w is not None:
                return {"base_points": [x0, x1], "inner": w}
    return None


def is_strictly_complete(X, T=(), check_segal=True):
    """Completeness report for levels ``0 <= i < n``.

    Levels whose cell ``[1]^(i)`` lies in T and at which X is discrete are
    reported as ``discrete``; the rest are checked as strict completeness.
    """
    n = X.level
    T = _as_subset(T, n)
    if check_segal and not is_strict_segal(X).ok:
        raise NotCertified("completeness needs a strictly Segal presheaf")
    levels, witnesses = {}, {}
    partial = not X.is_levelwise_discrete()
    for i in range(n):
        c = cell(i, n)
        if c in T and c in X.cat and X.values[c].is_discrete():
            levels[i] = "discrete"
            continue
        try:
            w = _complete_at(X, i)
        except NotCertified as exc:
            levels[i] = "uncertified"
            witnesses[i] = str(exc)
            continue
        if w is None:
            levels[i] = "strictly-complete"
        else:
            levels[i] = "fails"
            witnesses[i] = w
    return CompletenessReport(levels, witnesses, partial)


class ModelReport:
    def __init__(self, precategory, segal, completeness, discrete_at, bottom_up, certified_bound):
        self.precategory = precategory
        self.segal = segal
        self.completeness = completeness
        self.discrete_at = discrete_at
        self.bottom_up = bottom_up
        self.certified_bound = certified_bound

    @property
    def ok(self):
        return self.precategory and self.segal.ok and self.completeness is not None \
            and self.completeness.ok

    def as_dict(self):
        return {"T_precategory": self.precategory, "discrete_at": self.discrete_at,
                "strict_segal": self.segal.as_dict(),
                "completeness": self.completeness.as_dict() if self.completeness else None,
                "bottom_up": self.bottom_up, "T_segal_category": self.ok,
                "certified_bound": self.certified_bound}


def is_T_segal_category(X, T):
    """Discrete at every member of T, strictly Segal, and strictly complete at
    the levels ``[1]^(i)`` outside T."""
    n = X.level
    T = _as_subset(T, n)
    discrete_at = {}
    for t in T:
        discrete_at[format_object(t)] = bool(t in X.cat and X.values[t].is_discrete())
    pre = all(discrete_at.values())
    seg = is_strict_segal(X)
    comp = None
    if seg.ok:
        comp = is_strictly_complete(X, T, check_segal=False)
    bound = max(degree(t) for t in X.cat.objects)
    return ModelReport(pre, seg, comp, discrete_at, T.bottom_up, bound)


# Dwyer-Kan equivalences

class DKReport:
    def __init__(self, fully_faithful, essentially_surjective, witness, exact, certified_bound):
        self.fully_faithful = fully_faithful
        self.essentially_surjective = essentially_surjective
        self.witness = witness
        self.exact = exact
        self.certified_bound = certified_bound

    @property
    def ok(self):
        return self.fully_faithful and self.essentially_surjective

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"dk_equivalence": self.ok, "fully_faithful": self.fully_faithful,
                "essentially_surjective": self.essentially_surjective,
                "witness": self.witness, "exact": self.exact,
                "certified_bound": self.certified_bound}


def _fiber_map_check(X, Y, f, x0, x1):
    """Compare the fibers of X[1](c) and Y[1](c) over (x0, x1) and its image.

    Returns ``(strict_bijective, pi0_bijective, witness)``.
    """
    n = X.level
    z = zero(n)
    y0, y1 = f.comps[z][0][x0], f.comps[z][0][x1]
    strict, weak = True, True
    for t in X.cat.objects:
        if t.width != 1:
            continue
        conds_x = [(vertex(t, 0), x0), (vertex(t, 1), x1)]
        conds_y = [(vertex(t, 0), y0), (vertex(t, 1), y1)]
        fx = [fiber_simplices(X, t, conds_x, k) for k in range(X.bound + 1)]
        fy = [fiber_simplices(Y, t, conds_y, k) for k in range(Y.bound + 1)]
        for k in range(X.bound + 1):
            img = [f.comps[t][k][y] for y in fx[k]]
            if len(set(img)) != len(img) or set(img) != set(fy[k]):
                strict = False
        sx, ix = ss.subset(X.values[t], fx)
        sy, iy = ss.subset(Y.values[t], fy)
        lx, ly = ss.pi0(sx), ss.pi0(sy)
        pos_y = {y: j for j, y in enumerate(iy[0])}
        induced = {}
        ok = True
        for j, y in enumerate(ix[0]):
            cy = ly[pos_y[f.comps[t][0][y]]]
            if lx[j] in induced and induced[lx[j]] != cy:
                ok = False
            induced[lx[j]] = cy
        ncx = len(set(lx))
        ncy = len(set(ly))
        if not ok or len(set(induced.values())) != ncx or ncx != ncy:
            weak = False
        if not weak:
            return strict, weak, {"object": format_object(t), "x0": x0, "x1": x1,
                                  "source_fiber": [len(a) for a in fx],
                                  "target_fiber": [len(a) for a in fy]}
    return strict, weak, None


def is_dk_equivalence(f, require_segal=True):
    """Fully faithful on all mapping objects and essentially surjective on Ho.

    Both presheaves must be strictly Segal; otherwise :class:`NotCertified`
    is raised (no localization is attempted).  ``exact`` in the report is
    false when some fiber map is only a bijection on components.
    """
    X, Y = f.source, f.target
    if require_segal:
        for P, label in ((X, "source"), (Y, "target")):
            if not is_strict_segal(P).ok:
                raise NotCertified(f"{label} is not strictly Segal")
    n = X.level
    z = zero(n)
    ff, exact, witness = True, True, None
    for x0 in range(X.size(z)):
        for x1 in range(X.size(z)):
            strict, weak, w = _fiber_map_check(X, Y, f, x0, x1)
            exact = exact and strict
            if not weak:
                ff = False
                witness = {"fully_faithful": w}
                break
        if not ff:
            break
    HY = homotopy_category(Y, check_segal=False)
    inv = set(invertibles(HY))
    image = {f.comps[z][0][x] for x in range(X.size(z))}
    es = True
    for y in range(Y.size(z)):
        if y in image:
            continue
        if not any(HY.morphisms[m][0] == y and HY.morphisms[m][1] in image for m in inv):
            es = False
            if witness is None:
                witness = {"essentially_surjective": {"object": y}}
            break
    bound = max(degree(t) for t in X.cat.objects)
    return DKReport(ff, es, witness, exact, bound)
