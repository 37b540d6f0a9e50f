"""Truncation, skeleta, coskeleta and discretization relative to a set T of objects,
and the comparison pullbacks built from them.

Kan extensions are computed as explicit finite (co)limits.  The coskeleton
at t is the set of natural maps ``hom(-, t)|T -> X|T`` (in each simplicial
degree), the skeleton at t is the quotient of ``sum_s hom(t, s) x X(s)`` by
the usual relation.  Since T is a full subcategory of the ambient bound, the
indexing categories are always complete, so every result is exact.
"""

from . import simplicial as ss
from .presheaf import (PresheafMap, ThetaSet, generated_congruence, pullback, quotient_presheaf,
                       representable, sub_presheaf, _canonical_category)
from .search import NatProblem
from .simplicial import UnionFind
from .theta import cell, compose, degree, format_object, hom


class ObjectSubset:
    """A finite set T of objects of Theta_n.

    ``bottom_up`` is true when T is ``{[1]^(0), ..., [1]^(j)}`` for some j.
    """

    def __init__(self, level, members):
        members = tuple(members)
        if len(set(members)) != len(members):
            raise ValueError("duplicate members")
        for t in members:
            if t.level != level:
                raise ValueError(f"{format_object(t)} is not an object of level {level}")
        self.level = level
        self.members = tuple(sorted(members, key=lambda t: (degree(t), format_object(t))))

    @classmethod
    def cells(cls, indices, n):
        return cls(n, [cell(i, n) for i in indices])

    @classmethod
    def S(cls, n):
        """All free-standing cells ``[1]^(i)`` with ``0 <= i < n``."""
        return cls.cells(range(n), n)

    @classmethod
    def bottom(cls, j, n):
        """``T_j = {[1]^(0), ..., [1]^(j)}``."""
        return cls.cells(range(j + 1), n)

    def cell_indices(self):
        """Indices i with ``[1]^(i)`` in T (other members are ignored)."""
        out = []
        for i in range(self.level + 1):
            if cell(i, self.level) in self.members:
                out.append(i)
        return out

    @property
    def bottom_up(self):
        idx = self.cell_indices()
        return len(idx) == len(self.members) and idx == list(range(len(idx)))

    def __contains__(self, t):
        return t in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return "{" + ",".join(format_object(t) for t in self.members) + "}"

    def category(self):
        return _canonical_category(self.members)


def _as_subset(T, n):
    if isinstance(T, ObjectSubset):
        return T
    return ObjectSubset(n, list(T))


class KanResult:
    """A (co)skeleton together with its bound certification."""

    def __init__(self, value, certified, note=""):
        self.value = value
        self.certified = certified
        self.note = note


def truncate(X, T):
    """Restriction of X to the full subcategory on T."""
    T = _as_subset(T, X.level)
    for t in T:
        if t not in X.cat:
            raise ValueError(f"{format_object(t)} lies outside the bound of the presheaf")
    tcat = T.category()
    values = {t: X.values[t] for t in tcat.objects}
    theta = [X.theta[X.cat.mor_index[f]] for f in tcat.morphisms]
    elements = None
    if X.elements is not None:
        elements = {t: X.elements[t] for t in tcat.objects}
    return ThetaSet(tcat, X.bound, values, theta, name=f"tr_T {X.name}", elements=elements)


def truncate_map(f, T):
    """Restriction of a map to the full subcategory on T."""
    S, R = truncate(f.source, T), truncate(f.target, T)
    return PresheafMap(S, R, {t: f.comps[t] for t in S.cat.objects})


def _degree_slice(XT, k):
    """The discrete presheaf ``s -> X(s)_k`` on the category of XT."""
    cat = XT.cat
    values = {t: ss.discrete(XT.size(t, k), 0) for t in cat.objects}
    theta = [(XT.theta[fid][k],) for fid in range(len(cat.morphisms))]
    return ThetaSet(cat, 0, values, theta)


class _CoskData:
    """Variables of ``hom(-, t)|T`` for every t, for reuse across constructions."""

    def __init__(self, cat, tcat):
        self.reps = {}
        self.var_of = {}
        for t in cat.objects:
            R = representable(t, tcat, 0)
            self.reps[t] = R
            order = []
            for s in tcat.objects:
                order.extend(R.elements[s][0])
            self.var_of[t] = {u: i for i, u in enumerate(order)}
            self.reps[t].flat = order


def coskeleton(X, T, cat=None, with_unit=False):
    """``cosk_T X`` on ``cat`` (default: the category of X).

    The k-simplices at t are the natural maps ``hom(-, t)|T -> X_k|T``,
    recorded as tuples indexed by the maps ``u: s -> t`` with s in T.
    With ``with_unit`` also returns the unit ``X -> cosk_T X``.
    """
    T = _as_subset(T, X.level)
    cat = cat or X.cat
    XT = truncate(X, T)
    tcat = XT.cat
    data = _CoskData(cat, tcat)
    slices = [_degree_slice(XT, k) for k in range(X.bound + 1)]
    elements = {}
    for t in cat.objects:
        R = data.reps[t]
        per = []
        for k in range(X.bound + 1):
            prob = NatProblem(R, slices[k])
            _, sols = prob.solve()
            per.append([tuple(s) for s in sols])
        elements[t] = per
    # variable order of NatProblem matches R.flat: objects of tcat in order, elements in order
    src_of = {}
    for t in cat.objects:
        src_of[t] = [u.source for u in data.reps[t].flat]

    def theta_op(f, k, sigma):
        var_b = data.var_of[f.target]
        return tuple(sigma[var_b[compose(f, u)]] for u in data.reps[f.source].flat)

    def simp_op(t, alpha, l, sigma):
        srcs = src_of[t]
        return tuple(X.values[s].act(alpha, l)[v] for s, v in zip(srcs, sigma))

    C = ThetaSet.from_action(cat, X.bound, elements, theta_op, simp_op,
                             name=f"cosk_{T!r}({X.name})")
    C.cosk_data = data
    if not with_unit:
        return C
    return C, coskeleton_unit(X, C)


def coskeleton_size(X, T, t, k=0):
    """``|(cosk_T X)(t)_k|`` by counting, without building the coskeleton.

    The count factors over independent parts of ``hom(-, t)|T``, so values
    far too large to enumerate are still exact.
    """
    T = _as_subset(T, X.level)
    XT = truncate(X, T)
    R = representable(t, XT.cat, 0)
    return NatProblem(R, _degree_slice(XT, k)).count()


def coskeleton_unit(X, C):
    """``X -> cosk_T X``: a simplex x maps to ``(u^* x)_u``."""
    data = C.cosk_data
    index = {t: [{e: i for i, e in enumerate(C.elements[t][k])} for k in range(X.bound + 1)]
             for t in X.cat.objects}

    def fn(t, k, x):
        sigma = tuple(X.pull(u, k)[x] for u in data.reps[t].flat)
        return index[t][k][sigma]

    return PresheafMap.from_function(X, C, fn)


def coskeleton_map(f, CX, CY):
    """``cosk_T f: cosk_T X -> cosk_T Y`` for ``f: X -> Y``, applied pointwise."""
    data = CX.cosk_data
    index = {t: [{e: i for i, e in enumerate(CY.elements[t][k])} for k in range(CY.bound + 1)]
             for t in CY.cat.objects}

    def fn(t, k, z):
        sigma = CX.elements[t][k][z]
        return index[t][k][tuple(f.comps[u.source][k][v] for u, v in zip(data.reps[t].flat, sigma))]

    return PresheafMap.from_function(CX, CY, fn)


def skeleton(X, T, cat=None):
    """``sk_T X`` on ``cat``: ``sum_{s in T} hom(t, s) x X(s)`` modulo
    ``(v.u, x) ~ (u, v^* x)``."""
    T = _as_subset(T, X.level)
    cat = cat or X.cat
    XT = truncate(X, T)
    tcat = XT.cat
    canon = {}
    elements = {}
    for t in cat.objects:
        per, cper = [], []
        for k in range(X.bound + 1):
            raw = [(u, x) for s in tcat.objects for u in hom(t, s) for x in range(XT.size(s, k))]
            pos = {e: i for i, e in enumerate(raw)}
            uf = UnionFind(len(raw))
            for s in tcat.objects:
                for u in hom(t, s):
                    for vid in tcat.out_of[s]:
                        v = tcat.morphisms[vid]
                        vu = compose(v, u)
                        tab = XT.theta[vid][k]
                        for x2 in range(XT.size(v.target, k)):
                            uf.union(pos[(vu, x2)], pos[(u, tab[x2])])
            c = {e: raw[uf.find(i)] for i, e in enumerate(raw)}
            cper.append(c)
            per.append(sorted({c[e] for e in raw}, key=lambda e: pos[e]))
        canon[t] = cper
        elements[t] = per

    def theta_op(f, k, e):
        u, x = e
        return canon[f.source][k][(compose(u, f), x)]

    def simp_op(t, alpha, l, e):
        u, x = e
        return canon[t][len(alpha) - 1][(u, X.values[u.target].act(alpha, l)[x])]

    return ThetaSet.from_action(cat, X.bound, elements, theta_op, simp_op,
                                name=f"sk_{T!r}({X.name})")


def skeleton_counit(X, K):
    """``sk_T X -> X``: ``(u, x) -> u^* x``."""

    def fn(t, k, z):
        u, x = K.elements[t][k][z]
        return X.pull(u, k)[x]

    return PresheafMap.from_function(K, X, fn)


def discretize(X, T):
    """Replace the values at T by their components (left adjoint form).

    The result is the quotient of X by the smallest congruence identifying
    all k-simplices of ``X(s)`` in the same component, for s in T.  It is
    T-discrete, and every map from X to a T-discrete presheaf factors
    uniquely through it.  Returns the quotient and the projection.
    """
    T = _as_subset(T, X.level)
    pairs = []
    for s in T:
        if s not in X.cat:
            continue
        lab = ss.pi0(X.values[s])
        for k in range(X.bound + 1):
            first = {}
            for x in range(X.size(s, k)):
                c = lab[X.values[s].act((0,), k)[x]]
                if c in first:
                    pairs.append((s, k, first[c], x))
                else:
                    first[c] = x
    labels = generated_congruence(X, pairs)
    return quotient_presheaf(X, labels, name=f"disc_{T!r}({X.name})")


def _totally_degenerate(v, k, y):
    return v.total_degeneracy(k, v.act((0,), k)[y]) == y


def discretize_right(Y, T):
    """The largest sub-presheaf of Y that is discrete at every member of T.

    A simplex y of ``Y(a)`` survives when ``u^* y`` is a degenerate vertex
    for every ``u: s -> a`` with s in T.  Every map from a T-discrete
    presheaf into Y factors uniquely through it.  Returns it and the inclusion.
    """
    T = _as_subset(T, Y.level)
    cat = Y.cat
    keep = {}
    for a in cat.objects:
        per = []
        for k in range(Y.bound + 1):
            ok = set(range(Y.size(a, k)))
            for s in T:
                if s not in cat:
                    continue
                v = Y.values[s]
                for fid in cat.hom_ids[(s, a)]:
                    tab = Y.theta[fid][k]
                    ok = {y for y in ok if _totally_degenerate(v, k, tab[y])}
            per.append(ok)
        keep[a] = per
    return sub_presheaf(Y, keep, name=f"disc^R_{T!r}({Y.name})")


def is_T_discrete(X, T):
    T = _as_subset(T, X.level)
    return all(X.values[s].is_discrete() for s in T if s in X.cat)


def vertex_presheaf(W):
    """``W_{*,0}``: the levelwise-discrete presheaf on the vertices of W, with its map into W."""
    cat = W.cat
    values = {t: ss.discrete(W.size(t, 0), W.bound) for t in cat.objects}
    theta = [(W.theta[fid][0],) * (W.bound + 1) for fid in range(len(cat.morphisms))]
    W0 = ThetaSet(cat, W.bound, values, theta, name=f"{W.name}_0")
    inc = PresheafMap.from_function(W0, W, lambda t, k, x: W.values[t].total_degeneracy(k, x))
    return W0, inc


class RResult:
    def __init__(self, RW, to_W, U, V, j):
        self.RW = RW
        self.to_W = to_W
        self.U = U
        self.V = V
        self.j = j


def R_discretize(W, j):
    """``RW = W x_U V`` with ``U = cosk_T W`` and ``V = cosk_T W_{*,0}`` for ``T = {[1]^(j)}``.

    RW is discrete at ``[1]^(j)``, agrees with W on vertices, and comes with
    the projection ``RW -> W``.
    """
    n = W.level
    if not 0 <= j < max(n, 1):
        raise ValueError(f"j must satisfy 0 <= j < {n}")
    T = ObjectSubset(n, [cell(j, n)])
    U, unit = coskeleton(W, T, with_unit=True)
    W0, inc = vertex_presheaf(W)
    V = coskeleton(W0, T)
    VU = coskeleton_map(inc, V, U)
    RW, p1, _ = pullback(unit, VU)
    RW.name = f"R_{j}({W.name})"
    return RResult(RW, p1, U, V, j)


class PhiResult:
    def __init__(self, PhiY, from_X, to_Y):
        self.PhiY = PhiY
        self.from_X = from_X
        self.to_Y = to_Y


def phi(Y, X, f, T):
    """``PhiY = Y x_{cosk_T Y} cosk_T X`` with the factorization ``X -> PhiY -> Y`` of f."""
    T = _as_subset(T, Y.level)
    CY, uY = coskeleton(Y, T, with_unit=True)
    CX, uX = coskeleton(X, T, with_unit=True)
    cf = coskeleton_map(f, CX, CY)
    P, p1, p2 = pullback(uY, cf)
    P.name = f"Phi({Y.name})"
    index = {t: [{e: i for i, e in enumerate(P.elements[t][k])} for k in range(P.bound + 1)]
             for t in P.cat.objects}

    def fn(t, k, x):
        return index[t][k][(f.comps[t][k][x], uX.comps[t][k][x])]

    from_X = PresheafMap.from_function(X, P, fn)
    return PhiResult(P, from_X, p1)
