"""Finite presheaves on bounded full subcategories of Theta_n.

A :class:`ThetaSet` assigns to every object t of its category a truncated
simplicial set ``X(t)`` and to every morphism ``f: a -> b`` a simplicial map
``X(b) -> X(a)``, stored as one table per simplicial degree.
"""

from . import simplicial as ss
from .simplicial import FinSimpSet, UnionFind
from .theta import (ThetaObject, ThetaMorphism, category, bounded, compose, degree,
                    edge, enumerate_objects, format_morphism, format_object, hom, identity,
                    required_indices, suspend, tau_theta, vertex, zero)


class ThetaSet:
    """A finite presheaf on ``cat`` valued in simplicial sets truncated at ``bound``.

    ``values[t]`` is a :class:`FinSimpSet` and ``theta[f_id][k]`` the table of
    ``f^*`` on k-simplices, for ``f_id`` indexing ``cat.morphisms``.
    ``elements``, when present, records the combinatorial meaning of each
    numbered simplex.
    """

    def __init__(self, cat, bound, values, theta, name="", elements=None):
        self.cat = cat
        self.level = cat.level
        self.bound = bound
        self.values = values
        self.theta = theta
        self.name = name
        self.elements = elements

    @classmethod
    def from_action(cls, cat, bound, elements, theta_op, simp_op=None, name=""):
        """Build from explicit simplices.

        ``elements[t][k]`` lists hashable k-simplices of ``X(t)``;
        ``theta_op(f, k, e)`` pulls e back along the morphism f and
        ``simp_op(t, alpha, l, e)`` along a simplicial operator.  When
        ``simp_op`` is None every value is discrete (simplices in every degree
        are the same set and operators act trivially).
        """
        values, index = {}, {}
        for t in cat.objects:
            els = elements[t]
            if simp_op is None:
                values[t] = ss.discrete(len(els[0]), bound)
                index[t] = [{e: i for i, e in enumerate(els[0])}] * (bound + 1)
            else:
                values[t], index[t] = FinSimpSet.from_elements(
                    els, lambda alpha, l, e, t=t: simp_op(t, alpha, l, e))
        theta = []
        for f in cat.morphisms:
            a, b = f.source, f.target
            if a is b and f is identity(a):
                theta.append(tuple(tuple(range(values[a].sizes[k])) for k in range(bound + 1)))
                continue
            if simp_op is None:
                row = tuple(index[a][0][theta_op(f, 0, e)] for e in elements[b][0])
                theta.append((row,) * (bound + 1))
            else:
                theta.append(tuple(tuple(index[a][k][theta_op(f, k, e)] for e in elements[b][k])
                                   for k in range(bound + 1)))
        return cls(cat, bound, values, theta, name=name, elements=elements)

    # basic access

    def size(self, t, k=0):
        return self.values[t].sizes[k]

    def pull(self, f, k=0):
        """Table of ``f^*`` on k-simplices; f is a morphism or a morphism id."""
        if isinstance(f, ThetaMorphism):
            f = self.cat.mor_index[f]
        return self.theta[f][k]

    def total_cells(self):
        return sum(v.total() for v in self.values.values())

    def sizes(self):
        return {format_object(t): list(self.values[t].sizes) for t in self.cat.objects}

    def is_discrete_at(self, t):
        return self.values[t].is_discrete()

    def is_levelwise_discrete(self):
        return all(v.is_discrete() for v in self.values.values())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<ThetaSet{label} n={self.level} objects={len(self.cat.objects)} cells={self.total_cells()}>"

    def same_shape(self, other):
        return self.cat is other.cat and self.bound == other.bound

    def validate(self, pairs_limit=None):
        """Check functoriality and that each action is simplicial.

        Returns None or a message naming the first failing composite.
        """
        cat = self.cat
        for t in cat.objects:
            msg = self.values[t].validate()
            if msg:
                return f"at {format_object(t)}: {msg}"
        for t in cat.objects:
            ident = cat.identity_id[t]
            for k in range(self.bound + 1):
                if self.theta[ident][k] != tuple(range(self.size(t, k))):
                    return f"identity of {format_object(t)} acts non-trivially in degree {k}"
        for fid, f in enumerate(cat.morphisms):
            a, b = f.source, f.target
            va, vb = self.values[a], self.values[b]
            for k in range(self.bound + 1):
                tab = self.theta[fid][k]
                if len(tab) != vb.sizes[k] or any(not 0 <= y < va.sizes[k] for y in tab):
                    return f"action of {_mname(f)} has the wrong shape in degree {k}"
            for k in range(1, self.bound + 1):
                for i in range(k + 1):
                    fa, fb = va.faces[k][i], vb.faces[k][i]
                    lo, hi = self.theta[fid][k - 1], self.theta[fid][k]
                    for x in range(vb.sizes[k]):
                        if fa[hi[x]] != lo[fb[x]]:
                            return f"action of {_mname(f)} does not commute with d{i} in degree {k}"
            for k in range(self.bound):
                for i in range(k + 1):
                    da, db = va.degens[k][i], vb.degens[k][i]
                    lo, hi = self.theta[fid][k], self.theta[fid][k + 1]
                    for x in range(vb.sizes[k]):
                        if da[lo[x]] != hi[db[x]]:
                            return f"action of {_mname(f)} does not commute with s{i} in degree {k}"
        for fid, f in enumerate(cat.morphisms):
            for gid in cat.out_of[f.target]:
                h = cat.comp(gid, fid)
                for k in range(self.bound + 1):
                    tf, tg, th = self.theta[fid][k], self.theta[gid][k], self.theta[h][k]
                    for x in range(len(tg)):
                        if tf[tg[x]] != th[x]:
                            g = cat.morphisms[gid]
                            return (f"functoriality fails: ({_mname(g)} . {_mname(f)})^* != "
                                    f"{_mname(f)}^* {_mname(g)}^* on {format_object(g.target)}")
        return None


def _mname(f):
    return f"{format_morphism(f)}:{format_object(f.source)}->{format_object(f.target)}"


class PresheafMap:
    """A natural map of ThetaSets; ``comps[t][k]`` is the table on k-simplices."""

    def __init__(self, source, target, comps):
        self.source = source
        self.target = target
        self.comps = comps

    def __call__(self, t, x, k=0):
        return self.comps[t][k][x]

    @classmethod
    def from_function(cls, source, target, fn):
        """``fn(t, k, x)`` gives the image of the k-simplex x of ``source(t)``."""
        comps = {}
        for t in source.cat.objects:
            comps[t] = tuple(tuple(fn(t, k, x) for x in range(source.size(t, k)))
                             for k in range(source.bound + 1))
        return cls(source, target, comps)

    def check_natural(self):
        """None when the map is natural and simplicial, else a message."""
        X, Y = self.source, self.target
        for t in X.cat.objects:
            for k in range(X.bound + 1):
                tab = self.comps[t][k]
                if len(tab) != X.size(t, k) or any(not 0 <= y < Y.size(t, k) for y in tab):
                    return f"component at {format_object(t)} has the wrong shape"
            vx, vy = X.values[t], Y.values[t]
            for k in range(1, X.bound + 1):
                for i in range(k + 1):
                    for x in range(X.size(t, k)):
                        if vy.faces[k][i][self.comps[t][k][x]] != self.comps[t][k - 1][vx.faces[k][i][x]]:
                            return f"component at {format_object(t)} does not commute with d{i}"
            for k in range(X.bound):
                for i in range(k + 1):
                    for x in range(X.size(t, k)):
                        if vy.degens[k][i][self.comps[t][k][x]] != self.comps[t][k + 1][vx.degens[k][i][x]]:
                            return f"component at {format_object(t)} does not commute with s{i}"
        for fid, f in enumerate(X.cat.morphisms):
            a, b = f.source, f.target
            for k in range(X.bound + 1):
                fx, fy = X.theta[fid][k], Y.theta[fid][k]
                ca, cb = self.comps[a][k], self.comps[b][k]
                for x in range(X.size(b, k)):
                    if ca[fx[x]] != fy[cb[x]]:
                        return f"naturality fails along {_mname(f)}"
        return None

    def is_mono(self):
        return all(len(set(tab)) == len(tab) for comp in self.comps.values() for tab in comp)

    def is_epi(self):
        return all(len(set(self.comps[t][k])) == self.target.size(t, k)
                   for t in self.source.cat.objects for k in range(self.source.bound + 1))

    def is_iso(self):
        return self.is_mono() and self.is_epi()

    def then(self, g):
        """The composite ``g . self``."""
        comps = {t: tuple(tuple(g.comps[t][k][y] for y in self.comps[t][k])
                          for k in range(self.source.bound + 1))
                 for t in self.source.cat.objects}
        return PresheafMap(self.source, g.target, comps)

    def __eq__(self, other):
        return isinstance(other, PresheafMap) and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(self.comps[t] for t in self.source.cat.objects))


def identity_map(X):
    return PresheafMap(X, X, {t: tuple(tuple(range(X.size(t, k))) for k in range(X.bound + 1))
                              for t in X.cat.objects})


# basic presheaves

def _cat_for(cat_or_n, d=None):
    if isinstance(cat_or_n, int):
        return bounded(cat_or_n, d)
    return cat_or_n


def representable(t, cat=None, bound=0):
    """``Theta[t] = hom(-, t)``, levelwise discrete."""
    if cat is None:
        cat = bounded(t.level, degree(t))
    elements = {s: [list(hom(s, t))] * (bound + 1) for s in cat.objects}
    return ThetaSet.from_action(cat, bound, elements, lambda f, k, u: compose(u, f),
                                name=f"Theta[{format_object(t)}]")


def simplex_times_representable(m, t, cat=None, bound=None, simplex_boundary=False,
                                theta_boundary=False, union=False):
    """``Delta[m] x Theta[t]`` and its sub-presheaves.

    ``simplex_boundary`` replaces Delta[m] by its boundary, ``theta_boundary``
    replaces Theta[t] by its boundary; with ``union`` the result is the union
    of the two (the domain of the Reedy generating cofibration).
    """
    if cat is None:
        cat = bounded(t.level, degree(t))
    if bound is None:
        bound = m
    lower = _lower_composites(t, cat)

    def keep(alpha, u):
        in_bd_simplex = len(set(alpha)) < m + 1
        in_bd_theta = u in lower
        if union:
            return in_bd_simplex or in_bd_theta
        if simplex_boundary and not in_bd_simplex:
            return False
        if theta_boundary and not in_bd_theta:
            return False
        return True

    elements = {}
    for s in cat.objects:
        hs = hom(s, t)
        elements[s] = [[(a, u) for a in ss.monotone(k, m) for u in hs if keep(a, u)]
                       for k in range(bound + 1)]
    name = ("dD" if simplex_boundary else "D") + f"[{m}]x" + ("dTheta" if theta_boundary else "Theta")
    if union:
        name = f"(dD[{m}]xTheta u D[{m}]xdTheta)"
    return ThetaSet.from_action(
        cat, bound, elements,
        lambda f, k, e: (e[0], compose(e[1], f)),
        lambda s, alpha, l, e: (ss.compose_maps(e[0], alpha), e[1]),
        name=f"{name}[{format_object(t)}]")


def constant(K, cat, name=""):
    """The presheaf with value K everywhere and identity actions."""
    theta = []
    for f in cat.morphisms:
        theta.append(tuple(tuple(range(K.sizes[k])) for k in range(K.bound + 1)))
    return ThetaSet(cat, K.bound, {t: K for t in cat.objects}, theta, name=name or "const")


def terminal(cat, bound=0):
    return constant(ss.point(bound), cat, name="terminal")


def empty(cat, bound=0):
    return constant(ss.empty(bound), cat, name="empty")


def discrete_presheaf(cat, sets, actions, bound=0, name=""):
    """A levelwise-discrete presheaf from element lists and ``actions(f, e)``."""
    elements = {t: [list(sets[t])] * (bound + 1) for t in cat.objects}
    return ThetaSet.from_action(cat, bound, elements, lambda f, k, e: actions(f, e), name=name)


# sub-presheaves: boundary and spine

_lower_cache = {}


def _lower_composites(t, cat):
    """Morphisms into t (from objects of ``cat``) factoring through an object of lower degree."""
    key = (t, cat)
    found = _lower_cache.get(key)
    if found is not None:
        return found
    d = degree(t)
    out = set()
    if d > 0:
        lows = enumerate_objects(t.level, d - 1)
        for s in cat.objects:
            for r in lows:
                into = hom(r, t)
                for h in hom(s, r):
                    for g in into:
                        out.add(compose(g, h))
    out = frozenset(out)
    _lower_cache[key] = out
    return out


def sub_presheaf(X, keep, name=""):
    """The sub-presheaf on ``keep[t][k]`` (sets of simplex ids); returns it and its inclusion."""
    cat = X.cat
    lists = {t: [sorted(keep[t][k]) for k in range(X.bound + 1)] for t in cat.objects}
    index = {t: [{x: i for i, x in enumerate(lists[t][k])} for k in range(X.bound + 1)]
             for t in cat.objects}
    values = {}
    for t in cat.objects:
        values[t], _ = ss.subset(X.values[t], lists[t])
    theta = []
    for fid, f in enumerate(cat.morphisms):
        a, b = f.source, f.target
        theta.append(tuple(tuple(index[a][k][X.theta[fid][k][x]] for x in lists[b][k])
                           for k in range(X.bound + 1)))
    elements = None
    if X.elements is not None:
        elements = {t: [[X.elements[t][k][x] for x in lists[t][k]] for k in range(X.bound + 1)]
                    for t in cat.objects}
    S = ThetaSet(cat, X.bound, values, theta, name=name, elements=elements)
    inc = PresheafMap(S, X, {t: tuple(tuple(lists[t][k]) for k in range(X.bound + 1))
                             for t in cat.objects})
    return S, inc


def boundary(t, cat=None, bound=0):
    """``dTheta[t]``: maps into t factoring through an object of strictly lower degree.

    Returns the sub-presheaf and its inclusion into ``representable(t)``.
    """
    if cat is None:
        cat = bounded(t.level, degree(t))
    R = representable(t, cat, bound)
    lower = _lower_composites(t, cat)
    keep = {s: [{i for i, u in enumerate(R.elements[s][k]) if u in lower}
                for k in range(bound + 1)] for s in cat.objects}
    return sub_presheaf(R, keep, name=f"dTheta[{format_object(t)}]")


def spine(t, cat=None, bound=0):
    """``G[t]`` for ``t = [q](c_1..c_q)`` as the literal colimit of edge representables.

    The edges ``Theta[[1](c_i)]`` are glued target-to-source along
    ``Theta[0]``.  Returns ``(G, inclusion into representable(t))``; the
    inclusion is computed from the edge maps and checked to be injective.
    """
    if cat is None:
        cat = bounded(t.level, degree(t))
    n, q = t.level, t.width
    R = representable(t, cat, bound)
    if q == 0:
        return R, identity_map(R)
    z = zero(n)
    edges = [ThetaObject(n, (c,)) for c in t.cells]
    # simplices: (i, u) with u: s -> [1](c_i); glue (i, v1 . !) ~ (i+1, v0 . !)
    per_object = {}
    for s in cat.objects:
        raw = [(i, u) for i in range(q) for u in hom(s, edges[i])]
        pos = {e: j for j, e in enumerate(raw)}
        uf = UnionFind(len(raw))
        bang = hom(s, z)[0]
        for i in range(q - 1):
            a = (i, compose(vertex(edges[i], 1), bang))
            b = (i + 1, compose(vertex(edges[i + 1], 0), bang))
            uf.union(pos[a], pos[b])
        classes = {}
        rep_of = []
        for j, e in enumerate(raw):
            r = uf.find(j)
            if r not in classes:
                classes[r] = len(classes)
                rep_of.append(e)
        label = [classes[uf.find(j)] for j in range(len(raw))]
        per_object[s] = (raw, pos, label, rep_of)
    values = {s: ss.discrete(len(per_object[s][3]), bound) for s in cat.objects}
    theta = []
    for f in cat.morphisms:
        a, b = f.source, f.target
        raw_a, pos_a, label_a, _ = per_object[a]
        row = tuple(label_a[pos_a[(i, compose(u, f))]] for (i, u) in per_object[b][3])
        theta.append((row,) * (bound + 1))
    elements = {s: [per_object[s][3]] * (bound + 1) for s in cat.objects}
    G = ThetaSet(cat, bound, values, theta, name=f"G[{format_object(t)}]", elements=elements)
    comps = {}
    for s in cat.objects:
        ridx = {u: j for j, u in enumerate(R.elements[s][0])}
        row = tuple(ridx[compose(edge(t, i + 1), u)] for (i, u) in per_object[s][3])
        comps[s] = (row,) * (bound + 1)
    return G, PresheafMap(G, R, comps)


def spine_image(t, cat=None, bound=0):
    """Union of the images of the spine edges inside ``Theta[t]``."""
    G, inc = spine(t, cat, bound)
    R = inc.target
    keep = {s: [set(inc.comps[s][k]) for k in range(bound + 1)] for s in R.cat.objects}
    return sub_presheaf(R, keep, name=f"spine[{format_object(t)}]")


# limits and colimits

def product(X, Y):
    """Levelwise product; the pair (x, y) is numbered ``x * |Y(t)_k| + y``."""
    if not X.same_shape(Y):
        raise ValueError("product needs presheaves on the same category and bound")
    cat = X.cat
    values = {t: ss.product(X.values[t], Y.values[t]) for t in cat.objects}
    theta = []
    for fid, f in enumerate(cat.morphisms):
        a, b = f.source, f.target
        rows = []
        for k in range(X.bound + 1):
            tx, ty = X.theta[fid][k], Y.theta[fid][k]
            na, nb = Y.size(a, k), Y.size(b, k)
            rows.append(tuple(tx[x] * na + ty[y] for x in range(X.size(b, k)) for y in range(nb)))
        theta.append(tuple(rows))
    P = ThetaSet(cat, X.bound, values, theta, name=f"({X.name} x {Y.name})")
    p1 = PresheafMap(P, X, {t: tuple(tuple(z // Y.size(t, k) for z in range(P.size(t, k)))
                                     for k in range(X.bound + 1)) for t in cat.objects})
    p2 = PresheafMap(P, Y, {t: tuple(tuple(z % Y.size(t, k) for z in range(P.size(t, k)))
                                     for k in range(X.bound + 1)) for t in cat.objects})
    return P, p1, p2


def pullback(f, g):
    """Fiber product of ``f: X -> Z`` and ``g: Y -> Z``; returns ``(P, p1, p2)``.

    Pairs are ordered lexicographically by (x, y).
    """
    X, Y = f.source, g.source
    if f.target is not g.target and not f.target.same_shape(g.target):
        raise ValueError("pullback needs a common codomain")
    cat = X.cat
    elements = {}
    for t in cat.objects:
        per = []
        for k in range(X.bound + 1):
            by_z = {}
            for y in range(Y.size(t, k)):
                by_z.setdefault(g.comps[t][k][y], []).append(y)
            per.append([(x, y) for x in range(X.size(t, k)) for y in by_z.get(f.comps[t][k][x], ())])
        elements[t] = per

    def theta_op(m, k, e):
        mid = X.cat.mor_index[m]
        return (X.theta[mid][k][e[0]], Y.theta[mid][k][e[1]])

    def simp_op(t, alpha, l, e):
        return (X.values[t].act(alpha, l)[e[0]], Y.values[t].act(alpha, l)[e[1]])

    P = ThetaSet.from_action(cat, X.bound, elements, theta_op, simp_op,
                             name=f"({X.name} x_Z {Y.name})")
    p1 = PresheafMap(P, X, {t: tuple(tuple(e[0] for e in elements[t][k]) for k in range(X.bound + 1))
                            for t in cat.objects})
    p2 = PresheafMap(P, Y, {t: tuple(tuple(e[1] for e in elements[t][k]) for k in range(X.bound + 1))
                            for t in cat.objects})
    return P, p1, p2


def coproduct(parts, name=""):
    """Disjoint union; returns the coproduct and the list of injections."""
    cat = parts[0].cat
    bound = parts[0].bound
    elements = {t: [[(p, x) for p, X in enumerate(parts) for x in range(X.size(t, k))]
                    for k in range(bound + 1)] for t in cat.objects}

    def theta_op(m, k, e):
        return (e[0], parts[e[0]].theta[cat.mor_index[m]][k][e[1]])

    def simp_op(t, alpha, l, e):
        return (e[0], parts[e[0]].values[t].act(alpha, l)[e[1]])

    C = ThetaSet.from_action(cat, bound, elements, theta_op, simp_op, name=name or "coproduct")
    injections = []
    for p, X in enumerate(parts):
        comps = {}
        for t in cat.objects:
            rows = []
            for k in range(bound + 1):
                off = sum(parts[r].size(t, k) for r in range(p))
                rows.append(tuple(off + x for x in range(X.size(t, k))))
            comps[t] = tuple(rows)
        injections.append(PresheafMap(X, C, comps))
    return C, injections


def quotient_presheaf(X, labels, name=""):
    """Quotient of X by a congruence given as ``labels[t][k][x]``; returns it and the projection."""
    cat = X.cat
    proj, reps, values = {}, {}, {}
    for t in cat.objects:
        values[t], proj[t] = ss.quotient(X.values[t], labels[t])
        reps[t] = []
        for k in range(X.bound + 1):
            r = [None] * values[t].sizes[k]
            for x, c in enumerate(proj[t][k]):
                if r[c] is None:
                    r[c] = x
            reps[t].append(r)
    theta = []
    for fid, f in enumerate(cat.morphisms):
        a, b = f.source, f.target
        theta.append(tuple(tuple(proj[a][k][X.theta[fid][k][x]] for x in reps[b][k])
                           for k in range(X.bound + 1)))
    Q = ThetaSet(cat, X.bound, values, theta, name=name)
    return Q, PresheafMap(X, Q, {t: tuple(tuple(p) for p in proj[t]) for t in cat.objects})


def _slot_offsets(X):
    offset, total = {}, 0
    for t in X.cat.objects:
        for k in range(X.bound + 1):
            offset[(t, k)] = total
            total += X.size(t, k)
    return offset, total


def generated_congruence(X, pairs):
    """Labels of the smallest congruence identifying each ``(t, k, x, y)`` in pairs."""
    cat = X.cat
    offset, total = _slot_offsets(X)
    uf = ss.UnionFind(total)
    work = []

    def merge(t, k, x, y):
        if uf.union(offset[(t, k)] + x, offset[(t, k)] + y):
            work.append((t, k, x, y))

    for t, k, x, y in pairs:
        merge(t, k, x, y)
    while work:
        t, k, x, y = work.pop()
        for fid in cat.into[t]:
            a = cat.morphisms[fid].source
            tab = X.theta[fid][k]
            merge(a, k, tab[x], tab[y])
        v = X.values[t]
        if k > 0:
            for f in v.faces[k]:
                merge(t, k - 1, f[x], f[y])
        if k < X.bound:
            for d in v.degens[k]:
                merge(t, k + 1, d[x], d[y])
    return {t: [[uf.find(offset[(t, k)] + x) for x in range(X.size(t, k))]
                for k in range(X.bound + 1)] for t in cat.objects}


def generated_subsets(X, gens):
    """The smallest sub-presheaf containing each ``(t, k, x)`` of gens, as ``keep[t][k]`` sets."""
    cat = X.cat
    keep = {t: [set() for _ in range(X.bound + 1)] for t in cat.objects}
    work = []

    def add(t, k, x):
        if x not in keep[t][k]:
            keep[t][k].add(x)
            work.append((t, k, x))

    for t, k, x in gens:
        add(t, k, x)
    while work:
        t, k, x = work.pop()
        for fid in cat.into[t]:
            add(cat.morphisms[fid].source, k, X.theta[fid][k][x])
        v = X.values[t]
        if k > 0:
            for f in v.faces[k]:
                add(t, k - 1, f[x])
        if k < X.bound:
            for d in v.degens[k]:
                add(t, k + 1, d[x])
    return keep


def pushout(f, g, name=""):
    """Pushout of ``f: A -> B`` and ``g: A -> C``; returns ``(P, iB, iC)``.

    Computed as the quotient of ``B + C`` by the relation ``f(a) ~ g(a)``,
    which is automatically a congruence because f and g are natural.
    """
    B, C = f.target, g.target
    S, (jb, jc) = coproduct([B, C])
    A = f.source
    labels = {}
    for t in S.cat.objects:
        per = []
        for k in range(S.bound + 1):
            uf = UnionFind(S.size(t, k))
            for a in range(A.size(t, k)):
                uf.union(jb.comps[t][k][f.comps[t][k][a]], jc.comps[t][k][g.comps[t][k][a]])
            per.append([uf.find(x) for x in range(S.size(t, k))])
        labels[t] = per
    P, proj = quotient_presheaf(S, labels, name=name or "pushout")
    return P, jb.then(proj), jc.then(proj)


# Segal maps and mapping objects

class SegalMapResult:
    """The Segal map of X at t in one simplicial degree."""

    def __init__(self, t, k, injective, surjective, domain_size, codomain_size, witness):
        self.t = t
        self.k = k
        self.injective = injective
        self.surjective = surjective
        self.domain_size = domain_size
        self.codomain_size = codomain_size
        self.witness = witness

    @property
    def bijective(self):
        return self.injective and self.surjective

    def as_dict(self):
        return {"object": format_object(self.t), "degree": self.k, "injective": self.injective,
                "surjective": self.surjective, "domain": self.domain_size,
                "codomain": self.codomain_size, "witness": self.witness}


def segal_map(X, t, k=0):
    """The map ``X(t)_k -> X[1](c_1)_k x_{X[0]_k} ... x_{X[0]_k} X[1](c_q)_k``.

    Returns a :class:`SegalMapResult`; the witness is a pair of colliding
    simplices or an uncovered tuple of edges.
    """
    q = t.width
    if q < 2:
        raise ValueError("Segal maps are defined for width >= 2")
    cat = X.cat
    n = t.level
    edges = [ThetaObject(n, (c,)) for c in t.cells]
    for e in edges + [t, zero(n)]:
        if e not in cat:
            raise ValueError(f"object {format_object(e)} is outside the bound")
    etabs = [X.pull(edge(t, i + 1), k) for i in range(q)]
    src = [X.pull(vertex(e, 0), k) for e in edges]
    tgt = [X.pull(vertex(e, 1), k) for e in edges]
    seen = {}
    witness = None
    injective = True
    for y in range(X.size(t, k)):
        key = tuple(tab[y] for tab in etabs)
        if key in seen:
            if injective:
                witness = {"kind": "collision", "simplices": [seen[key], y], "edges": list(key)}
            injective = False
        else:
            seen[key] = y
    # count the fiber product by dynamic programming over the shared vertices
    nz = X.size(zero(n), k)
    counts = [0] * nz
    for a in range(X.size(edges[0], k)):
        counts[tgt[0][a]] += 1
    for i in range(1, q):
        nxt = [0] * nz
        for a in range(X.size(edges[i], k)):
            nxt[tgt[i][a]] += counts[src[i][a]]
        counts = nxt
    total = sum(counts)
    surjective = len(seen) == total
    if not surjective and witness is None:
        witness = {"kind": "uncovered", "edges": _uncovered_tuple(X, edges, src, tgt, k, seen)}
    return SegalMapResult(t, k, injective, surjective, X.size(t, k), total, witness)


def _uncovered_tuple(X, edges, src, tgt, k, seen):
    q = len(edges)

    def walk(i, prefix):
        if i == q:
            return None if tuple(prefix) in seen else list(prefix)
        for a in range(X.size(edges[i], k)):
            if i and src[i][a] != tgt[i - 1][prefix[-1]]:
                continue
            found = walk(i + 1, prefix + [a])
            if found is not None:
                return found
        return None

    return walk(0, [])


class SegalReport:
    def __init__(self, ok, certified_bound, witness=None, partial=False):
        self.ok = ok
        self.certified_bound = certified_bound
        self.witness = witness
        self.partial = partial

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"strict_segal": self.ok, "certified_bound": self.certified_bound,
                "witness": self.witness}


def is_strict_segal(X):
    """Every Segal map inside the bound is a bijection in every simplicial degree,
    and, recursively, every mapping object is strictly Segal.

    The witness names the failing object, the path of base points through
    mapping objects, and the colliding or uncovered simplices.
    """
    return _strict_segal(X, [])


def _strict_segal(X, path):
    bound = max(degree(t) for t in X.cat.objects)
    for t in X.cat.objects:
        if t.width < 2 or t.level == 0:
            continue
        for k in range(X.bound + 1):
            try:
                r = segal_map(X, t, k)
            except ValueError:
                continue
            if not r.bijective:
                w = r.as_dict()
                w["base_points"] = list(path)
                return SegalReport(False, bound, w)
    if X.level >= 2 and zero(X.level) in X.cat:
        z = zero(X.level)
        for x0 in range(X.size(z)):
            for x1 in range(X.size(z)):
                M = mapping_object(X, x0, x1)
                if M is None:
                    continue
                sub = _strict_segal(M, path + [[x0, x1]])
                if not sub.ok:
                    return SegalReport(False, bound, sub.witness)
    return SegalReport(True, bound)


def mapping_category(cat):
    """Objects c one level down with ``[1](c)`` in ``cat``, as a category."""
    n = cat.level
    objs = [c for c in _lower_objects(cat) if ThetaObject(n, (c,)) in cat]
    if not objs:
        return None
    return _canonical_category(objs)


def _lower_objects(cat):
    seen = []
    for t in cat.objects:
        for c in t.cells:
            if c not in seen:
                seen.append(c)
    if zero(cat.level - 1) not in seen:
        seen.append(zero(cat.level - 1))
    return seen


def _canonical_category(objs):
    objs = sorted(set(objs), key=lambda t: (degree(t), format_object(t)))
    level = objs[0].level
    d = max(degree(t) for t in objs)
    if tuple(objs) == enumerate_objects(level, d):
        return bounded(level, d)
    return category(tuple(objs))


def fiber_simplices(X, t, conditions, k):
    """k-simplices y of X(t) with ``f^* y = s^k(v)`` for every (f, v) in conditions."""
    out = []
    checks = []
    for f, v in conditions:
        z = f.source
        checks.append((X.pull(f, k), X.values[z].total_degeneracy(k, v)))
    for y in range(X.size(t, k)):
        if all(tab[y] == want for tab, want in checks):
            out.append(y)
    return out


def mapping_object(X, x0, x1):
    """``M(x0, x1)``: the level n-1 presheaf ``c -> fiber of X[1](c) over (x0, x1)``."""
    n = X.level
    if n < 1:
        raise ValueError("mapping objects need level >= 1")
    mcat = mapping_category(X.cat)
    if mcat is None:
        return None
    elements = {}
    for c in mcat.objects:
        e = ThetaObject(n, (c,))
        conds = [(vertex(e, 0), x0), (vertex(e, 1), x1)]
        elements[c] = [fiber_simplices(X, e, conds, k) for k in range(X.bound + 1)]

    def theta_op(h, k, y):
        return X.pull(suspend(h), k)[y]

    def simp_op(c, alpha, l, y):
        return X.values[ThetaObject(n, (c,))].act(alpha, l)[y]

    M = ThetaSet.from_action(mcat, X.bound, elements, theta_op, simp_op,
                             name=f"M({x0},{x1})")
    M.base_points = (x0, x1)
    return M


def underlying_simplicial(X):
    """The level-1 presheaf ``[m] -> X([m]([0],...,[0]))``."""
    n = X.level
    ms = []
    m = 0
    while tau_theta(m, n) in X.cat:
        ms.append(m)
        m += 1
    if not ms:
        raise ValueError("bound excludes [0]")
    dcat = bounded(1, ms[-1])
    values = {dcat.objects[i]: X.values[tau_theta(i, n)] for i in ms}
    theta = []
    for f in dcat.morphisms:
        g = tau_morphism(f, n)
        theta.append(X.theta[X.cat.mor_index[g]])
    return ThetaSet(dcat, X.bound, values, theta, name=f"tau*{X.name}")


def tau_morphism(f, n):
    """The image of a simplicial morphism ``f: [p] -> [m]`` under ``tau_theta``."""
    src, tgt = tau_theta(f.source.width, n), tau_theta(f.target.width, n)
    z = zero(n - 1)
    subs = [identity(z)] * len(f.subs)
    return ThetaMorphism(src, tgt, f.delta, subs)


class DiagRestriction:
    """``([m], c) -> X([m](c,...,c))`` on the pairs inside the bound of X."""

    def __init__(self, X):
        self.X = X
        self.pairs = []
        for t in X.cat.objects:
            cs = set(t.cells)
            if len(cs) <= 1:
                c = t.cells[0] if t.cells else None
                self.pairs.append((t.width, c, t))

    def value(self, m, c):
        n = self.X.level
        t = ThetaObject(n, (c,) * m) if m else zero(n)
        return self.X.values[t]

    def pull(self, alpha, m2, h, k=0):
        """Action of ``(alpha, h): ([m], c) -> ([m2], c2)`` on k-simplices."""
        n = self.X.level
        m = len(alpha) - 1
        src = ThetaObject(n, (h.source,) * m)
        tgt = ThetaObject(n, (h.target,) * m2)
        subs = [h] * len(required_indices(alpha))
        return self.X.pull(ThetaMorphism(src, tgt, alpha, subs), k)


def diag_restrict(X):
    return DiagRestriction(X)


def is_isomorphic(X, Y):
    """Search for a levelwise bijective natural map X -> Y."""
    from .search import nat_transformations
    if not X.same_shape(Y):
        return False
    for t in X.cat.objects:
        if X.values[t].sizes != Y.values[t].sizes:
            return False
    for f in nat_transformations(X, Y):
        if f.is_iso():
            return True
    return False
