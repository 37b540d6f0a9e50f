"""Generating-cofibration shapes, fiber families, the Hom decomposition of
``Hom(Q, X)`` and finite right-lifting-property checks.

For a set T of cells ``[1]^(i)`` and an object t write ``D_i`` for the
coproduct of copies of ``Theta[[1]^(i)]`` indexed by the maps
``g: [1]^(i) -> t``.  Then ``Q_{m,t}`` is the pushout of
``D <- Delta[m] x D -> Delta[m] x Theta[t]`` and ``P_{m,t}`` the same
pushout with ``dDelta[m]`` in place of ``Delta[m]``.
"""

from . import simplicial as ss
from .kan import _as_subset, discretize, is_T_discrete, truncate
from .presheaf import (PresheafMap, ThetaSet, constant, fiber_simplices, product, pushout, representable,
                       simplex_times_representable)
from .search import NatProblem, simplicial_hom
from .theta import bounded, cell, compose, degree, format_object, hom, identity


def theta_count(i, t):
    """The number of maps ``[1]^(i) -> t``."""
    return len(hom(cell(i, t.level), t))


class PQ:
    """The pair ``P -> Q`` with the pieces it was glued from."""

    def __init__(self, m, t, T, P, Q, P_to_Q, glue_maps, D, cells):
        self.m = m
        self.t = t
        self.T = T
        self.P = P
        self.Q = Q
        self.P_to_Q = P_to_Q
        self.glue_maps = glue_maps
        self.D = D
        self.cells = cells

    def identifications(self):
        """Simplices of P (per object and degree) sharing an image in Q."""
        out = {}
        for s in self.P.cat.objects:
            for k in range(self.P.bound + 1):
                seen = {}
                for x, y in enumerate(self.P_to_Q.comps[s][k]):
                    seen.setdefault(y, []).append(x)
                merged = [v for v in seen.values() if len(v) > 1]
                if merged:
                    out[(format_object(s), k)] = merged
        return out


def _cells_D(t, T, cat, bound):
    """``D``: one copy of ``Theta[[1]^(i)]`` for every ``g: [1]^(i) -> t``."""
    n = t.level
    idx = T.cell_indices()
    elements = {}
    for s in cat.objects:
        els = [(i, g, h) for i in idx for g in hom(cell(i, n), t) for h in hom(s, cell(i, n))]
        elements[s] = [els] * (bound + 1)
    return ThetaSet.from_action(cat, bound, elements, lambda f, k, e: (e[0], e[1], compose(e[2], f)),
                                name="D")


def _pair_map(src, tgt, fn):
    """Map between products ``K x R`` given on (simplex of K, element of R) indices."""
    comps = {}
    for s in src.cat.objects:
        rows = []
        for k in range(src.bound + 1):
            rows.append(tuple(fn(s, k, z) for z in range(src.size(s, k))))
        comps[s] = tuple(rows)
    return PresheafMap(src, tgt, comps)


def pushout_induced(P, iB, iC, hB, hC):
    """The map out of a pushout determined by compatible maps on its two legs."""
    comps = {}
    for s in P.cat.objects:
        rows = []
        for k in range(P.bound + 1):
            row = [None] * P.size(s, k)
            for b, p in enumerate(iB.comps[s][k]):
                row[p] = hB.comps[s][k][b]
            for c, p in enumerate(iC.comps[s][k]):
                row[p] = hC.comps[s][k][c]
            rows.append(tuple(row))
        comps[s] = tuple(rows)
    return PresheafMap(P, hB.target, comps)


def pq_category(t, T):
    n = t.level
    d = max([degree(t)] + [degree(c) for c in T])
    return bounded(n, d)


def build_PQ(m, t, T, cat=None, bound=None):
    """Literal colimits ``P_{m,t}`` and ``Q_{m,t}`` and the map between them."""
    n = t.level
    T = _as_subset(T, n)
    cat = cat or pq_category(t, T)
    bound = m if bound is None else bound
    if bound < m:
        raise ValueError("simplicial bound must be at least m")
    D = _cells_D(t, T, cat, bound)
    R = representable(t, cat, bound)
    K = ss.simplex(m, bound)
    dK = ss.boundary_simplex(m, bound)
    Kc, dKc = constant(K, cat), constant(dK, cat)
    M, _, _ = product(Kc, R)
    dM, _, _ = product(dKc, R)
    MD, _, to_D = product(Kc, D)
    dMD, _, to_dD = product(dKc, D)
    # the element g.h of Theta[t] named by the cell copy (i, g, h)
    d_to_r = {}
    for s in cat.objects:
        ridx = {u: j for j, u in enumerate(R.elements[s][0])}
        d_to_r[s] = [ridx[compose(g, h)] for (_, g, h) in D.elements[s][0]]
    full = ss.simplex_elements(m, bound)
    bdry = ss.simplex_elements(m, bound, boundary=True)
    b_in_f = [[full[k].index(a) for a in bdry[k]] for k in range(bound + 1)]

    def glue(s, k, z):
        a, e = divmod(z, D.size(s, k))
        return a * R.size(s, k) + d_to_r[s][e]

    to_M = _pair_map(MD, M, glue)
    to_dM = _pair_map(dMD, dM, glue)
    dM_in_M = _pair_map(dM, M, lambda s, k, z: b_in_f[k][z // R.size(s, k)] * R.size(s, k)
                        + z % R.size(s, k))
    Q, qM, qD = pushout(to_M, to_D, name=f"Q_{m},{format_object(t)}")
    P, pM, pD = pushout(to_dM, to_dD, name=f"P_{m},{format_object(t)}")
    P_to_Q = pushout_induced(P, pM, pD, dM_in_M.then(qM), qD)
    pq = PQ(m, t, T, P, Q, P_to_Q, {"Q": (qM, qD), "P": (pM, pD)}, D, T.cell_indices())
    pq.R = R
    pq.simplices = {"Q": full, "P": bdry}
    return pq


def multi_index_of(X, t, T, k, y):
    """The restriction data ``(v^(i))_i`` of a k-simplex y of X(t), or None
    when some restriction ``g^* y`` is not a degenerate vertex."""
    n = t.level
    out = []
    for i in T.cell_indices():
        c = cell(i, n)
        vc = X.values[c]
        row = []
        for g in hom(c, t):
            z = X.pull(g, k)[y]
            v = vc.act((0,), k)[z]
            if vc.total_degeneracy(k, v) != z:
                return None
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def fiber_family(X, t, T, vbar):
    """The iterated fiber ``X(t)(v^(0))...(v^(j))`` as a FinSimpSet with its
    inclusion indices."""
    n = t.level
    T = _as_subset(T, n)
    idx = T.cell_indices()
    if len(vbar) != len(idx):
        raise ValueError("one tuple per cell of T is required")
    conds = []
    for i, row in zip(idx, vbar):
        c = cell(i, n)
        gs = hom(c, t)
        if len(row) != len(gs):
            raise ValueError(f"tuple for [1]^({i}) must have length {len(gs)}")
        conds.extend(zip(gs, row))
    keep = [fiber_simplices(X, t, conds, k) for k in range(X.bound + 1)]
    return ss.subset(X.values[t], keep)


def occurring_multi_indices(X, t, T):
    """Multi-indices whose fiber has at least one vertex, in first-seen order."""
    T = _as_subset(T, t.level)
    seen = []
    found = set()
    for y in range(X.size(t, 0)):
        v = multi_index_of(X, t, T, 0, y)
        if v not in found:
            found.add(v)
            seen.append(v)
    return seen


def all_multi_index_count(X, t, T):
    T = _as_subset(T, t.level)
    total = 1
    for i in T.cell_indices():
        c = cell(i, t.level)
        total *= X.size(c, 0) ** theta_count(i, t)
    return total


class HomDecompositionReport:
    def __init__(self, which, m, t, T, lhs, rhs, bijection, identifications):
        self.which = which
        self.m = m
        self.t = t
        self.T = T
        self.lhs = lhs
        self.rhs = rhs
        self.bijection = bijection
        self.identifications = identifications

    @property
    def equal(self):
        return self.lhs == self.rhs and (self.bijection is None or self.bijection_ok)

    @property
    def bijection_ok(self):
        return self.bijection is not None and self.bijection["injective"] and self.bijection["into"]

    def as_dict(self):
        return {"shape": self.which, "m": self.m, "t": format_object(self.t),
                "T": [format_object(c) for c in self.T], "lhs": self.lhs, "rhs": self.rhs,
                "equal": self.equal, "bijection": self.bijection,
                "identifications": self.identifications}


def _restrict_to(X, cat):
    if X.cat is cat:
        return X
    return truncate(X, list(cat.objects))


def verify_hom_decomposition(X, m, t, T, which="Q", max_maps=200000):
    """Compare ``|Hom(Q_{m,t}, X)|`` (brute force) with
    ``sum over multi-indices of |Hom(Delta[m], fiber)|``; likewise for P with
    ``dDelta[m]``.

    The explicit bijection sends a map phi to the multi-index read off the
    cell copies and to the simplices ``phi(alpha, id_t)``.
    """
    n = t.level
    T = _as_subset(T, n)
    cat = pq_category(t, T)
    Xr = _restrict_to(X, cat)
    if Xr.bound < m:
        raise ValueError("the presheaf's simplicial bound is below m")
    pq = build_PQ(m, t, T, cat, Xr.bound)
    A = pq.Q if which == "Q" else pq.P
    legs = pq.glue_maps[which]
    prob = NatProblem(A, Xr)
    lhs = prob.count()
    sols = None
    if lhs <= max_maps:
        _, sols = prob.solve(collect=True)
    # right-hand side
    K = ss.simplex(m, Xr.bound) if which == "Q" else ss.boundary_simplex(m, Xr.bound)
    if which == "P" and m == 0:
        rhs = all_multi_index_count(Xr, t, T)
    else:
        rhs = 0
        for v in occurring_multi_indices(Xr, t, T):
            F, _ = fiber_family(Xr, t, T, v)
            rhs += len(simplicial_hom(K, F))
    if sols is not None:
        bijection = _check_bijection(prob, sols, pq, legs, Xr, m, t, T, which)
    else:
        bijection = _check_bijection_by_components(prob, pq, legs, Xr, t, T, which, max_maps)
    idents = pq.identifications() if which == "P" else {}
    return HomDecompositionReport(which, m, t, T, lhs, rhs, bijection,
                                  {f"{k[0]}@{k[1]}": v for k, v in idents.items()})


def _check_bijection(prob, sols, pq, legs, X, m, t, T, which):
    n = t.level
    qM, qD = legs
    D_elems = pq.D.elements
    # positions of the generating simplices (alpha, id_t) in the shape
    gen = []
    R = pq.R
    rid = R.elements[t][0].index(identity(t))
    for k in range(X.bound + 1):
        for a, alpha in enumerate(pq.simplices[which][k]):
            gen.append((k, alpha, qM.comps[t][k][a * R.size(t, k) + rid]))
    cell_pos = []
    for i in T.cell_indices():
        c = cell(i, n)
        for g in hom(c, t):
            j = D_elems[c][0].index((i, g, identity(c)))
            cell_pos.append((c, qD.comps[c][0][j]))
    images = set()
    into = True
    injective = True
    for sol in sols:
        phi = prob.to_map(sol)
        vflat = tuple(phi.comps[c][0][p] for c, p in cell_pos)
        simp = tuple(phi.comps[t][k][p] for k, _, p in gen)
        key = (vflat, simp)
        if key in images:
            injective = False
        images.add(key)
        # the top simplex lies in the fiber over the multi-index
        for k, alpha, p in gen:
            y = phi.comps[t][k][p]
            mi = multi_index_of(X, t, T, k, y)
            flat = tuple(v for row in (mi or ()) for v in row)
            if mi is None or flat != vflat:
                into = False
    return {"size": len(images), "injective": injective, "into": into}


def _check_bijection_by_components(prob, pq, legs, X, t, T, which, max_maps):
    """Bijection check for a shape whose maps factor over independent pieces.

    Only used when the shape has no top simplices (P with m = 0), where the
    map to multi-indices reads one cell copy per coordinate.  Each component
    of the constraint problem must map injectively onto its coordinates.
    """
    qM, qD = legs
    n = t.level
    if any(True for _ in _top_positions(pq, which, t, X.bound, qM)):
        return None
    coord_vars = []
    for i in T.cell_indices():
        c = cell(i, n)
        for g in hom(c, t):
            j = pq.D.elements[c][0].index((i, g, identity(c)))
            coord_vars.append(prob.var(c, 0, qD.comps[c][0][j]))
    coord_set = set(coord_vars)
    size = 1
    injective = True
    for comp in prob.components():
        keys = [v for v in comp if v in coord_set]
        count, sols = prob.solve_component(comp, limit=max_maps + 1)
        if count > max_maps:
            return None
        pos = [comp.index(v) for v in keys]
        images = {tuple(sol[p] for p in pos) for sol in sols}
        if len(images) != count:
            injective = False
        size *= count
    return {"size": size, "injective": injective, "into": True, "by_components": True}


def _top_positions(pq, which, t, bound, qM):
    R = pq.R
    rid = R.elements[t][0].index(identity(t))
    for k in range(bound + 1):
        for a, _ in enumerate(pq.simplices[which][k]):
            yield qM.comps[t][k][a * R.size(t, k) + rid]


class CofibrationReport:
    def __init__(self, cof, source, target, is_mono, T_discrete):
        self.map = cof
        self.source = source
        self.target = target
        self.is_mono = is_mono
        self.T_discrete = T_discrete


def generating_cofibration(m, t, T, cat=None, bound=None):
    """The discretized inclusion ``(dDelta[m] x Theta[t] u Delta[m] x dTheta[t])_T ->
    (Delta[m] x Theta[t])_T``.

    Discretization replaces values at T by components and propagates the
    identifications, so the result need not be a monomorphism; the report
    records whether it is.
    """
    n = t.level
    T = _as_subset(T, n)
    cat = cat or pq_category(t, T)
    bound = m if bound is None else bound
    full = simplex_times_representable(m, t, cat, bound)
    part = simplex_times_representable(m, t, cat, bound, union=True)
    pos = {s: [{e: i for i, e in enumerate(full.elements[s][k])} for k in range(bound + 1)]
           for s in cat.objects}
    inc = PresheafMap.from_function(part, full, lambda s, k, x: pos[s][k][part.elements[s][k][x]])
    Ls, ps = discretize(part, T)
    Lf, pf = discretize(full, T)
    comps = {}
    for s in cat.objects:
        rows = []
        for k in range(bound + 1):
            row = [None] * Ls.size(s, k)
            for x, c in enumerate(ps.comps[s][k]):
                row[c] = pf.comps[s][k][inc.comps[s][k][x]]
            rows.append(tuple(row))
        comps[s] = tuple(rows)
    cof = PresheafMap(Ls, Lf, comps)
    return CofibrationReport(cof, Ls, Lf, cof.is_mono(),
                             is_T_discrete(Ls, T) and is_T_discrete(Lf, T))


def reedy_cofibration(m, t, cat=None, bound=None):
    """The undiscretized inclusion ``dDelta[m] x Theta[t] u Delta[m] x dTheta[t] -> Delta[m] x Theta[t]``."""
    cat = cat or bounded(t.level, degree(t))
    bound = m if bound is None else bound
    full = simplex_times_representable(m, t, cat, bound)
    part = simplex_times_representable(m, t, cat, bound, union=True)
    pos = {s: [{e: i for i, e in enumerate(full.elements[s][k])} for k in range(bound + 1)]
           for s in cat.objects}
    return PresheafMap.from_function(part, full, lambda s, k, x: pos[s][k][part.elements[s][k][x]])


class LiftingResult:
    def __init__(self, ok, squares, lift=None, stuck=None):
        self.ok = ok
        self.squares = squares
        self.lift = lift
        self.stuck = stuck

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"has_rlp": self.ok, "squares": self.squares}
        if self.stuck is not None:
            top, bottom = self.stuck
            out["stuck_square"] = {"top": _map_json(top), "bottom": _map_json(bottom)}
        return out


def _map_json(f):
    return {format_object(t): [list(r) for r in rows] for t, rows in f.comps.items()}


def has_rlp(p, i, max_squares=0):
    """Does ``p: X -> Y`` have the right lifting property against ``i: A -> B``?

    Every commuting square ``(u: A -> X, w: B -> Y)`` is enumerated and a
    lift ``B -> X`` is searched for.  Returns the first unliftable square,
    or ok with the number of squares checked.
    """
    X, Y = p.source, p.target
    A, B = i.source, i.target
    cat = X.cat
    pre_y = {}
    for t in cat.objects:
        for k in range(X.bound + 1):
            by = {}
            for x in range(X.size(t, k)):
                by.setdefault(p.comps[t][k][x], []).append(x)
            pre_y[(t, k)] = by
    prob_w = NatProblem(B, Y)
    prob_u = NatProblem(A, X)
    prob_l = NatProblem(B, X)
    _, ws = prob_w.solve()
    squares = 0
    for wsol in ws:
        w = prob_w.to_map(wsol)

        def allowed_u(t, k, a, w=w):
            return pre_y[(t, k)].get(w.comps[t][k][i.comps[t][k][a]], ())

        def allowed_l(t, k, b, w=w):
            return pre_y[(t, k)].get(w.comps[t][k][b], ())

        _, us = prob_u.solve(allowed=allowed_u)
        for usol in us:
            squares += 1
            u = prob_u.to_map(usol)
            preset = {}
            clash = False
            for t in cat.objects:
                for k in range(A.bound + 1):
                    for a in range(A.size(t, k)):
                        key = (t, k, i.comps[t][k][a])
                        val = u.comps[t][k][a]
                        if preset.get(key, val) != val:
                            clash = True
                        preset[key] = val
            lift = None
            if not clash:
                _, ls = prob_l.solve(limit=1, allowed=allowed_l, preset=preset)
                if ls:
                    lift = prob_l.to_map(ls[0])
            if lift is None:
                return LiftingResult(False, squares, stuck=(u, w))
            if max_squares and squares >= max_squares:
                return LiftingResult(True, squares)
    return LiftingResult(True, squares)
