"""Exhaustive enumeration of natural transformations between finite presheaves.

A map ``A -> X`` is an assignment of a simplex of X to every simplex of A.
Naturality along a morphism or simplicial operator says that the value at
``op(a)`` is determined by the value at a, so all constraints are
functional.  The resulting constraint problem is solved by the kernels in
``_kernels``.
"""

from . import _kernels
from .presheaf import PresheafMap, constant
from .simplicial import UnionFind
from .theta import bounded


class NatProblem:
    """The constraint problem for ``Nat(A, X)``; solve repeatedly with masks and presets."""

    def __init__(self, A, X):
        if A.cat.objects != X.cat.objects:
            raise ValueError("source and target live on different categories")
        if A.bound != X.bound:
            raise ValueError("source and target have different simplicial bounds")
        bound = A.bound
        self.A, self.X, self.bound = A, X, bound
        cat = A.cat
        self.slots = []
        self.offset = {}
        dom = []
        for t in cat.objects:
            for k in range(bound + 1):
                self.offset[(t, k)] = len(dom)
                self.slots.append((t, k))
                dom.extend([X.size(t, k)] * A.size(t, k))
        self.dom = dom
        nvars = len(dom)
        edges = [[] for _ in range(nvars)]
        tables, toff = [], {}

        def table_id(key, tab):
            off = toff.get(key)
            if off is None:
                off = len(tables)
                toff[key] = off
                tables.extend(tab)
            return off

        for fid in cat.constraint_morphisms():
            f = cat.morphisms[fid]
            a, b = f.source, f.target
            for k in range(bound + 1):
                na = A.size(b, k)
                if na == 0:
                    continue
                off = table_id(("f", fid, k), X.theta[fid][k])
                ob, oa = self.offset[(b, k)], self.offset[(a, k)]
                atab = A.theta[fid][k]
                for x in range(na):
                    edges[ob + x].append((oa + atab[x], off))
        for t in cat.objects:
            va, vx = A.values[t], X.values[t]
            for k in range(1, bound + 1):
                ohi, olo = self.offset[(t, k)], self.offset[(t, k - 1)]
                for i in range(k + 1):
                    off = table_id(("d", t, k, i), vx.faces[k][i])
                    af = va.faces[k][i]
                    for x in range(va.sizes[k]):
                        edges[ohi + x].append((olo + af[x], off))
                for i in range(k):
                    off = table_id(("s", t, k - 1, i), vx.degens[k - 1][i])
                    ad = va.degens[k - 1][i]
                    for x in range(va.sizes[k - 1]):
                        edges[olo + x].append((ohi + ad[x], off))
        out_start, out_tgt, out_off = [0], [], []
        for v in range(nvars):
            for w, off in edges[v]:
                out_tgt.append(w)
                out_off.append(off)
            out_start.append(len(out_tgt))
        self.out_start, self.out_tgt, self.out_off = out_start, out_tgt, out_off
        self.tables = tables
        self.order = _topological_order(nvars, out_start, out_tgt)
        self.allowed_off = []
        acc = 0
        for d in dom:
            self.allowed_off.append(acc)
            acc += d
        self._mask_size = acc

    @property
    def nvars(self):
        return len(self.dom)

    def var(self, t, k, x):
        return self.offset[(t, k)] + x

    def solve(self, limit=0, collect=True, allowed=None, preset=None):
        """Solve; ``allowed(t, k, x)`` returns the permitted target simplices
        (or None for all) and ``preset`` maps ``(t, k, x)`` to a fixed value."""
        mask = []
        if allowed is not None:
            mask = bytearray(self._mask_size)
            for (t, k) in self.slots:
                base = self.offset[(t, k)]
                for x in range(self.A.size(t, k)):
                    v = base + x
                    ok = allowed(t, k, x)
                    off = self.allowed_off[v]
                    if ok is None:
                        for y in range(self.dom[v]):
                            mask[off + y] = 1
                    else:
                        for y in ok:
                            mask[off + y] = 1
        pre = [-1] * self.nvars
        if preset:
            for (t, k, x), y in preset.items():
                if k <= self.bound:
                    pre[self.offset[(t, k)] + x] = y
        count, sols = _kernels.solve_functional_csp(
            self.dom, self.out_start, self.out_tgt, self.out_off, self.tables, self.order,
            mask, self.allowed_off, pre, limit, collect)
        return count, sols

    def components(self):
        """Weakly connected components of the constraint graph, as sorted variable lists."""
        uf = UnionFind(self.nvars)
        for v in range(self.nvars):
            for e in range(self.out_start[v], self.out_start[v + 1]):
                uf.union(v, self.out_tgt[e])
        groups = {}
        for v in range(self.nvars):
            groups.setdefault(uf.find(v), []).append(v)
        return sorted(groups.values())

    def solve_component(self, comp, limit=0, collect=True):
        """Solve the sub-problem on one component; solutions list values for ``comp``."""
        local = {v: i for i, v in enumerate(comp)}
        dom = [self.dom[v] for v in comp]
        out_start, out_tgt, out_off = [0], [], []
        for v in comp:
            for e in range(self.out_start[v], self.out_start[v + 1]):
                out_tgt.append(local[self.out_tgt[e]])
                out_off.append(self.out_off[e])
            out_start.append(len(out_tgt))
        order = [local[v] for v in self.order if v in local]
        allowed_off = []
        acc = 0
        for d in dom:
            allowed_off.append(acc)
            acc += d
        return _kernels.solve_functional_csp(
            dom, out_start, out_tgt, out_off, self.tables, order, [], allowed_off,
            [-1] * len(comp), limit, collect)

    def count(self):
        """``|Nat(A, X)|``, multiplying the counts of independent components."""
        total = 1
        for comp in self.components():
            c, _ = self.solve_component(comp, collect=False)
            total *= c
            if total == 0:
                return 0
        return total

    def to_map(self, sol):
        comps = {}
        for t in self.A.cat.objects:
            rows = []
            for k in range(self.A.bound + 1):
                if k <= self.bound:
                    base = self.offset[(t, k)]
                    rows.append(tuple(sol[base:base + self.A.size(t, k)]))
                else:
                    rows.append(())
            comps[t] = tuple(rows)
        return PresheafMap(self.A, self.X, comps)


def _topological_order(n, out_start, out_tgt):
    """Variables ordered by a topological order of strongly connected components.

    Iterative Tarjan; components are emitted in reverse topological order.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack, comps = [], []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, out_start[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, e = work[-1]
            if e < out_start[v + 1]:
                work[-1] = (v, e + 1)
                w = out_tgt[e]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, out_start[w]))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)
    order = []
    for comp in reversed(comps):
        order.extend(sorted(comp))
    return order


def nat_transformations(A, X, limit=0, allowed=None, preset=None):
    """All natural maps ``A -> X`` (up to ``limit`` when positive)."""
    prob = NatProblem(A, X)
    _, sols = prob.solve(limit=limit, collect=True, allowed=allowed, preset=preset)
    return [prob.to_map(s) for s in sols]


def count_nat(A, X, allowed=None, preset=None):
    """``|Nat(A, X)|`` without materializing the maps."""
    prob = NatProblem(A, X)
    if allowed is None and not preset:
        return prob.count()
    count, _ = prob.solve(limit=0, collect=False, allowed=allowed, preset=preset)
    return count


def first_nat(A, X, allowed=None, preset=None):
    prob = NatProblem(A, X)
    _, sols = prob.solve(limit=1, collect=True, allowed=allowed, preset=preset)
    return prob.to_map(sols[0]) if sols else None


def simplicial_hom(a, b, limit=0):
    """Simplicial maps ``a -> b`` between FinSimpSets, as per-degree tables."""
    cat = bounded(0, 0)
    A, B = constant(a, cat), constant(b, cat)
    maps = nat_transformations(A, B, limit=limit)
    t = cat.objects[0]
    return [m.comps[t] for m in maps]
