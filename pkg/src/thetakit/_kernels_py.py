"""Pure-Python versions of the hot loops.  Same signatures as ``_ckernels``."""


def solve_functional_csp(dom, out_start, out_tgt, out_off, tables, order,
                         allowed, allowed_off, preset, limit, collect):
    """Backtracking search for assignments satisfying ``val[w] = tables[off + val[v]]``.

    Every edge ``v -> w`` carries a table offset: once v is assigned, w is
    forced.  ``order`` lists the variables in a topological order of the
    strongly connected components of the edge graph, so only variables in
    source components are ever branched on.  ``allowed`` is a flat 0/1 mask
    (empty for no restriction) and ``preset`` fixes values (-1 = free).

    Returns ``(count, solutions)``; ``solutions`` is empty unless
    ``collect`` is true.  The search stops after ``limit`` solutions when
    ``limit`` is positive.
    """
    nvars = len(dom)
    val = [-1] * nvars
    trail = []
    use_mask = len(allowed) > 0
    solutions = []

    def assign(v, x):
        if use_mask and not allowed[allowed_off[v] + x]:
            return False
        val[v] = x
        trail.append(v)
        stack = [v]
        while stack:
            u = stack.pop()
            xu = val[u]
            for e in range(out_start[u], out_start[u + 1]):
                w = out_tgt[e]
                y = tables[out_off[e] + xu]
                yw = val[w]
                if yw >= 0:
                    if yw != y:
                        return False
                    continue
                if use_mask and not allowed[allowed_off[w] + y]:
                    return False
                val[w] = y
                trail.append(w)
                stack.append(w)
        return True

    def undo(mark):
        while len(trail) > mark:
            val[trail.pop()] = -1

    for v in range(nvars):
        if preset[v] >= 0 and val[v] < 0:
            if not assign(v, preset[v]):
                return 0, []
        elif preset[v] >= 0 and val[v] != preset[v]:
            return 0, []
    # presets assigned earlier may have been forced to other values later
    for v in range(nvars):
        if preset[v] >= 0 and val[v] != preset[v]:
            return 0, []

    count = 0
    norder = len(order)

    def search(pos):
        nonlocal count
        while pos < norder and val[order[pos]] >= 0:
            pos += 1
        if pos == norder:
            count += 1
            if collect:
                solutions.append(list(val))
            return limit > 0 and count >= limit
        v = order[pos]
        for x in range(dom[v]):
            mark = len(trail)
            if assign(v, x):
                if search(pos + 1):
                    return True
            undo(mark)
        return False

    if nvars == 0:
        return 1, ([[]] if collect else [])
    search(0)
    return count, solutions


def check_category_laws(n, src, tgt, ident, flat):
    """Count unit-law and associativity violations in a composition table.

    ``flat[g * n + f]`` is the id of ``g . f`` (or -1 if not composable).
    """
    bad = 0
    for f in range(n):
        if flat[ident[tgt[f]] * n + f] != f or flat[f * n + ident[src[f]]] != f:
            bad += 1
    by_source = [[] for _ in range(max(src) + 1 if src else 0)]
    for g in range(n):
        by_source[src[g]].append(g)
    for f in range(n):
        for g in by_source[tgt[f]]:
            gf = flat[g * n + f]
            for h in by_source[tgt[g]]:
                if flat[h * n + gf] != flat[flat[h * n + g] * n + f]:
                    bad += 1
    return bad
