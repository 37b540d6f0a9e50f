# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops.  Same signatures as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef struct Ctx:
    int nvars
    int *dom
    int *out_start
    int *out_tgt
    int *out_off
    int *tables
    int *order
    int norder
    unsigned char *allowed
    int *allowed_off
    int use_mask
    int *val
    int *trail
    int ntrail
    int *stack
    long long count
    long long limit


cdef int assign(Ctx *c, int v, int x) noexcept nogil:
    cdef int sp, u, xu, e, w, y, yw
    if c.use_mask and not c.allowed[c.allowed_off[v] + x]:
        return 0
    c.val[v] = x
    c.trail[c.ntrail] = v
    c.ntrail += 1
    sp = 0
    c.stack[sp] = v
    sp += 1
    while sp > 0:
        sp -= 1
        u = c.stack[sp]
        xu = c.val[u]
        for e in range(c.out_start[u], c.out_start[u + 1]):
            w = c.out_tgt[e]
            y = c.tables[c.out_off[e] + xu]
            yw = c.val[w]
            if yw >= 0:
                if yw != y:
                    return 0
                continue
            if c.use_mask and not c.allowed[c.allowed_off[w] + y]:
                return 0
            c.val[w] = y
            c.trail[c.ntrail] = w
            c.ntrail += 1
            c.stack[sp] = w
            sp += 1
    return 1


cdef void undo(Ctx *c, int mark) noexcept nogil:
    while c.ntrail > mark:
        c.ntrail -= 1
        c.val[c.trail[c.ntrail]] = -1


cdef int search(Ctx *c, int pos, list sols) except -1:
    cdef int v, x, mark, i
    while pos < c.norder and c.val[c.order[pos]] >= 0:
        pos += 1
    if pos == c.norder:
        c.count += 1
        if sols is not None:
            sols.append([c.val[i] for i in range(c.nvars)])
        return c.limit > 0 and c.count >= c.limit
    v = c.order[pos]
    for x in range(c.dom[v]):
        mark = c.ntrail
        if assign(c, v, x):
            if search(c, pos + 1, sols):
                return 1
        undo(c, mark)
    return 0


cdef int *_ints(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int *p = <int *>malloc((n + 1) * sizeof(int))
    if p == NULL:
        raise MemoryError()
    for i in range(n):
        p[i] = seq[i]
    return p


def solve_functional_csp(dom, out_start, out_tgt, out_off, tables, order,
                         allowed, allowed_off, preset, limit, collect):
    cdef Ctx c
    cdef int v, nvars = len(dom)
    cdef list sols = [] if collect else None
    cdef Py_ssize_t i, nallowed = len(allowed)
    if nvars == 0:
        return 1, ([[]] if collect else [])
    c.nvars = nvars
    c.dom = _ints(dom)
    c.out_start = _ints(out_start)
    c.out_tgt = _ints(out_tgt)
    c.out_off = _ints(out_off)
    c.tables = _ints(tables)
    c.order = _ints(order)
    c.norder = len(order)
    c.allowed_off = _ints(allowed_off)
    c.allowed = <unsigned char *>malloc(nallowed + 1)
    for i in range(nallowed):
        c.allowed[i] = 1 if allowed[i] else 0
    c.use_mask = nallowed > 0
    c.val = <int *>malloc(nvars * sizeof(int))
    c.trail = <int *>malloc(nvars * sizeof(int))
    c.stack = <int *>malloc(nvars * sizeof(int))
    c.ntrail = 0
    c.count = 0
    c.limit = limit
    try:
        for v in range(nvars):
            c.val[v] = -1
        for v in range(nvars):
            if preset[v] >= 0:
                if c.val[v] < 0:
                    if not assign(&c, v, preset[v]):
                        return 0, []
                elif c.val[v] != preset[v]:
                    return 0, []
        for v in range(nvars):
            if preset[v] >= 0 and c.val[v] != preset[v]:
                return 0, []
        search(&c, 0, sols)
        return c.count, (sols if collect else [])
    finally:
        free(c.dom); free(c.out_start); free(c.out_tgt); free(c.out_off)
        free(c.tables); free(c.order); free(c.allowed_off); free(c.allowed)
        free(c.val); free(c.trail); free(c.stack)


def check_category_laws(int n, src, tgt, ident, flat):
    cdef int *s = _ints(src)
    cdef int *t = _ints(tgt)
    cdef int *idn = _ints(ident)
    cdef int *tab = _ints(flat)
    cdef long long bad = 0
    cdef int f, g, h, gf, nobj = (max(src) + 1) if n else 0
    cdef int k
    cdef int *start = <int *>malloc((nobj + 1) * sizeof(int))
    cdef int *bysrc = <int *>malloc((n + 1) * sizeof(int))
    cdef int *fill = <int *>malloc((nobj + 1) * sizeof(int))
    cdef int a, b
    try:
        for f in range(n):
            if tab[idn[t[f]] * n + f] != f or tab[f * n + idn[s[f]]] != f:
                bad += 1
        for k in range(nobj + 1):
            start[k] = 0
        for g in range(n):
            start[s[g] + 1] += 1
        for k in range(nobj):
            start[k + 1] += start[k]
        for k in range(nobj):
            fill[k] = start[k]
        for g in range(n):
            bysrc[fill[s[g]]] = g
            fill[s[g]] += 1
        with nogil:
            for f in range(n):
                for a in range(start[t[f]], start[t[f] + 1]):
                    g = bysrc[a]
                    gf = tab[g * n + f]
                    for b in range(start[t[g]], start[t[g] + 1]):
                        h = bysrc[b]
                        if tab[h * n + gf] != tab[tab[h * n + g] * n + f]:
                            bad += 1
        return bad
    finally:
        free(s); free(t); free(idn); free(tab); free(start); free(bysrc); free(fill)
