"""Finite truncated simplicial sets.

A :class:`FinSimpSet` with bound ``s`` has finitely many k-simplices for
``0 <= k <= s``, numbered ``0..size-1``.  Face and degeneracy tables are
stored; any other simplicial operator is obtained by composing them.
"""

from itertools import combinations_with_replacement


def monotone(k, l):
    """Monotone maps ``[k] -> [l]`` as tuples, lexicographic."""
    return list(combinations_with_replacement(range(l + 1), k + 1))


def face_map(k, i):
    """The coface ``[k-1] -> [k]`` skipping i."""
    return tuple(j if j < i else j + 1 for j in range(k))


def degeneracy_map(k, i):
    """The codegeneracy ``[k+1] -> [k]`` hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(k + 2))


def compose_maps(beta, alpha):
    """``beta . alpha`` for maps of finite ordinals given as tuples."""
    return tuple(beta[a] for a in alpha)


def apply_operator(s, alpha, l, x):
    """Pull back an l-simplex x of ``s`` along ``alpha: [k] -> [l]``."""
    return s.act(alpha, l)[x]


class FinSimpSet:
    """A simplicial set truncated at dimension ``bound``.

    ``faces[k][i]`` maps k-simplices to (k-1)-simplices (``d_i``) and
    ``degens[k][i]`` maps k-simplices to (k+1)-simplices (``s_i``).
    """

    __slots__ = ("bound", "sizes", "faces", "degens", "_ops", "_hash")

    def __init__(self, sizes, faces, degens):
        self.bound = len(sizes) - 1
        self.sizes = tuple(sizes)
        self.faces = tuple(tuple(tuple(t) for t in fk) for fk in faces)
        self.degens = tuple(tuple(tuple(t) for t in dk) for dk in degens)
        self._ops = {}
        self._hash = None

    @classmethod
    def from_operator(cls, sizes, op):
        """Build from ``op(alpha, l, x)`` which pulls back an l-simplex x along alpha."""
        s = len(sizes) - 1
        faces = [[]]
        for k in range(1, s + 1):
            faces.append([[op(face_map(k, i), k, x) for x in range(sizes[k])] for i in range(k + 1)])
        degens = []
        for k in range(s):
            degens.append([[op(degeneracy_map(k, i), k, x) for x in range(sizes[k])] for i in range(k + 1)])
        degens.append([])
        return cls(sizes, faces, degens)

    @classmethod
    def from_elements(cls, elements, op):
        """Build from explicit lists of hashable simplices per degree.

        ``op(alpha, l, e)`` returns the pulled-back simplex (an element of
        ``elements[k]``).  Returns the set together with the index dicts.
        """
        index = [{e: i for i, e in enumerate(level)} for level in elements]
        sizes = [len(level) for level in elements]

        def iop(alpha, l, x):
            return index[len(alpha) - 1][op(alpha, l, elements[l][x])]

        return cls.from_operator(sizes, iop), index

    def __eq__(self, other):
        return (isinstance(other, FinSimpSet) and self.sizes == other.sizes
                and self.faces == other.faces and self.degens == other.degens)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sizes, self.faces, self.degens))
        return self._hash

    def __repr__(self):
        return f"FinSimpSet(sizes={list(self.sizes)})"

    def total(self):
        return sum(self.sizes)

    def act(self, alpha, l):
        """Table of ``alpha^*: X_l -> X_k`` for ``alpha: [k] -> [l]``."""
        key = (alpha, l)
        t = self._ops.get(key)
        if t is not None:
            return t
        k = len(alpha) - 1
        image = set(alpha)
        if alpha == tuple(range(l + 1)):
            t = tuple(range(self.sizes[l]))
        elif len(image) < l + 1:
            # alpha = delta_i . alpha' with i the largest missed index
            i = max(j for j in range(l + 1) if j not in image)
            rest = tuple(a if a < i else a - 1 for a in alpha)
            d = self.faces[l][i]
            inner = self.act(rest, l - 1)
            t = tuple(inner[d[x]] for x in range(self.sizes[l]))
        else:
            # surjective but not injective: alpha = alpha'' . sigma_i
            i = next(j for j in range(k) if alpha[j] == alpha[j + 1])
            rest = alpha[:i + 1] + alpha[i + 2:]
            inner = self.act(rest, l)
            sdeg = self.degens[k - 1][i]
            t = tuple(sdeg[inner[x]] for x in range(self.sizes[l]))
        self._ops[key] = t
        return t

    def vertices(self, k, x):
        """The vertices of a k-simplex, in order."""
        return tuple(self.act((j,), k)[x] for j in range(k + 1))

    def total_degeneracy(self, k, v):
        """The k-simplex ``s_0^k v`` on vertex v."""
        if k == 0:
            return v
        return self.act((0,) * (k + 1), 0)[v]

    def is_discrete(self):
        """True when every simplex is a degeneracy of a vertex."""
        return all(self.sizes[k] == self.sizes[0] for k in range(self.bound + 1))

    def validate(self):
        """Check the simplicial identities; return a description of the first failure or None."""
        s = self.bound
        for k in range(s + 1):
            for tab_list, kind, target_deg in ((self.faces[k], "d", k - 1), (self.degens[k], "s", k + 1)):
                for i, tab in enumerate(tab_list):
                    if len(tab) != self.sizes[k]:
                        return f"{kind}{i}@{k} has {len(tab)} entries, expected {self.sizes[k]}"
                    for y in tab:
                        if not 0 <= y < self.sizes[target_deg]:
                            return f"{kind}{i}@{k} maps outside degree {target_deg}"
        f, d = self.faces, self.degens
        n0 = self.sizes
        for k in range(2, s + 1):
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    # d_i d_j = d_{j-1} d_i
                    for x in range(n0[k]):
                        if f[k - 1][i][f[k][j][x]] != f[k - 1][j - 1][f[k][i][x]]:
                            return f"d{i}d{j} != d{j - 1}d{i} in degree {k}"
        for k in range(s - 1):
            for i in range(k + 1):
                for j in range(i, k + 1):
                    # s_i s_j = s_{j+1} s_i
                    for x in range(n0[k]):
                        if d[k + 1][i][d[k][j][x]] != d[k + 1][j + 1][d[k][i][x]]:
                            return f"s{i}s{j} != s{j + 1}s{i} in degree {k}"
        for k in range(s):
            for j in range(k + 1):
                for i in range(k + 2):
                    for x in range(n0[k]):
                        y = f[k + 1][i][d[k][j][x]]
                        if i < j:
                            want = d[k - 1][j - 1][f[k][i][x]]
                        elif i == j or i == j + 1:
                            want = x
                        else:
                            want = d[k - 1][j][f[k][i - 1][x]]
                        if y != want:
                            return f"d{i}s{j} violates the simplicial identities in degree {k}"
        return None


def discrete(n, bound):
    """The discrete simplicial set on n points."""
    ident = tuple(range(n))
    faces = [[]] + [[ident] * (k + 1) for k in range(1, bound + 1)]
    degens = [[ident] * (k + 1) for k in range(bound)] + [[]]
    return FinSimpSet([n] * (bound + 1), faces, degens)


def empty(bound):
    return discrete(0, bound)


def point(bound):
    return discrete(1, bound)


def simplex(m, bound):
    """The standard simplex Delta[m]; k-simplices are monotone maps ``[k] -> [m]``."""
    elements = [monotone(k, m) for k in range(bound + 1)]
    s, _ = FinSimpSet.from_elements(elements, lambda alpha, l, e: compose_maps(e, alpha))
    return s


def simplex_elements(m, bound, boundary=False):
    """k-simplices of Delta[m] (or of its boundary) as tuples, per degree."""
    out = []
    for k in range(bound + 1):
        level = monotone(k, m)
        if boundary:
            level = [a for a in level if len(set(a)) < m + 1]
        out.append(level)
    return out


def boundary_simplex(m, bound):
    """The boundary of Delta[m]: the non-surjective monotone maps."""
    elements = simplex_elements(m, bound, boundary=True)
    s, _ = FinSimpSet.from_elements(elements, lambda alpha, l, e: compose_maps(e, alpha))
    return s


def product(a, b):
    """Levelwise product; the pair (x, y) in degree k has index ``x * |b_k| + y``."""
    bound = min(a.bound, b.bound)
    sizes = [a.sizes[k] * b.sizes[k] for k in range(bound + 1)]

    def op(alpha, l, z):
        x, y = divmod(z, b.sizes[l])
        return a.act(alpha, l)[x] * b.sizes[len(alpha) - 1] + b.act(alpha, l)[y]

    return FinSimpSet.from_operator(sizes, op)


def coproduct(parts):
    """Disjoint union; part p occupies a contiguous index block in each degree."""
    bound = min(p.bound for p in parts)
    offsets = []
    sizes = [0] * (bound + 1)
    for p in parts:
        offsets.append(list(sizes))
        for k in range(bound + 1):
            sizes[k] += p.sizes[k]

    def op(alpha, l, z):
        k = len(alpha) - 1
        for p, off in zip(parts, offsets):
            if off[l] <= z < off[l] + p.sizes[l]:
                return off[k] + p.act(alpha, l)[z - off[l]]
        raise IndexError(z)

    return FinSimpSet.from_operator(sizes, op)


def subset(s, keep):
    """The sub-simplicial set on ``keep[k]`` (sorted lists, closed under operators).

    Returns the subobject and, per degree, the list of original indices.
    """
    index = [{x: i for i, x in enumerate(level)} for level in keep]
    sizes = [len(level) for level in keep]

    def op(alpha, l, z):
        return index[len(alpha) - 1][s.act(alpha, l)[keep[l][z]]]

    return FinSimpSet.from_operator(sizes, op), [list(level) for level in keep]


def closed_subset(s, keep):
    """True when ``keep`` (a list of sets per degree) is closed under faces and degeneracies."""
    for k in range(s.bound + 1):
        for x in keep[k]:
            if k > 0 and any(f[x] not in keep[k - 1] for f in s.faces[k]):
                return False
            if k < s.bound and any(dg[x] not in keep[k + 1] for dg in s.degens[k]):
                return False
    return True


def quotient(s, classes):
    """Quotient by an operator-compatible equivalence.

    ``classes[k][x]`` is a class label per simplex.  Labels are renumbered in
    order of first appearance.  Returns the quotient and the projection
    tables.
    """
    proj = []
    reps = []
    for k in range(s.bound + 1):
        seen = {}
        p = []
        r = []
        for x in range(s.sizes[k]):
            lab = classes[k][x]
            if lab not in seen:
                seen[lab] = len(r)
                r.append(x)
            p.append(seen[lab])
        proj.append(p)
        reps.append(r)
    sizes = [len(r) for r in reps]

    def op(alpha, l, z):
        k = len(alpha) - 1
        return proj[k][s.act(alpha, l)[reps[l][z]]]

    return FinSimpSet.from_operator(sizes, op), proj


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


def pi0(s):
    """Connected components: a list giving the component label of each vertex.

    Labels are ``0..c-1`` in order of first vertex.  Only 0- and 1-simplices
    are inspected.
    """
    uf = UnionFind(s.sizes[0])
    if s.bound >= 1:
        d0, d1 = s.faces[1][0], s.faces[1][1]
        for e in range(s.sizes[1]):
            uf.union(d0[e], d1[e])
    labels = {}
    out = []
    for v in range(s.sizes[0]):
        r = uf.find(v)
        if r not in labels:
            labels[r] = len(labels)
        out.append(labels[r])
    return out


def component_count(s):
    lab = pi0(s)
    return max(lab) + 1 if lab else 0


def simplex_component(s, k, x, labels=None):
    """The component of a k-simplex (that of its first vertex)."""
    if labels is None:
        labels = pi0(s)
    return labels[s.act((0,), k)[x]]


def maps(a, b, limit=0):
    """All simplicial maps ``a -> b`` as per-degree tables (exhaustive search)."""
    from .search import simplicial_hom
    return simplicial_hom(a, b, limit=limit)


def is_isomorphism(a, b, tables):
    """True when the per-degree tables form a bijection in every degree."""
    for k in range(min(a.bound, b.bound) + 1):
        if a.sizes[k] != b.sizes[k] or len(set(tables[k])) != a.sizes[k]:
            return False
    return True
