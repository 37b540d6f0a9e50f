"""Objects, morphisms and bounded full subcategories of Joyal's categories Theta_n.

Objects and morphisms are hash-consed: constructing the same value twice
returns the same Python object, so equality is identity and both are cheap
to use as dictionary keys.
"""

from functools import lru_cache
from itertools import combinations_with_replacement, product


class ThetaObject:
    """An object ``[q](c_1, ..., c_q)`` of Theta_n, or the point of Theta_0.

    ``level`` is n and ``cells`` the tuple of level n-1 children.  Width 0
    is the terminal object ``[0]`` at every level.
    """

    __slots__ = ("level", "cells", "__weakref__")
    _table = {}

    def __new__(cls, level, cells=()):
        cells = tuple(cells)
        key = (level, cells)
        found = cls._table.get(key)
        if found is not None:
            return found
        if level < 0:
            raise ValueError("level must be non-negative")
        if level == 0 and cells:
            raise ValueError("the Theta_0 object has no cells")
        for c in cells:
            if not isinstance(c, ThetaObject) or c.level != level - 1:
                raise ValueError(f"cell {c!r} is not an object of level {level - 1}")
        self = object.__new__(cls)
        self.level = level
        self.cells = cells
        cls._table[key] = self
        return self

    def __reduce__(self):
        return (ThetaObject, (self.level, self.cells))

    @property
    def width(self):
        return len(self.cells)

    def __repr__(self):
        return f"ThetaObject({format_object(self)!s}, n={self.level})"

    def __str__(self):
        return format_object(self)


class ThetaMorphism:
    """A morphism ``(delta, {f_ij})`` of Theta_n.

    ``subs`` lists the sub-morphisms in lexicographic order of their index
    ``(i, j)``, for exactly the pairs with ``delta[i-1] < j <= delta[i]``.
    """

    __slots__ = ("source", "target", "delta", "subs", "__weakref__")
    _table = {}

    def __new__(cls, source, target, delta=(), subs=()):
        delta = tuple(delta)
        subs = tuple(subs)
        key = (source, target, delta, subs)
        found = cls._table.get(key)
        if found is not None:
            return found
        _check_morphism(source, target, delta, subs)
        self = object.__new__(cls)
        self.source = source
        self.target = target
        self.delta = delta
        self.subs = subs
        cls._table[key] = self
        return self

    def __reduce__(self):
        return (ThetaMorphism, (self.source, self.target, self.delta, self.subs))

    @property
    def level(self):
        return self.source.level

    def indices(self):
        return required_indices(self.delta)

    def sub(self, i, j):
        for idx, f in zip(required_indices(self.delta), self.subs):
            if idx == (i, j):
                return f
        raise KeyError((i, j))

    def __repr__(self):
        return (f"ThetaMorphism({format_morphism(self)}: "
                f"{format_object(self.source)} -> {format_object(self.target)})")


def required_indices(delta):
    """Index pairs ``(i, j)`` with ``delta[i-1] < j <= delta[i]``, in order."""
    return _required_indices(tuple(delta))


@lru_cache(maxsize=None)
def _required_indices(delta):
    out = []
    for i in range(1, len(delta)):
        for j in range(delta[i - 1] + 1, delta[i] + 1):
            out.append((i, j))
    return tuple(out)


def _check_morphism(source, target, delta, subs):
    if not isinstance(source, ThetaObject) or not isinstance(target, ThetaObject):
        raise TypeError("source and target must be ThetaObjects")
    if source.level != target.level:
        raise ValueError("source and target live at different levels")
    if source.level == 0:
        if delta or subs:
            raise ValueError("the level-0 morphism carries no data")
        return
    q, m = source.width, target.width
    if len(delta) != q + 1:
        raise ValueError(f"delta must have {q + 1} entries, got {len(delta)}")
    for a, b in zip(delta, delta[1:]):
        if a > b:
            raise ValueError("delta is not monotone")
    if delta[0] < 0 or delta[-1] > m:
        raise ValueError(f"delta values must lie in 0..{m}")
    idx = required_indices(delta)
    if len(idx) != len(subs):
        raise ValueError(f"expected {len(idx)} sub-morphisms, got {len(subs)}")
    for (i, j), f in zip(idx, subs):
        if f.source is not source.cells[i - 1] or f.target is not target.cells[j - 1]:
            raise ValueError(f"sub-morphism f{i},{j} has the wrong source or target")


POINT = ThetaObject(0)
POINT_ID = ThetaMorphism(POINT, POINT)


def obj(level, *cells):
    return ThetaObject(level, cells)


def zero(level):
    """The terminal object ``[0]`` of Theta_level."""
    return ThetaObject(level, ())


def identity(t):
    if t.level == 0:
        return POINT_ID
    q = t.width
    return ThetaMorphism(t, t, tuple(range(q + 1)), tuple(identity(c) for c in t.cells))


_compose_cache = {}
_level1 = {}


def compose(g, f):
    """The composite ``g . f`` (apply f first)."""
    if f.target is not g.source:
        raise ValueError("morphisms are not composable: target(f) != source(g)")
    level = f.source.level
    if level == 0:
        return f
    if level == 1:
        # every sub-morphism is the unique map of points, so delta decides everything
        delta = tuple(map(g.delta.__getitem__, f.delta))
        key = (f.source, g.target, delta)
        h = _level1.get(key)
        if h is None:
            h = ThetaMorphism(f.source, g.target, delta, (POINT_ID,) * (delta[-1] - delta[0]))
            _level1[key] = h
        return h
    key = (g, f)
    found = _compose_cache.get(key)
    if found is not None:
        return found
    fd, gd = f.delta, g.delta
    fsub = dict(zip(required_indices(fd), f.subs))
    gsub = dict(zip(required_indices(gd), g.subs))
    delta = tuple(gd[d] for d in fd)
    subs = []
    for i in range(1, len(fd)):
        for k in range(delta[i - 1] + 1, delta[i] + 1):
            # unique j with fd[i-1] < j <= fd[i] and gd[j-1] < k <= gd[j]
            for j in range(fd[i - 1] + 1, fd[i] + 1):
                if gd[j - 1] < k <= gd[j]:
                    subs.append(compose(gsub[(j, k)], fsub[(i, j)]))
                    break
    result = ThetaMorphism(f.source, g.target, delta, subs)
    _compose_cache[key] = result
    return result


def monotone_maps(q, m):
    """All weakly monotone maps [q] -> [m] as tuples, in lexicographic order."""
    return list(combinations_with_replacement(range(m + 1), q + 1))


@lru_cache(maxsize=None)
def hom(a, b):
    """All morphisms ``a -> b``, duplicate-free, delta lexicographic first."""
    if a.level != b.level:
        raise ValueError("objects live at different levels")
    if a.level == 0:
        return (POINT_ID,)
    out = []
    for delta in monotone_maps(a.width, b.width):
        idx = required_indices(delta)
        choices = [hom(a.cells[i - 1], b.cells[j - 1]) for i, j in idx]
        for subs in product(*choices):
            out.append(ThetaMorphism(a, b, delta, subs))
    return tuple(out)


@lru_cache(maxsize=None)
def degree(t):
    """``degree([q](c_1..c_q)) = q + sum(degree(c_i))``; the point has degree 0."""
    if t.level == 0:
        return 0
    return t.width + sum(degree(c) for c in t.cells)


@lru_cache(maxsize=None)
def enumerate_objects(n, d):
    """Objects of Theta_n of degree at most d, sorted by (degree, text)."""
    if n == 0:
        return (POINT,)
    found = set()
    for q in range(0, d + 1):
        budget = d - q
        lower = [c for c in enumerate_objects(n - 1, budget)]
        for cells in _cells_within(lower, q, budget):
            found.add(ThetaObject(n, cells))
    return tuple(sorted(found, key=lambda t: (degree(t), format_object(t))))


def _cells_within(pool, q, budget):
    if q == 0:
        yield ()
        return
    for c in pool:
        dc = degree(c)
        if dc <= budget:
            for rest in _cells_within(pool, q - 1, budget - dc):
                yield (c,) + rest


def cell(i, n):
    """The free-standing i-cell ``[1]^{(i)}`` as an object of Theta_n."""
    if not 0 <= i <= n:
        raise ValueError(f"cell index {i} out of range 0..{n}")
    if i == 0:
        return zero(n)
    return ThetaObject(n, (cell(i - 1, n - 1),))


def tau_theta(k, n):
    """``[k]([0], ..., [0])`` in Theta_n."""
    if n < 1:
        raise ValueError("tau_theta needs n >= 1")
    return ThetaObject(n, (zero(n - 1),) * k)


def diag_object(m, c):
    """``[m](c, ..., c)``, one level above c."""
    return ThetaObject(c.level + 1, (c,) * m)


def vertex(t, v):
    """The vertex inclusion ``[0] -> t`` picking vertex v of ``t = [q](...)``."""
    return ThetaMorphism(zero(t.level), t, (v,), ())


def edge(t, i):
    """The inclusion ``[1](c_i) -> t`` of the i-th spine edge (1-based)."""
    c = t.cells[i - 1]
    return ThetaMorphism(ThetaObject(t.level, (c,)), t, (i - 1, i), (identity(c),))


def suspend(h):
    """``[1](h): [1](c') -> [1](c)`` for a morphism h one level down."""
    src = ThetaObject(h.level + 1, (h.source,))
    tgt = ThetaObject(h.level + 1, (h.target,))
    return ThetaMorphism(src, tgt, (0, 1), (h,))


def is_epi(f):
    """Split epimorphisms of Theta_n: surjective delta and epi sub-morphisms."""
    if f.level == 0:
        return True
    d = f.delta
    if d[0] != 0 or d[-1] != f.target.width:
        return False
    if any(b - a > 1 for a, b in zip(d, d[1:])):
        return False
    return all(is_epi(s) for s in f.subs)


def is_mono(f):
    """Monomorphism test by injectivity of post-composition on ``hom(-, source)``.

    Exact within the Theta_n objects of degree up to that of the source.
    """
    for s in enumerate_objects(f.level, degree(f.source)):
        images = set()
        for g in hom(s, f.source):
            h = compose(f, g)
            if h in images:
                return False
            images.add(h)
    return True


class ThetaCategory:
    """The full subcategory of Theta_n on a finite tuple of objects.

    Morphisms are numbered; ``comp(g, f)`` composes by id.  Instances are
    cached per object tuple, so use :func:`category` or :func:`bounded`.
    """

    def __init__(self, objects):
        objects = tuple(objects)
        if not objects:
            raise ValueError("a category needs at least one object")
        levels = {t.level for t in objects}
        if len(levels) != 1:
            raise ValueError("objects of mixed levels")
        self.level = levels.pop()
        self.objects = objects
        self.obj_index = {t: i for i, t in enumerate(objects)}
        if len(self.obj_index) != len(objects):
            raise ValueError("duplicate objects")
        self.morphisms = []
        self.mor_index = {}
        self.hom_ids = {}
        self.into = {t: [] for t in objects}
        self.out_of = {t: [] for t in objects}
        for a in objects:
            for b in objects:
                ids = []
                for f in hom(a, b):
                    k = len(self.morphisms)
                    self.morphisms.append(f)
                    self.mor_index[f] = k
                    ids.append(k)
                    self.into[b].append(k)
                    self.out_of[a].append(k)
                self.hom_ids[(a, b)] = ids
        self.identity_id = {t: self.mor_index[identity(t)] for t in objects}
        self._comp = {}
        self._array = None
        self._generators = None

    def __contains__(self, t):
        return t in self.obj_index

    def __len__(self):
        return len(self.objects)

    def comp(self, g, f):
        if self._array is not None:
            return int(self._array[g, f])
        key = (g, f)
        r = self._comp.get(key)
        if r is None:
            r = self.mor_index[compose(self.morphisms[g], self.morphisms[f])]
            self._comp[key] = r
        return r

    def composition_table(self):
        """Every composable pair ``(g, f) -> g.f`` as a dict of ids."""
        for f, fm in enumerate(self.morphisms):
            for g in self.out_of[fm.target]:
                self.comp(g, f)
        return self._comp

    def composition_array(self):
        """The composition table as an ``n x n`` numpy array, ``[g, f] = g.f`` or -1.

        At level 1 a morphism is its monotone map, so the table is filled a
        whole hom-block at a time; above that every pair goes through
        :func:`compose`.
        """
        import numpy as np
        if self._array is not None:
            return self._array
        n = len(self.morphisms)
        arr = np.full((n, n), -1, dtype=np.int64)
        if self.level == 1:
            deltas = {}
            lut = {}
            for (a, b), ids in self.hom_ids.items():
                d = np.array([self.morphisms[k].delta for k in ids], dtype=np.int64)
                deltas[(a, b)] = d.reshape(len(ids), a.width + 1)
                radix = (b.width + 1) ** np.arange(a.width + 1)
                table = np.full((b.width + 1) ** (a.width + 1), -1, dtype=np.int64)
                table[deltas[(a, b)] @ radix] = ids
                lut[(a, b)] = (table, radix)
            for a in self.objects:
                for b in self.objects:
                    Fd, fids = deltas[(a, b)], self.hom_ids[(a, b)]
                    for c in self.objects:
                        Gd, gids = deltas[(b, c)], self.hom_ids[(b, c)]
                        table, radix = lut[(a, c)]
                        arr[np.ix_(gids, fids)] = table[Gd[:, Fd] @ radix]
        else:
            for (g, f), h in self.composition_table().items():
                arr[g, f] = h
        self._array = arr
        return arr

    def constraint_morphisms(self):
        """Ids of all non-identity morphisms.

        A truncated Theta_n has no useful notion of indecomposable morphism
        (every face factors through a degeneracy and back), so naturality is
        imposed along every non-identity morphism.
        """
        if self._generators is None:
            ids = set(self.identity_id.values())
            self._generators = tuple(k for k in range(len(self.morphisms)) if k not in ids)
        return self._generators

    def law_violations(self):
        """Count unit and associativity failures over the composition table."""
        from ._kernels import check_category_laws
        n = len(self.morphisms)
        src = [self.obj_index[f.source] for f in self.morphisms]
        tgt = [self.obj_index[f.target] for f in self.morphisms]
        ident = [self.identity_id[t] for t in self.objects]
        flat = self.composition_array().ravel().tolist()
        return check_category_laws(n, src, tgt, ident, flat)


_categories = {}


def category(objects):
    objects = tuple(objects)
    cat = _categories.get(objects)
    if cat is None:
        cat = ThetaCategory(objects)
        _categories[objects] = cat
    return cat


def bounded(n, d):
    """The full subcategory of Theta_n on objects of degree <= d."""
    return category(enumerate_objects(n, d))


# canonical text forms; the parser lives in textio

def format_object(t):
    if t.level == 0 or t.width == 0:
        return "[0]"
    if t.level == 1:
        return f"[{t.width}]"
    return f"[{t.width}](" + ",".join(format_object(c) for c in t.cells) + ")"


def format_morphism(f):
    if f.level == 0:
        return "*"
    parts = ["d=[" + ",".join(str(x) for x in f.delta) + "]"]
    for (i, j), s in zip(required_indices(f.delta), f.subs):
        parts.append(f"f{i},{j}={format_morphism(s)}")
    return "(" + ";".join(parts) + ")"
