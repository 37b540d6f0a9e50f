"""Text forms of Theta objects and morphisms.

Objects are written ``[0]``, ``[k]`` (level 1, or every cell a point) and
``[k](c_1,...,c_k)``.  Morphisms are ``(d=[d_0,...,d_q];f1,1=...;...)``
with one ``fi,j`` entry per required index, or ``*`` at level 0.  Whitespace
is ignored everywhere.  An arrow, as used for keys in presheaf files, is
``morphism:source->target``.

The printers live in :mod:`thetakit.theta`; this module only parses.
"""

from .theta import ThetaMorphism, ThetaObject, format_morphism, format_object, required_indices


class ThetaSyntaxError(ValueError):
    """A parse failure at character offset ``pos`` of ``text``."""

    def __init__(self, message, pos, text=""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")

    def pointer(self):
        """The offending text with a caret under the failure position."""
        return f"{self.text}\n{' ' * self.pos}^"


class _Reader:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            raise ThetaSyntaxError(f"expected {ch!r}, found {got}", self.i, self.text)
        self.i += 1

    def nat(self):
        self.ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            raise ThetaSyntaxError("expected a natural number", start, self.text)
        return int(self.text[start:self.i]), start

    def end(self):
        self.ws()
        if self.i != len(self.text):
            raise ThetaSyntaxError("unexpected trailing input", self.i, self.text)


# raw trees: ("obj", width, children or None, pos), ("mor", delta, entries, pos), ("star", pos)

def _read_object(r):
    r.ws()
    pos = r.i
    r.expect("[")
    k, _ = r.nat()
    r.expect("]")
    children = None
    if r.peek() == "(":
        if k == 0:
            raise ThetaSyntaxError("[0] takes no cells", r.i, r.text)
        r.i += 1
        children = [_read_object(r)]
        while r.peek() == ",":
            r.i += 1
            children.append(_read_object(r))
        r.expect(")")
        if len(children) != k:
            raise ThetaSyntaxError(f"[{k}] needs {k} cells, got {len(children)}", pos, r.text)
    return ("obj", k, children, pos)


def _min_level(raw):
    _, k, children, _ = raw
    if k == 0:
        return 0
    if children is None:
        return 1
    # a written-out cell sits at level >= 1, so "[1]([0])" is a 2-cell
    return 1 + max(max(_min_level(c), 1) for c in children)


def _build_object(raw, level, text):
    _, k, children, pos = raw
    if k == 0:
        return ThetaObject(level)
    if level == 0:
        raise ThetaSyntaxError("level mismatch: a cell of positive width at level 0", pos, text)
    if children is None:
        point = ThetaObject(level - 1)
        return ThetaObject(level, [point] * k)
    return ThetaObject(level, [_build_object(c, level - 1, text) for c in children])


def parse_object(text, n=None):
    """Parse an object; ``n`` fixes the level, otherwise the least level that fits."""
    r = _Reader(text)
    raw = _read_object(r)
    r.end()
    need = _min_level(raw)
    if n is None:
        n = need
    elif need > n:
        raise ThetaSyntaxError(f"level mismatch: object needs level {need}, asked for {n}", 0, text)
    return _build_object(raw, n, text)


def _read_morphism(r):
    r.ws()
    pos = r.i
    if r.peek() == "*":
        r.i += 1
        return ("star", pos)
    r.expect("(")
    r.ws()
    if not r.text.startswith("d", r.i):
        raise ThetaSyntaxError("expected 'd='", r.i, r.text)
    r.i += 1
    r.expect("=")
    r.expect("[")
    dpos = r.i
    delta = [r.nat()[0]]
    while r.peek() == ",":
        r.i += 1
        delta.append(r.nat()[0])
    r.expect("]")
    entries = []
    while r.peek() == ";":
        r.i += 1
        if r.peek() == ")":
            break
        r.ws()
        epos = r.i
        if not r.text.startswith("f", r.i):
            raise ThetaSyntaxError("expected an entry 'fi,j=...'", r.i, r.text)
        r.i += 1
        i, _ = r.nat()
        r.expect(",")
        j, _ = r.nat()
        r.expect("=")
        entries.append(((i, j), _read_morphism(r), epos))
    r.expect(")")
    return ("mor", delta, entries, pos, dpos)


def _build_morphism(raw, source, target, text):
    if raw[0] == "star":
        if source.level != 0:
            raise ThetaSyntaxError(f"level mismatch: '*' is a level-0 morphism, here the level is "
                                   f"{source.level}", raw[1], text)
        return ThetaMorphism(source, target)
    _, delta, entries, pos, dpos = raw
    if source.level == 0:
        raise ThetaSyntaxError("level mismatch: level-0 morphisms are written '*'", pos, text)
    q, m = source.width, target.width
    if len(delta) != q + 1:
        raise ThetaSyntaxError(f"d must have {q + 1} entries for source {format_object(source)}",
                               dpos, text)
    for a, b in zip(delta, delta[1:]):
        if a > b:
            raise ThetaSyntaxError("d is not monotone", dpos, text)
    if delta[-1] > m:
        raise ThetaSyntaxError(f"d values must lie in 0..{m}", dpos, text)
    need = required_indices(delta)
    given = {}
    for idx, sub, epos in entries:
        if idx not in need:
            raise ThetaSyntaxError(f"invalid index f{idx[0]},{idx[1]} for d={list(delta)}", epos, text)
        if idx in given:
            raise ThetaSyntaxError(f"duplicate entry f{idx[0]},{idx[1]}", epos, text)
        given[idx] = (sub, epos)
    missing = [idx for idx in need if idx not in given]
    if missing:
        i, j = missing[0]
        raise ThetaSyntaxError(f"missing entry f{i},{j}", pos, text)
    subs = [_build_morphism(given[(i, j)][0], source.cells[i - 1], target.cells[j - 1], text)
            for (i, j) in need]
    return ThetaMorphism(source, target, delta, subs)


def parse_morphism(text, source, target):
    """Parse a morphism ``source -> target``; both ends may be objects or text."""
    if isinstance(source, str) and isinstance(target, str):
        level = max(parse_object(source).level, parse_object(target).level)
        source, target = parse_object(source, level), parse_object(target, level)
    if isinstance(source, str):
        source = parse_object(source, target.level if isinstance(target, ThetaObject) else None)
    if isinstance(target, str):
        target = parse_object(target, source.level)
    if source.level != target.level:
        raise ThetaSyntaxError("level mismatch between source and target", 0, text)
    r = _Reader(text)
    raw = _read_morphism(r)
    r.end()
    return _build_morphism(raw, source, target, text)


def format_arrow(f):
    return f"{format_morphism(f)}:{format_object(f.source)}->{format_object(f.target)}"


def parse_arrow(text, n):
    """Parse ``morphism:source->target`` at level n."""
    head, sep, ends = text.rpartition(":")
    if not sep:
        raise ThetaSyntaxError("expected 'morphism:source->target'", len(text), text)
    src, arrow, tgt = ends.partition("->")
    base = len(head) + 1
    if not arrow:
        raise ThetaSyntaxError("expected '->'", len(text), text)
    try:
        source = parse_object(src, n)
    except ThetaSyntaxError as e:
        raise ThetaSyntaxError(e.message, base + e.pos, text) from None
    try:
        target = parse_object(tgt, n)
    except ThetaSyntaxError as e:
        raise ThetaSyntaxError(e.message, base + len(src) + 2 + e.pos, text) from None
    return parse_morphism(head, source, target)
