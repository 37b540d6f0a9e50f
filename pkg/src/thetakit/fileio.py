"""JSON files for finite Theta-presheaves and maps between them.

A presheaf file looks like::

    {"format": "thetakit-presheaf/1", "n": 2, "theta_degree_bound": 3,
     "simplicial_bound": 1, "metadata": {"name": ..., "provenance": ...},
     "cells": {"[1]([0])": [["a", "b"], ["a", "b", "e"]], ...},
     "theta_actions": {"(d=[0]):[0]->[1]([0])": [{"a": "p"}, ...], ...},
     "simplicial_actions": {"[0]": {"faces": [[{...}, {...}]],
                                    "degeneracies": [[{...}]]}, ...}}

``cells`` lists the simplex names of every object in each degree.  Every
non-identity morphism has an entry in ``theta_actions`` sending the names
over its target to names over its source, one table per degree.
``faces[k-1][i]`` is d_i on k-simplices and ``degeneracies[k][i]`` is s_i
on k-simplices.  An optional ``objects`` list replaces the default of all
objects of degree at most ``theta_degree_bound``.

Files are written with sorted keys, so saving a loaded file reproduces it
byte for byte.  Keys may carry extra whitespace or shorthand; the loader
normalizes them.  The loader checks every field and the full functoriality of
the action before returning; failures raise :class:`PresheafFileError`
carrying a JSON path.
"""

import json

from .presheaf import PresheafMap, ThetaSet
from .simplicial import FinSimpSet
from .textio import ThetaSyntaxError, format_arrow, parse_arrow, parse_object
from .theta import (ThetaMorphism, bounded, category, degree, enumerate_objects, format_morphism,
                    format_object, identity)

PRESHEAF_FORMAT = "thetakit-presheaf/1"
MAP_FORMAT = "thetakit-map/1"


class PresheafFileError(ValueError):
    """A rejected file; ``path`` locates the offending field (``$`` is the root)."""

    def __init__(self, message, path="$"):
        self.message = message
        self.path = path
        super().__init__(f"{path}: {message}")


def _key(path, k):
    return f"{path}[{json.dumps(k)}]" if isinstance(k, str) else f"{path}[{k}]"


# writing

def _names(X, t, k):
    els = X.elements[t][k] if X.elements is not None and t in X.elements else None
    if els is not None and len(els) == X.size(t, k):
        names = [e if isinstance(e, str) else
                 format_morphism(e) if isinstance(e, ThetaMorphism) else None for e in els]
        if None not in names and len(set(names)) == len(names) \
                and all(0 < len(s) <= 60 for s in names):
            return names
    return [f"x{i}" for i in range(X.size(t, k))]


def presheaf_to_dict(X, provenance=""):
    cat, bound = X.cat, X.bound
    D = max((degree(t) for t in cat.objects), default=0)
    names = {t: [_names(X, t, k) for k in range(bound + 1)] for t in cat.objects}
    out = {
        "format": PRESHEAF_FORMAT,
        "n": cat.level,
        "theta_degree_bound": D,
        "simplicial_bound": bound,
        "metadata": {"name": X.name, "provenance": provenance},
        "cells": {format_object(t): names[t] for t in cat.objects},
    }
    if list(cat.objects) != list(enumerate_objects(cat.level, D)):
        out["objects"] = [format_object(t) for t in cat.objects]
    acts = {}
    for fid, f in enumerate(cat.morphisms):
        if f is identity(f.source):
            continue
        a, b = f.source, f.target
        acts[format_arrow(f)] = [
            {names[b][k][x]: names[a][k][y] for x, y in enumerate(X.theta[fid][k])}
            for k in range(bound + 1)]
    out["theta_actions"] = acts
    simp = {}
    for t in cat.objects:
        v, nm = X.values[t], names[t]
        simp[format_object(t)] = {
            "faces": [[{nm[k][x]: nm[k - 1][y] for x, y in enumerate(tab)} for tab in v.faces[k]]
                      for k in range(1, bound + 1)],
            "degeneracies": [[{nm[k][x]: nm[k + 1][y] for x, y in enumerate(tab)}
                              for tab in v.degens[k]] for k in range(bound)],
        }
    out["simplicial_actions"] = simp
    return out


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save_presheaf(X, path, provenance=""):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(presheaf_to_dict(X, provenance)))


# reading

def _need(d, field, kind, path):
    if not isinstance(d, dict):
        raise PresheafFileError("expected an object", path)
    if field not in d:
        raise PresheafFileError(f"missing field {field!r}", path)
    v = d[field]
    ok = {
        "int": isinstance(v, int) and not isinstance(v, bool) and v >= 0,
        "dict": isinstance(v, dict),
        "list": isinstance(v, list),
        "str": isinstance(v, str),
    }[kind]
    if not ok:
        want = {"int": "a non-negative integer", "dict": "an object", "list": "a list",
                "str": "a string"}[kind]
        raise PresheafFileError(f"expected {want}", _key(path, field))
    return v


def _table(d, src_names, tgt_names, path):
    """A name map given as a JSON object, converted to an index table."""
    if not isinstance(d, dict):
        raise PresheafFileError("expected an object mapping names to names", path)
    tgt_index = {s: i for i, s in enumerate(tgt_names)}
    for name in d:
        if name not in src_names:
            raise PresheafFileError(f"unknown simplex {name!r}", _key(path, name))
    tab = []
    for name in src_names:
        if name not in d:
            raise PresheafFileError(f"no value for simplex {name!r}", path)
        y = d[name]
        if y not in tgt_index:
            raise PresheafFileError(f"value {y!r} is not a simplex of the target",
                                    _key(path, name))
        tab.append(tgt_index[y])
    return tuple(tab)


def _parse_key(text, n, path, arrow=False, as_key=True):
    """Parse a key of the object at ``path`` (or, with ``as_key=False``, the value there)."""
    try:
        return parse_arrow(text, n) if arrow else parse_object(text, n)
    except ThetaSyntaxError as e:
        raise PresheafFileError(f"bad expression {text!r}: {e.message} at position {e.pos}",
                                _key(path, text) if as_key else path) from None


def presheaf_from_dict(d, path="$"):
    fmt = _need(d, "format", "str", path)
    if fmt != PRESHEAF_FORMAT:
        raise PresheafFileError(f"unsupported format {fmt!r}", _key(path, "format"))
    n = _need(d, "n", "int", path)
    D = _need(d, "theta_degree_bound", "int", path)
    bound = _need(d, "simplicial_bound", "int", path)
    meta = d.get("metadata", {})
    if not isinstance(meta, dict):
        raise PresheafFileError("expected an object", _key(path, "metadata"))
    if "objects" in d:
        olist = _need(d, "objects", "list", path)
        objs = []
        opath = _key(path, "objects")
        for i, s in enumerate(olist):
            if not isinstance(s, str):
                raise PresheafFileError("expected an object expression", _key(opath, i))
            t = _parse_key(s, n, _key(opath, i), as_key=False)
            if t in objs:
                raise PresheafFileError(f"repeated object {s}", _key(opath, i))
            objs.append(t)
        cat = category(tuple(objs))
    else:
        cat = bounded(n, D)
    cells = _need(d, "cells", "dict", path)
    cpath = _key(path, "cells")
    names = {}
    for text, rows in cells.items():
        t = _parse_key(text, n, cpath)
        if t not in cat:
            raise PresheafFileError(f"object {text} is outside the category", _key(cpath, text))
        if t in names:
            raise PresheafFileError(f"{text} repeats {format_object(t)}", _key(cpath, text))
        rpath = _key(cpath, text)
        if not isinstance(rows, list) or len(rows) != bound + 1:
            raise PresheafFileError(f"expected {bound + 1} lists of simplex names", rpath)
        for k, row in enumerate(rows):
            if not isinstance(row, list) or not all(isinstance(s, str) for s in row):
                raise PresheafFileError("expected a list of names", f"{rpath}[{k}]")
            if len(set(row)) != len(row):
                raise PresheafFileError("repeated simplex name", f"{rpath}[{k}]")
        names[t] = rows
    for t in cat.objects:
        if t not in names:
            raise PresheafFileError(f"missing cells for {format_object(t)}", cpath)

    simp = _need(d, "simplicial_actions", "dict", path)
    spath = _key(path, "simplicial_actions")
    values = {}
    simp_keys = {}
    for text in simp:
        t = _parse_key(text, n, spath)
        if t in simp_keys:
            raise PresheafFileError(f"{text} repeats {format_object(t)}", _key(spath, text))
        simp_keys[t] = text
    for t in cat.objects:
        if t not in simp_keys:
            raise PresheafFileError(f"missing simplicial structure for {format_object(t)}", spath)
        text = simp_keys[t]
        tp = _key(spath, text)
        ent = simp[text]
        faces_in = _need(ent, "faces", "list", tp)
        degens_in = _need(ent, "degeneracies", "list", tp)
        if len(faces_in) != bound:
            raise PresheafFileError(f"expected {bound} degrees of faces", _key(tp, "faces"))
        if len(degens_in) != bound:
            raise PresheafFileError(f"expected {bound} degrees of degeneracies",
                                    _key(tp, "degeneracies"))
        nm = names[t]
        faces = [()]
        for k in range(1, bound + 1):
            fk = faces_in[k - 1]
            fp = f"{_key(tp, 'faces')}[{k - 1}]"
            if not isinstance(fk, list) or len(fk) != k + 1:
                raise PresheafFileError(f"expected {k + 1} face maps", fp)
            faces.append(tuple(_table(fk[i], nm[k], nm[k - 1], f"{fp}[{i}]")
                               for i in range(k + 1)))
        degens = []
        for k in range(bound):
            dk = degens_in[k]
            dp = f"{_key(tp, 'degeneracies')}[{k}]"
            if not isinstance(dk, list) or len(dk) != k + 1:
                raise PresheafFileError(f"expected {k + 1} degeneracy maps", dp)
            degens.append(tuple(_table(dk[i], nm[k], nm[k + 1], f"{dp}[{i}]")
                                for i in range(k + 1)))
        degens.append(())
        v = FinSimpSet([len(r) for r in nm], faces, degens)
        msg = v.validate()
        if msg:
            raise PresheafFileError(f"simplicial identity fails: {msg}", tp)
        values[t] = v

    acts = _need(d, "theta_actions", "dict", path)
    apath = _key(path, "theta_actions")
    by_mor = {}
    for text in acts:
        f = _parse_key(text, n, apath, arrow=True)
        if f not in cat.mor_index:
            raise PresheafFileError("morphism outside the category", _key(apath, text))
        if f in by_mor:
            raise PresheafFileError(f"{text} repeats {format_arrow(f)}", _key(apath, text))
        by_mor[f] = text
    theta = []
    for f in cat.morphisms:
        a, b = f.source, f.target
        if f is identity(a) and f not in by_mor:
            theta.append(tuple(tuple(range(values[a].sizes[k])) for k in range(bound + 1)))
            continue
        if f not in by_mor:
            raise PresheafFileError(f"missing action of {format_arrow(f)}", apath)
        text = by_mor[f]
        rows = acts[text]
        fp = _key(apath, text)
        if not isinstance(rows, list) or len(rows) != bound + 1:
            raise PresheafFileError(f"expected {bound + 1} tables", fp)
        theta.append(tuple(_table(rows[k], names[b][k], names[a][k], f"{fp}[{k}]")
                           for k in range(bound + 1)))
    elements = {t: [list(r) for r in names[t]] for t in cat.objects}
    X = ThetaSet(cat, bound, values, theta, name=meta.get("name", ""), elements=elements)
    msg = X.validate()
    if msg:
        raise PresheafFileError(msg, apath)
    return X


def _decode(text, path="$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PresheafFileError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})",
                                path) from None


def loads_presheaf(text):
    return presheaf_from_dict(_decode(text))


def load_presheaf(path):
    with open(path, encoding="utf-8") as fh:
        return loads_presheaf(fh.read())


# maps

def map_to_dict(phi, provenance=""):
    S, T = phi.source, phi.target
    sd, td = presheaf_to_dict(S), presheaf_to_dict(T)
    comps = {}
    for t in S.cat.objects:
        sn = [_names(S, t, k) for k in range(S.bound + 1)]
        tn = [_names(T, t, k) for k in range(T.bound + 1)]
        comps[format_object(t)] = [{sn[k][x]: tn[k][y] for x, y in enumerate(phi.comps[t][k])}
                                   for k in range(S.bound + 1)]
    return {"format": MAP_FORMAT, "source": sd, "target": td, "components": comps,
            "metadata": {"provenance": provenance}}


def map_from_dict(d, path="$"):
    fmt = _need(d, "format", "str", path)
    if fmt != MAP_FORMAT:
        raise PresheafFileError(f"unsupported format {fmt!r}", _key(path, "format"))
    S = presheaf_from_dict(_need(d, "source", "dict", path), _key(path, "source"))
    T = presheaf_from_dict(_need(d, "target", "dict", path), _key(path, "target"))
    if S.cat.objects != T.cat.objects or S.bound != T.bound:
        raise PresheafFileError("source and target have different shapes", path)
    comps_in = _need(d, "components", "dict", path)
    cp = _key(path, "components")
    keys = {}
    for text in comps_in:
        t = _parse_key(text, S.level, cp)
        if t in keys:
            raise PresheafFileError(f"{text} repeats {format_object(t)}", _key(cp, text))
        keys[t] = text
    comps = {}
    for t in S.cat.objects:
        if t not in keys:
            raise PresheafFileError(f"missing component at {format_object(t)}", cp)
        text = keys[t]
        rows = comps_in[text]
        if not isinstance(rows, list) or len(rows) != S.bound + 1:
            raise PresheafFileError(f"expected {S.bound + 1} tables", _key(cp, text))
        comps[t] = tuple(_table(rows[k], S.elements[t][k], T.elements[t][k],
                                f"{_key(cp, text)}[{k}]") for k in range(S.bound + 1))
    phi = PresheafMap(S, T, comps)
    msg = phi.check_natural()
    if msg:
        raise PresheafFileError(msg, cp)
    return phi


def loads_map(text):
    return map_from_dict(_decode(text))


def load_map(path):
    with open(path, encoding="utf-8") as fh:
        return loads_map(fh.read())


def save_map(phi, path, provenance=""):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(map_to_dict(phi, provenance)))
