"""Command line interface.

Every command prints a report (text or JSON) and exits 0 once a verdict has
been computed, whether or not the verdict is positive.  Bad input or usage
exits 2; a check that refuses to run on its input (for example a
Dwyer-Kan test on a non-Segal presheaf) exits 3.
"""

import argparse
import json
import sys
import time

from . import __version__
from .cofib import generating_cofibration, verify_hom_decomposition, has_rlp
from .corpus import (discrete_category, nerve, random_discrete, random_poset, walking_arrow_nerve,
                     walking_iso_nerve)
from .enrich import NotCertified, is_dk_equivalence, is_T_segal_category, v1
from .fileio import PresheafFileError, dumps, load_map, load_presheaf, presheaf_to_dict
from .kan import (ObjectSubset, coskeleton, discretize, discretize_right, is_T_discrete, phi,
                  R_discretize, skeleton, truncate, truncate_map)
from .presheaf import (boundary, constant, is_isomorphic, is_strict_segal, product,
                       representable, spine)
from . import simplicial as ss
from .textio import ThetaSyntaxError, format_arrow, parse_object
from .theta import bounded, cell, degree, enumerate_objects, format_object, hom


class UsageError(Exception):
    pass


def _split_top(text):
    """Split on commas outside brackets and parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_T(text, n):
    """``--T``: cell indices ("0,1") or object expressions ("[0],[1]([0])")."""
    members = []
    for item in _split_top(text):
        if item.isdigit():
            i = int(item)
            if i > n:
                raise UsageError(f"--T: cell index {i} exceeds n = {n}")
            members.append(cell(i, n))
        else:
            members.append(parse_object(item, n))
    try:
        T = ObjectSubset(n, members)
    except ValueError as e:
        raise UsageError(f"--T: {e}") from None
    return T


def _require_bottom_up(T):
    if not T.bottom_up:
        raise UsageError(f"--T {T!r} is not of the form {{[1]^(0), ..., [1]^(j)}}")


def _obj(args, text=None):
    text = text if text is not None else args.at
    if text is None:
        raise UsageError("an object is required (--at)")
    return parse_object(text, args.n)


def _summary(X):
    return {"name": X.name, "n": X.level, "objects": len(X.cat.objects),
            "simplicial_bound": X.bound, "cells": X.total_cells()}


def _bound(X):
    return {"n": X.level, "theta_degree_bound": max(degree(t) for t in X.cat.objects),
            "simplicial_bound": X.bound}


def _emit_presheaf(args, X, report):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(presheaf_to_dict(X, provenance=f"thetakit {args.command}")))
        report["written"] = args.out
    report["result"] = _summary(X)
    report["sizes"] = X.sizes()


# commands

def cmd_objects(args):
    objs = enumerate_objects(args.n, args.theta_bound)
    return {"verdict": len(objs),
            "objects": [{"object": format_object(t), "degree": degree(t)} for t in objs],
            "certified_bound": {"n": args.n, "theta_degree_bound": args.theta_bound}}


def cmd_homs(args):
    a = parse_object(args.source, args.n)
    b = parse_object(args.target, args.n)
    maps = hom(a, b)
    return {"inputs": {"source": format_object(a), "target": format_object(b)},
            "verdict": len(maps), "morphisms": [format_arrow(f) for f in maps]}


def cmd_check_segal(args):
    X = load_presheaf(args.file)
    rep = is_strict_segal(X)
    return {"inputs": _summary(X), "verdict": rep.ok, "witness": rep.witness,
            "certified_bound": _bound(X)}


def cmd_check_model(args):
    X = load_presheaf(args.file)
    T = parse_T(args.T, X.level)
    rep = is_T_segal_category(X, T)
    out = {"inputs": {**_summary(X), "T": repr(T)}, "verdict": rep.ok, "certified_bound": _bound(X)}
    out.update(rep.as_dict())
    return out


def cmd_check_dk(args):
    f = load_map(args.file)
    rep = is_dk_equivalence(f)
    out = {"inputs": {"source": _summary(f.source), "target": _summary(f.target)},
           "verdict": rep.ok, "certified_bound": _bound(f.source)}
    out.update(rep.as_dict())
    return out


def cmd_cosk(args):
    X = load_presheaf(args.file)
    T = parse_T(args.T, X.level)
    d = max(degree(t) for t in X.cat.objects)
    if args.theta_bound_given:
        d = args.theta_bound
    at = _obj(args) if args.at else None
    if at is not None:
        d = max(d, degree(at))
    for s in T:
        if s not in X.cat:
            raise UsageError(f"{format_object(s)} lies outside the bound of the input")
    cat = bounded(X.level, d)
    C = coskeleton(X, T, cat)
    out = {"inputs": {**_summary(X), "T": repr(T)}, "certified": True,
           "certified_bound": _bound(C)}
    if at is not None:
        out["at"] = format_object(at)
        out["verdict"] = C.size(at, 0)
        out["cardinalities"] = list(C.values[at].sizes)
    _emit_presheaf(args, C, out)
    out.setdefault("verdict", C.total_cells())
    return out


def cmd_sk(args):
    X = load_presheaf(args.file)
    T = parse_T(args.T, X.level)
    K = skeleton(X, T)
    out = {"inputs": {**_summary(X), "T": repr(T)}, "certified": True,
           "certified_bound": _bound(K), "verdict": K.total_cells()}
    if args.at:
        out["at"] = format_object(_obj(args))
        out["cardinalities"] = list(K.values[_obj(args)].sizes)
    _emit_presheaf(args, K, out)
    return out


def cmd_discretize(args):
    X = load_presheaf(args.file)
    T = parse_T(args.T, X.level)
    D, _ = discretize_right(X, T) if args.right else discretize(X, T)
    out = {"inputs": {**_summary(X), "T": repr(T), "side": "right" if args.right else "left"},
           "verdict": is_T_discrete(D, T), "certified_bound": _bound(D)}
    _emit_presheaf(args, D, out)
    return out


def cmd_r_functor(args):
    W = load_presheaf(args.file)
    j = args.j
    if not 0 <= j < max(W.level, 1):
        raise UsageError(f"--j must lie in 0..{W.level - 1}")
    res = R_discretize(W, j)
    RW = res.RW
    c = cell(j, W.level)
    discrete = RW.values[c].is_discrete()
    c0 = cell(0, W.level)
    vertices = sorted(res.to_W.comps[c0][0]) == list(range(W.size(c0, 0)))
    seg = is_strict_segal(W)
    dk = None
    if seg.ok:
        try:
            dk = is_dk_equivalence(res.to_W).as_dict()
        except NotCertified as e:
            dk = {"dk_equivalence": None, "not_certified": str(e)}
    out = {"inputs": {**_summary(W), "j": j}, "certified_bound": _bound(RW),
           "discrete_at_cell": discrete, "vertices_bijective": vertices,
           "W_strict_segal": seg.ok, "dk": dk,
           "verdict": bool(discrete and vertices and (dk is None or dk.get("dk_equivalence")))}
    _emit_presheaf(args, RW, out)
    return out


def cmd_phi(args):
    f = load_map(args.file)
    X, Y = f.source, f.target
    T = parse_T(args.T, X.level)
    res = phi(Y, X, f, T)
    iso = {}
    for i in T.cell_indices():
        c = cell(i, X.level)
        iso[format_object(c)] = bool(is_isomorphic(truncate(res.PhiY, [c]), truncate(X, [c])))
    factors = res.from_X.then(res.to_Y) == f
    out = {"inputs": {"source": _summary(X), "target": _summary(Y), "T": repr(T)},
           "certified_bound": _bound(res.PhiY), "iso_at_T": iso, "factors": factors,
           "verdict": factors and all(iso.values())}
    _emit_presheaf(args, res.PhiY, out)
    return out


def cmd_verify_homdec(args):
    X = load_presheaf(args.file)
    T = parse_T(args.T, X.level)
    _require_bottom_up(T)
    t = _obj(args)
    rep = verify_hom_decomposition(X, args.m, t, T, which=args.which)
    out = {"inputs": {**_summary(X), "T": repr(T), "t": format_object(t), "m": args.m},
           "verdict": rep.equal, "certified_bound": _bound(X)}
    out.update(rep.as_dict())
    return out


def cmd_rlp(args):
    p = load_map(args.file)
    T = parse_T(args.T, p.source.level)
    t = _obj(args)
    gen = generating_cofibration(args.m, t, T)
    i = gen.map
    if p.source.bound < i.source.bound:
        raise UsageError(f"the map needs simplicial bound >= {args.m}")
    objs = list(i.source.cat.objects)
    for s in objs:
        if s not in p.source.cat:
            raise UsageError(f"{format_object(s)} lies outside the bound of the map")
    pr = truncate_map(p, objs)
    if pr.source.bound != i.source.bound:
        raise UsageError(f"use --simp-bound {args.m} files for --m {args.m}")
    res = has_rlp(pr, i, max_squares=args.max_squares)
    out = {"inputs": {"source": _summary(p.source), "target": _summary(p.target),
                      "T": repr(T), "t": format_object(t), "m": args.m},
           "cofibration_is_mono": gen.is_mono, "verdict": res.ok,
           "certified_bound": _bound(pr.source)}
    out.update(res.as_dict())
    return out


CORPUS_KINDS = ("representable", "spine", "boundary", "v1", "product", "nerve-arrow",
                "nerve-iso", "poset", "random", "points", "constant-simplex")


def cmd_corpus_gen(args):
    n, d, b = args.n, args.theta_bound, args.simp_bound
    kind = args.kind
    if kind in ("nerve-arrow", "nerve-iso", "poset", "random", "points") and b != 0:
        raise UsageError(f"{kind} presheaves are levelwise discrete; use --simp-bound 0")
    if kind == "v1":
        if n < 1:
            raise UsageError("v1 needs --n >= 1")
        inner = bounded(n - 1, max(d - 1, 0))
        if args.at:
            A = representable(parse_object(args.at, n - 1), inner, b)
        else:
            A = constant(ss.point(b), inner, name="pt")
        X = v1(A, d)
    else:
        cat = bounded(n, d)
        if kind == "representable":
            X = representable(_obj(args), cat, b)
        elif kind == "spine":
            X = spine(_obj(args), cat, b)[0]
        elif kind == "boundary":
            X = boundary(_obj(args), cat, b)[0]
        elif kind == "product":
            if not args.at or not args.at2:
                raise UsageError("product needs --at and --at2")
            X = product(representable(_obj(args), cat, b),
                        representable(_obj(args, args.at2), cat, b))[0]
        elif kind == "nerve-arrow":
            X = walking_arrow_nerve(cat)
        elif kind == "nerve-iso":
            X = walking_iso_nerve(cat)
        elif kind == "poset":
            X = nerve(random_poset(args.seed, args.size), cat, name=f"N(poset seed {args.seed})")
        elif kind == "points":
            X = nerve(discrete_category(args.size), cat, name=f"{args.size} points")
        elif kind == "random":
            X = random_discrete(cat, args.seed)
            X.name = f"random seed {args.seed}"
        else:
            X = constant(ss.simplex(args.m, b), cat, name=f"const(D[{args.m}])")
    msg = X.validate()
    out = {"inputs": {"kind": kind, "seed": args.seed}, "verdict": msg is None,
           "validation": msg or "ok", "certified_bound": _bound(X)}
    if args.out:
        _emit_presheaf(args, X, out)
    else:
        out["presheaf"] = presheaf_to_dict(X, provenance=f"corpus-gen {kind}")
    return out


# plumbing

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="level of Theta_n (default 2)")
    common.add_argument("--theta-bound", type=int, default=None,
                        help="degree bound for Theta objects (default 3)")
    common.add_argument("--simp-bound", type=int, default=0, help="simplicial bound (default 0)")
    common.add_argument("--T", default="0", help="cell indices or objects, comma separated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", default=None, help="write the resulting presheaf here")
    common.add_argument("--at", default=None, help="an object expression")
    common.add_argument("--m", type=int, default=0, help="simplicial dimension m")
    common.add_argument("--j", type=int, default=0, help="cell index for r-functor")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    p = argparse.ArgumentParser(prog="thetakit", description="Finite Theta_n-presheaf toolkit.")
    p.add_argument("--version", action="version", version=f"thetakit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("objects", parents=[common], help="list objects within the degree bound")
    s = sub.add_parser("homs", parents=[common], help="count and list morphisms")
    s.add_argument("source")
    s.add_argument("target")
    for name, helptext in (("check-segal", "strict Segal condition"),
                           ("check-model", "T-Segal precategory and category"),
                           ("cosk", "coskeleton along T"), ("sk", "skeleton along T"),
                           ("discretize", "discretize at T"),
                           ("r-functor", "the discretization R at [1]^(j)"),
                           ("verify-homdec", "hom decomposition for the P and Q shapes")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file", help="presheaf JSON file")
        if name == "discretize":
            s.add_argument("--right", action="store_true",
                           help="largest T-discrete sub-presheaf instead of the quotient")
        if name == "verify-homdec":
            s.add_argument("--which", choices=("P", "Q"), default="Q")
    for name, helptext in (("check-dk", "Dwyer-Kan equivalence"),
                           ("phi", "the factorization X -> Phi Y -> Y"),
                           ("rlp", "right lifting against a generating cofibration")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file", help="map JSON file")
        if name == "rlp":
            s.add_argument("--max-squares", type=int, default=0)
    s = sub.add_parser("corpus-gen", parents=[common], help="emit a corpus presheaf")
    s.add_argument("kind", choices=CORPUS_KINDS)
    s.add_argument("--at2", default=None, help="second factor for product")
    s.add_argument("--size", type=int, default=3, help="number of points or poset elements")
    return p


COMMANDS = {
    "objects": cmd_objects, "homs": cmd_homs, "check-segal": cmd_check_segal,
    "check-model": cmd_check_model, "check-dk": cmd_check_dk, "cosk": cmd_cosk, "sk": cmd_sk,
    "discretize": cmd_discretize, "r-functor": cmd_r_functor, "phi": cmd_phi,
    "verify-homdec": cmd_verify_homdec, "rlp": cmd_rlp, "corpus-gen": cmd_corpus_gen,
}


def _text(report, indent=0):
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict) and v and k != "presheaf":
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, (str, dict)) for x in v):
            lines.append(f"{pad}{k}: ({len(v)})")
            for x in v:
                lines.append(f"{pad}  {json.dumps(x, sort_keys=True) if isinstance(x, dict) else x}")
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return lines


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.theta_bound_given = args.theta_bound is not None
    if args.theta_bound is None:
        args.theta_bound = 3
    for flag in ("n", "theta_bound", "simp_bound", "m"):
        if getattr(args, flag) < 0:
            parser.error(f"--{flag.replace('_', '-')} must be non-negative")
    start = time.perf_counter()
    try:
        body = COMMANDS[args.command](args)
    except (UsageError, ThetaSyntaxError, PresheafFileError) as e:
        print(f"thetakit {args.command}: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"thetakit {args.command}: error: {e}", file=sys.stderr)
        return 2
    except NotCertified as e:
        print(f"thetakit {args.command}: not checked: {e}", file=sys.stderr)
        return 3
    report = {"command": args.command, **body}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=1, default=str)
    else:
        text = "\n".join(_text(report))
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
