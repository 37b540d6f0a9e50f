"""Time the compiled kernels against the pure-Python ones on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import statistics
import time

from thetakit import _kernels_py
from thetakit import simplicial as ss
from thetakit.corpus import walking_iso_nerve
from thetakit.presheaf import constant, coproduct, product, representable
from thetakit.search import NatProblem
from thetakit.theta import bounded, cell, tau_theta

try:
    from thetakit import _ckernels
except ImportError:
    _ckernels = None


def csp_case(prob):
    args = (prob.dom, prob.out_start, prob.out_tgt, prob.out_off, prob.tables, prob.order,
            [], [], [-1] * prob.nvars, 0, False)
    return lambda mod: mod.solve_functional_csp(*args)[0]


def law_case(cat):
    table = cat.composition_array().ravel().tolist()
    n = len(cat.morphisms)
    src = [cat.obj_index[f.source] for f in cat.morphisms]
    tgt = [cat.obj_index[f.target] for f in cat.morphisms]
    ident = [cat.identity_id[t] for t in cat.objects]
    return lambda mod: mod.check_category_laws(n, src, tgt, ident, table)


def cases():
    cat = bounded(2, 3)
    K = constant(ss.simplex(1, 1), cat)
    A = product(representable(tau_theta(2, 2), cat, 1), K)[0]
    X = coproduct([K, product(representable(cell(1, 2), cat, 1), K)[0]])[0]
    yield "maps Theta[2]xD[1] -> X", csp_case(NatProblem(A, X))
    N = walking_iso_nerve(cat)
    yield "maps Theta[3] -> N(iso)", csp_case(NatProblem(representable(tau_theta(3, 2), cat), N))
    yield "laws Theta_2, degree <= 3", law_case(cat)
    yield "laws Theta_3, degree <= 3", law_case(bounded(3, 3))


def timed(fn, mod, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(mod)
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the pure timings are shown")
    print(f"{'case':32s} {'result':>10s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in cases():
        r_py, t_py = timed(fn, _kernels_py, args.repeat)
        if _ckernels is None:
            print(f"{name:32s} {r_py:>10} {t_py:10.4f}")
            continue
        r_c, t_c = timed(fn, _ckernels, args.repeat)
        if r_c != r_py:
            raise SystemExit(f"{name}: backends disagree ({r_py} vs {r_c})")
        print(f"{name:32s} {r_c:>10} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
