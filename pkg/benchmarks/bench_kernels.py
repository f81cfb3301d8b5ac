"""Compare the compiled and numpy entropy-form kernels.

Usage: python benchmarks/bench_kernels.py [--n 200] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from madcap import _kernels_py, forms
from madcap.madfamily import DecayParams

try:
    from madcap import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200, help="grid divisions per unit (200 means step 0.005)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    form = forms.mutual_info_form("full", DecayParams(0.2, 0.3, 0.4))
    free = np.ones(3, dtype=np.intc)
    pts = _kernels_py.simplex_grid(args.n, (True, True, True))
    print(f"{pts.shape[0]} grid points, {form.coef.shape[0]} entropy terms")

    backends = [("python", _kernels_py)] + ([("cython", _kernels_c)] if _kernels_c else [])
    times = {}
    for name, mod in backends:
        t_eval = min(timeit.repeat(lambda: mod.eval_forms(pts, form.coef, form.weight, form.kind),
                                   number=1, repeat=args.repeat))
        t_top = min(timeit.repeat(lambda: mod.grid_top(form.coef, form.weight, form.kind, args.n, free, 5),
                                  number=1, repeat=args.repeat))
        times[name] = (t_eval, t_top)
        print(f"{name:<7} eval_forms {t_eval * 1e3:8.1f} ms   grid_top {t_top * 1e3:8.1f} ms")
    if _kernels_c is None:
        print("compiled kernel not built; only the numpy backend was timed")
        return
    a = _kernels_py.grid_top(form.coef, form.weight, form.kind, args.n, free, 5)
    b = _kernels_c.grid_top(form.coef, form.weight, form.kind, args.n, free, 5)
    print(f"max top-5 value difference {np.abs(a[0] - b[0]).max():.1e}")
    (pe, pt), (ce, ct) = times["python"], times["cython"]
    print(f"speedup eval_forms x{pe / ce:.1f}   grid_top x{pt / ct:.1f}")


if __name__ == "__main__":
    main()
