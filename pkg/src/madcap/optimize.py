"""Deterministic maximization over the diagonal family.

A coarse lattice scan picks starting points; a Nelder-Mead descent whose
trial points are projected back onto {x >= 0, sum(x) <= 1} refines each
of them.  No randomness is involved, so repeated runs are identical.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .diagonal import DiagonalState
from .forms import EntropyForm

COARSE_STEP = 0.02
N_STARTS = 5


def project_feasible(x) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum(x) <= 1}."""
    x = np.asarray(x, dtype=float)
    y = np.maximum(x, 0.0)
    if y.sum() <= 1.0:
        return y
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, x.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    return np.maximum(x - css[rho] / (rho + 1.0), 0.0)


def nelder_mead_max(f, x0, step=COARSE_STEP, xatol=1e-11, fatol=1e-14, maxiter=4000):
    """Maximize ``f`` over the projected feasible set starting at ``x0``."""
    n = len(x0)
    pts = [project_feasible(x0)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        cand = pts[0] + e
        if cand.sum() > 1.0:
            cand = pts[0] - e
        pts.append(project_feasible(cand))
    vals = [f(p) for p in pts]
    for _ in range(maxiter):
        order = np.argsort(vals, kind="stable")[::-1]
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        spread = max(np.abs(p - pts[0]).max() for p in pts[1:])
        if spread <= xatol and vals[0] - vals[-1] <= fatol:
            break
        centroid = np.mean(pts[:-1], axis=0)
        xr = project_feasible(centroid + (centroid - pts[-1]))
        fr = f(xr)
        if fr > vals[0]:
            xe = project_feasible(centroid + 2.0 * (centroid - pts[-1]))
            fe = f(xe)
            pts[-1], vals[-1] = (xe, fe) if fe > fr else (xr, fr)
            continue
        if fr > vals[-2]:
            pts[-1], vals[-1] = xr, fr
            continue
        if fr > vals[-1]:
            xc = project_feasible(centroid + 0.5 * (xr - centroid))
        else:
            xc = project_feasible(centroid + 0.5 * (pts[-1] - centroid))
        fc = f(xc)
        if fc > min(fr, vals[-1]):
            pts[-1], vals[-1] = xc, fc
            continue
        for i in range(1, n + 1):
            pts[i] = project_feasible(pts[0] + 0.5 * (pts[i] - pts[0]))
            vals[i] = f(pts[i])
        if spread <= xatol:
            break
    best = int(np.argmax(vals))
    return vals[best], pts[best]


def _as_points(free, x):
    a = np.zeros(3)
    a[np.array(free)] = x
    return a


def maximize_simplex(f, tol: float = 1e-12, free=None):
    """(max value, DiagonalState) of ``f`` over alpha + 6 beta + gamma + delta = 1.

    ``f`` is either an EntropyForm (evaluated by the compiled kernel) or a
    plain callable taking a DiagonalState.  ``free`` masks which of
    (alpha, gamma, delta) may vary; it defaults to the form's own mask.
    """
    if free is None:
        free = getattr(f, "free", (True, True, True))
    free = tuple(bool(x) for x in free)
    m = sum(free)
    n = int(round(1.0 / COARSE_STEP))
    if isinstance(f, EntropyForm):
        _, starts = kernels.grid_top(f.coef, f.weight, f.kind, n, np.array(free, dtype=np.intc), N_STARTS)

        def point_value(agd):
            b = (1.0 - agd.sum()) / 6.0
            return float(kernels.eval_forms(np.array([[agd[0], max(b, 0.0), agd[1], agd[2]]]),
                                            f.coef, f.weight, f.kind)[0])
    else:
        grid = kernels.simplex_grid(n, free)

        def point_value(agd):
            return float(f(DiagonalState.from_free(*agd)))

        vals = np.array([point_value(p[[0, 2, 3]]) for p in grid])
        starts = grid[np.argsort(-vals, kind="stable")[:N_STARTS]]

    def reduced(x):
        return point_value(_as_points(free, x))

    best_v, best_x = -np.inf, None
    for s in starts:
        x0 = s[[0, 2, 3]][np.array(free)]
        if m == 0:
            v, x = reduced(x0), x0
        else:
            v, x = nelder_mead_max(reduced, x0, xatol=max(tol, 1e-14))
            # restart from the converged point until no further gain
            for step in (0.005, 0.001):
                v2, x2 = nelder_mead_max(reduced, x, step=step, xatol=max(tol, 1e-14))
                if v2 <= v + 1e-15:
                    break
                v, x = v2, x2
        if v > best_v:
            best_v, best_x = v, x
    agd = _as_points(free, best_x)
    return float(best_v), DiagonalState.from_free(*agd)
