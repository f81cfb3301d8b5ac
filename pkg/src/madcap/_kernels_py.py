"""Pure numpy implementation of the entropy-form kernels.

Same contract as the compiled ``_kernels`` module; selected automatically
when the extension is unavailable.
"""
import numpy as np

CLAMP = 1e-12
ETA = 0
H2REL = 1


def _eta(x):
    out = np.zeros_like(x)
    m = x > CLAMP
    out[m] = -x[m] * np.log2(x[m])
    return out


def _h2rel(x):
    x = np.clip(x, 0.0, 1.0)
    s = np.sqrt(1.0 - x * x)
    return _eta(0.5 * (1.0 + s)) + _eta(0.5 * (1.0 - s))


def eval_forms(points, coef, weight, kind):
    """Evaluate sum_t weight[t] * phi_t(points @ coef[t, :4] + coef[t, 4]).

    ``points`` has shape (N, 4) holding (alpha, beta, gamma, delta).
    """
    points = np.asarray(points, dtype=np.float64)
    args = points @ coef[:, :4].T + coef[:, 4]
    out = np.zeros(points.shape[0])
    for t in range(coef.shape[0]):
        f = _h2rel if kind[t] == H2REL else _eta
        out += weight[t] * f(args[:, t])
    return out


def simplex_grid(n, free):
    """All lattice points (i, j, l)/n with i + j + l <= n, in enumeration order.

    ``free`` masks which of (alpha, gamma, delta) may be nonzero.
    """
    rng = [np.arange(n + 1) if free[c] else np.zeros(1, dtype=np.int64) for c in range(3)]
    i, j, l = np.meshgrid(*rng, indexing="ij")
    i, j, l = i.ravel(), j.ravel(), l.ravel()
    keep = i + j + l <= n
    i, j, l = i[keep], j[keep], l[keep]
    pts = np.empty((i.size, 4))
    pts[:, 0] = i / n
    pts[:, 1] = (n - i - j - l) / (6.0 * n)
    pts[:, 2] = j / n
    pts[:, 3] = l / n
    return pts


def grid_top(coef, weight, kind, n, free, k):
    """Best ``k`` lattice points of step 1/n, ties broken by enumeration order."""
    pts = simplex_grid(n, free)
    vals = eval_forms(pts, coef, weight, kind)
    order = np.argsort(-vals, kind="stable")[:k]
    return vals[order].copy(), pts[order].copy()
