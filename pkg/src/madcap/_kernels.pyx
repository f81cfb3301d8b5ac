# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled entropy-form kernels (see _kernels_py for the reference version)."""
import numpy as np
from libc.math cimport log2, sqrt

cdef double CLAMP = 1e-12


cdef inline double _eta(double x) noexcept nogil:
    if x <= CLAMP:
        return 0.0
    return -x * log2(x)


cdef inline double _h2rel(double x) noexcept nogil:
    cdef double s
    if x < 0.0:
        x = 0.0
    elif x > 1.0:
        x = 1.0
    s = sqrt(1.0 - x * x)
    return _eta(0.5 * (1.0 + s)) + _eta(0.5 * (1.0 - s))


cdef inline double _point(double a, double b, double g, double d,
                          const double[:, ::1] coef, const double[::1] weight,
                          const int[::1] kind) noexcept nogil:
    cdef Py_ssize_t t
    cdef double acc = 0.0, x
    for t in range(coef.shape[0]):
        x = coef[t, 0] * a + coef[t, 1] * b + coef[t, 2] * g + coef[t, 3] * d + coef[t, 4]
        if kind[t] == 1:
            acc += weight[t] * _h2rel(x)
        else:
            acc += weight[t] * _eta(x)
    return acc


def eval_forms(points, coef, weight, kind):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] c = np.ascontiguousarray(coef, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weight, dtype=np.float64)
    cdef const int[::1] k = np.ascontiguousarray(kind, dtype=np.intc)
    out = np.empty(p.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(p.shape[0]):
            o[i] = _point(p[i, 0], p[i, 1], p[i, 2], p[i, 3], c, w, k)
    return out


def grid_top(coef, weight, kind, int n, free, int k):
    cdef const double[:, ::1] c = np.ascontiguousarray(coef, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weight, dtype=np.float64)
    cdef const int[::1] kd = np.ascontiguousarray(kind, dtype=np.intc)
    cdef int na = n if free[0] else 0
    cdef int ng = n if free[1] else 0
    cdef int nd = n if free[2] else 0
    vals = np.full(k, -np.inf)
    pts = np.zeros((k, 4))
    cdef double[::1] v = vals
    cdef double[:, ::1] q = pts
    cdef int i, j, l, m, filled = 0
    cdef double a, b, g, d, f
    with nogil:
        for i in range(na + 1):
            for j in range(min(ng, n - i) + 1):
                for l in range(min(nd, n - i - j) + 1):
                    a = i / <double>n
                    g = j / <double>n
                    d = l / <double>n
                    b = (n - i - j - l) / (6.0 * n)
                    f = _point(a, b, g, d, c, w, kd)
                    if filled == k and not (f > v[k - 1]):
                        continue
                    m = filled if filled < k else k - 1
                    while m > 0 and f > v[m - 1]:
                        v[m] = v[m - 1]
                        q[m, 0] = q[m - 1, 0]
                        q[m, 1] = q[m - 1, 1]
                        q[m, 2] = q[m - 1, 2]
                        q[m, 3] = q[m - 1, 3]
                        m -= 1
                    v[m] = f
                    q[m, 0] = a
                    q[m, 1] = b
                    q[m, 2] = g
                    q[m, 3] = d
                    if filled < k:
                        filled += 1
    return vals[:filled].copy(), pts[:filled].copy()
