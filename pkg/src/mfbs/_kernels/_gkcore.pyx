# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive Gauss-Kronrod integration for the tagged density kernels.

Mirrors the Python engine in mfbs.quadrature: same G7/K15 panel rule, same
worst-panel bisection, same convergence test.  The rule constants are
injected once at import time via set_rule() so both backends share a single
source of truth.
"""

from libc.math cimport exp, sin, fabs, isfinite, M_PI, NAN
from libc.stdlib cimport malloc, free

import numpy as np

cdef double XK[15]
cdef double WK[15]
cdef double WGE[15]
cdef bint RULE_READY = False

DEF CODE_GAUSS = 0
DEF CODE_GAUSS_SHIFT = 1
DEF CODE_GAUSS_SCALED = 2
DEF CODE_BRACKET_GAUSS = 3
DEF CODE_WELL = 4


def set_rule(double[::1] nodes, double[::1] wk, double[::1] wge):
    global RULE_READY
    if nodes.shape[0] != 15 or wk.shape[0] != 15 or wge.shape[0] != 15:
        raise ValueError("rule arrays must have length 15")
    cdef int i
    for i in range(15):
        XK[i] = nodes[i]
        WK[i] = wk[i]
        WGE[i] = wge[i]
    RULE_READY = True


cdef inline double _kernel(int code, const double* p, int npar, double x) noexcept nogil:
    cdef double v, b
    cdef int j
    if code == CODE_GAUSS:
        return exp(-0.5 * x * x)
    elif code == CODE_GAUSS_SHIFT:
        v = x + p[0]
        return exp(-0.5 * v * v)
    elif code == CODE_GAUSS_SCALED:
        return exp(-0.5 * p[0] * x * x)
    elif code == CODE_BRACKET_GAUSS:
        b = p[npar - 1]
        for j in range(npar - 2, -1, -1):
            b = b * x + p[j]
        return b * b * exp(-0.5 * x * x)
    elif code == CODE_WELL:
        v = sin(M_PI * (x + p[0]) / (2.0 * p[0]))
        return v * v
    return NAN


cdef inline int _panel(int code, const double* p, int npar, int power,
                       double a, double b,
                       double* val, double* err, double* bad) noexcept nogil:
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double ik = 0.0
    cdef double ig = 0.0
    cdef double x, f
    cdef int i, k
    for i in range(15):
        x = c + h * XK[i]
        f = _kernel(code, p, npar, x)
        for k in range(power):
            f = f * x
        if not isfinite(f):
            bad[0] = x
            return 2
        ik += WK[i] * f
        ig += WGE[i] * f
    val[0] = h * ik
    err[0] = fabs(h * (ik - ig))
    return 0


def kernel_values(int code, double[::1] params, double[::1] xs):
    cdef Py_ssize_t n = xs.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef const double* p = &params[0] if params.shape[0] > 0 else NULL
    cdef int npar = <int>params.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        ov[i] = _kernel(code, p, npar, xs[i])
    return out


def integrate_kernel(int code, double[::1] params, int power,
                     double lo, double hi,
                     double abs_tol, double rel_tol, int max_subdivisions):
    """Returns (value, error_bound, status, bad_abscissa).

    status: 0 converged, 1 subdivision budget exhausted, 2 non-finite value.
    """
    if not RULE_READY:
        raise RuntimeError("quadrature rule not initialised; call set_rule first")
    cdef int cap = max_subdivisions + 2
    cdef double* pa = <double*>malloc(4 * cap * sizeof(double))
    if pa == NULL:
        raise MemoryError()
    cdef double* pb = pa + cap
    cdef double* pv = pa + 2 * cap
    cdef double* pe = pa + 3 * cap
    cdef const double* p = &params[0] if params.shape[0] > 0 else NULL
    cdef int npar = <int>params.shape[0]
    cdef int n = 0, it, worst, i, st
    cdef double total, toterr, tol, mid, bad = 0.0
    cdef double v1 = 0.0, e1 = 0.0

    st = _panel(code, p, npar, power, lo, hi, &v1, &e1, &bad)
    if st != 0:
        free(pa)
        return 0.0, 0.0, st, bad
    pa[0] = lo; pb[0] = hi; pv[0] = v1; pe[0] = e1
    n = 1
    try:
        for it in range(max_subdivisions + 1):
            total = 0.0
            toterr = 0.0
            for i in range(n):
                total += pv[i]
                toterr += pe[i]
            tol = abs_tol if abs_tol > rel_tol * fabs(total) else rel_tol * fabs(total)
            if toterr <= tol:
                return total, toterr, 0, 0.0
            if it == max_subdivisions:
                break
            worst = 0
            for i in range(1, n):
                if pe[i] > pe[worst]:
                    worst = i
            mid = 0.5 * (pa[worst] + pb[worst])
            # left child replaces worst slot; right child appended
            st = _panel(code, p, npar, power, pa[worst], mid, &v1, &e1, &bad)
            if st != 0:
                return total, toterr, st, bad
            pv[worst] = v1; pe[worst] = e1
            st = _panel(code, p, npar, power, mid, pb[worst], &pv[n], &pe[n], &bad)
            if st != 0:
                return total, toterr, st, bad
            pa[n] = mid; pb[n] = pb[worst]
            pb[worst] = mid
            n += 1
        return total, toterr, 1, 0.0
    finally:
        free(pa)
