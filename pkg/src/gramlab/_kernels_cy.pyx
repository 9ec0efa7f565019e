# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: theta series, Riemann-Siegel main formula, bisection.

Same surface as _kernels_py; selected by gramlab.kernels when importable.
"""

from libc.math cimport cos, floor, log, log2, ceil, sqrt, M_PI

import numpy as np

from ._rs_coeffs import C0, C1, C2, C3, C4

BACKEND = "cython"

cdef double TWO_PI = 2.0 * M_PI
cdef double PI_OVER_8 = M_PI / 8.0

# remainder coefficient tables, frozen at module init
cdef double[64] _C0, _C1, _C2, _C3, _C4
cdef int _N0 = len(C0), _N1 = len(C1), _N2 = len(C2), _N3 = len(C3), _N4 = len(C4)
cdef int _i
for _i in range(_N0):
    _C0[_i] = C0[_i]
for _i in range(_N1):
    _C1[_i] = C1[_i]
for _i in range(_N2):
    _C2[_i] = C2[_i]
for _i in range(_N3):
    _C3[_i] = C3[_i]
for _i in range(_N4):
    _C4[_i] = C4[_i]


cdef inline double _theta(double t) nogil:
    cdef double inv = 1.0 / t
    cdef double inv2 = inv * inv
    return (0.5 * t * log(t / TWO_PI) - 0.5 * t - PI_OVER_8
            + inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0)))


cdef inline double _theta_deriv(double t) nogil:
    cdef double inv2 = 1.0 / (t * t)
    return 0.5 * log(t / TWO_PI) - inv2 * (1.0 / 48.0 + inv2 * (7.0 / 1920.0))


cdef inline double _clenshaw(double* c, int n, double x) nogil:
    cdef double b1 = 0.0, b2 = 0.0, tmp
    cdef double two_x = 2.0 * x
    cdef int i
    for i in range(n - 1, -1, -1):
        tmp = two_x * b1 - b2 + c[i]
        b2 = b1
        b1 = tmp
    return b1 - x * b2


cdef inline double _z_rs_one(double t, double* logn, double* rsqrtn) nogil:
    """Z(t) for t >= 100; logn/rsqrtn must cover n = 1..floor(sqrt(t/2pi))."""
    cdef double a = t / TWO_PI
    cdef double tau = sqrt(a)
    cdef int nterms = <int>floor(tau)
    cdef double p = tau - nterms
    cdef double th = _theta(t)
    cdef double total = 0.0
    cdef int n
    for n in range(1, nterms + 1):
        total += cos(th - t * logn[n]) * rsqrtn[n]
    total *= 2.0
    cdef double x = 2.0 * p - 1.0
    cdef double it = 1.0 / tau
    cdef double corr = _clenshaw(_C0, _N0, x) + it * (
        _clenshaw(_C1, _N1, x) + it * (
            _clenshaw(_C2, _N2, x) + it * (
                _clenshaw(_C3, _N3, x) + it * _clenshaw(_C4, _N4, x))))
    cdef double sign = 1.0 if nterms % 2 == 1 else -1.0
    return total + sign * corr / sqrt(tau)


def _term_tables(double t_max):
    """log n and 1/sqrt(n) for n = 0..floor(sqrt(t_max/2pi)) inclusive."""
    n_max = int(floor(sqrt(t_max / TWO_PI))) + 1
    n = np.arange(n_max + 1, dtype=np.float64)
    n[0] = 1.0
    return np.log(n), 1.0 / np.sqrt(n)


def theta_block(t):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t.ravel()
    cdef double[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = tv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _theta(tv[i])
    return out


def theta_deriv_block(t):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t.ravel()
    cdef double[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = tv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _theta_deriv(tv[i])
    return out


def z_rs_block(t):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t.ravel()
    cdef double[::1] ov = out.ravel()
    cdef Py_ssize_t i, n = tv.shape[0]
    if n == 0:
        return out
    logn_arr, rsq_arr = _term_tables(float(t.max()))
    cdef double[::1] logn = logn_arr
    cdef double[::1] rsq = rsq_arr
    with nogil:
        for i in range(n):
            ov[i] = _z_rs_one(tv[i], &logn[0], &rsq[0])
    return out


def refine_rs_brackets(lo, hi, double tol):
    """Bisect Z sign-change brackets (lo >= 100) to width <= tol."""
    lo = np.array(lo, dtype=np.float64, copy=True)
    hi = np.array(hi, dtype=np.float64, copy=True)
    cdef double[::1] lov = lo.ravel()
    cdef double[::1] hiv = hi.ravel()
    cdef Py_ssize_t i, n = lov.shape[0]
    if n == 0:
        return lo, hi
    logn_arr, rsq_arr = _term_tables(float(hi.max()))
    cdef double[::1] logn = logn_arr
    cdef double[::1] rsq = rsq_arr
    cdef double a, b, mid, va, vm
    cdef int it, max_iter
    with nogil:
        for i in range(n):
            a = lov[i]
            b = hiv[i]
            va = _z_rs_one(a, &logn[0], &rsq[0])
            max_iter = <int>ceil(log2((b - a) / tol if b - a > tol else 1.0)) + 2
            for it in range(max_iter):
                if b - a <= tol:
                    break
                mid = 0.5 * (a + b)
                vm = _z_rs_one(mid, &logn[0], &rsq[0])
                if vm * va > 0.0:
                    a = mid
                    va = vm
                else:
                    b = mid
            lov[i] = a
            hiv[i] = b
    return lo, hi
