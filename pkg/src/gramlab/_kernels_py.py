"""NumPy fallback kernels.

Same surface as the Cython extension `_kernels_cy`: theta series, the
Riemann-Siegel main formula (valid for t >= 100) and batched bisection
refinement.  Selected by gramlab.kernels when the extension is missing or
GRAMLAB_BACKEND=python is set.
"""

import math

import numpy as np

from ._rs_coeffs import C0, C1, C2, C3, C4

TWO_PI = 2.0 * math.pi
PI_OVER_8 = math.pi / 8.0

BACKEND = "python"


def theta_block(t):
    """Riemann-Siegel theta on an array; asymptotic series, t > 2 pi."""
    t = np.asarray(t, dtype=np.float64)
    inv = 1.0 / t
    inv2 = inv * inv
    return (
        0.5 * t * np.log(t / TWO_PI)
        - 0.5 * t
        - PI_OVER_8
        + inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0))
    )


def theta_deriv_block(t):
    t = np.asarray(t, dtype=np.float64)
    inv2 = 1.0 / (t * t)
    return 0.5 * np.log(t / TWO_PI) - inv2 * (1.0 / 48.0 + inv2 * (7.0 / 1920.0))


def _clenshaw(coeffs, x):
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    two_x = 2.0 * x
    for c in reversed(coeffs):
        b1, b2 = two_x * b1 - b2 + c, b1
    return b1 - x * b2


def z_rs_block(t):
    """Riemann-Siegel Z(t) on an array, t >= 100.

    Main sum over n <= floor(sqrt(t/2pi)) plus the C0..C4 remainder terms;
    absolute error is below 5e-8 at t = 100 and falls like (t/2pi)^(-13/4).
    """
    t = np.asarray(t, dtype=np.float64)
    a = t / TWO_PI
    tau = np.sqrt(a)
    nterms = np.floor(tau).astype(np.int64)
    p = tau - nterms
    th = theta_block(t)

    total = np.zeros_like(t)
    for n in range(1, int(nterms.max()) + 1):
        if n == 1:
            total += np.cos(th)
            continue
        mask = nterms >= n
        total[mask] += np.cos(th[mask] - t[mask] * math.log(n)) * (n ** -0.5)
    total *= 2.0

    x = 2.0 * p - 1.0
    it = 1.0 / tau
    corr = _clenshaw(C0, x) + it * (
        _clenshaw(C1, x)
        + it * (_clenshaw(C2, x) + it * (_clenshaw(C3, x) + it * _clenshaw(C4, x)))
    )
    sign = np.where(nterms % 2 == 1, 1.0, -1.0)
    return total + sign * corr / np.sqrt(tau)


def refine_rs_brackets(lo, hi, tol):
    """Bisect sign-change brackets of Z to width <= tol (all lo >= 100).

    Returns refined (lo, hi) arrays.  Pure midpoint bisection so results
    do not depend on how brackets are batched.
    """
    lo = np.array(lo, dtype=np.float64, copy=True)
    hi = np.array(hi, dtype=np.float64, copy=True)
    if lo.size == 0:
        return lo, hi
    s_lo = np.sign(z_rs_block(lo))
    max_iter = int(math.ceil(math.log2(max((hi - lo).max(), tol) / tol))) + 2
    for _ in range(max_iter):
        active = np.nonzero(hi - lo > tol)[0]
        if active.size == 0:
            break
        mid = 0.5 * (lo[active] + hi[active])
        s_mid = np.sign(z_rs_block(mid))
        same = s_mid * s_lo[active] > 0
        lo[active[same]] = mid[same]
        hi[active[~same]] = mid[~same]
    return lo, hi
