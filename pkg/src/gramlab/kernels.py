"""Kernel backend selection and the hybrid Z evaluator.

The hot loops (theta, the Riemann-Siegel main sum, bracket bisection) live
in a compiled Cython extension when it is available; otherwise a NumPy
implementation with the same surface is used.  Set GRAMLAB_BACKEND=python
to force the fallback (used by the benchmark and by differential tests).

Z(t) itself is a two-regime hybrid:

* t >= RS_MIN_T: Riemann-Siegel main sum plus C0..C4 remainder terms,
  absolute error < 5e-8 at the switch point and falling fast with t.
* 10 <= t < RS_MIN_T: Re(exp(i theta) * zeta(1/2 + it)) with zeta from the
  Euler-Maclaurin route, good to ~1e-9.  The asymptotic remainder series
  cannot reach 1e-6 accuracy this low.
"""

import os

import numpy as np

from . import _em
from . import _kernels_py

# asymptotic remainder series is accurate enough (<5e-8) from here up
RS_MIN_T = 100.0

if os.environ.get("GRAMLAB_BACKEND", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

theta_block = _impl.theta_block
theta_deriv_block = _impl.theta_deriv_block
z_rs_block = _impl.z_rs_block


def z_block(t):
    """Z(t) for an array of ordinates, t >= 10 elementwise."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty_like(t)
    high = t >= RS_MIN_T
    if high.any():
        out[high] = z_rs_block(t[high])
    if not high.all():
        low = ~high
        tl = t[low]
        w = np.exp(1j * theta_block(tl)) * _em.zeta_half_line(tl)
        out[low] = w.real
    return out


def refine_brackets(lo, hi, tol):
    """Bisect Z sign-change brackets to width <= tol.

    Brackets entirely inside the Riemann-Siegel regime go through the
    backend; the few below RS_MIN_T use the hybrid evaluator directly.
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
    hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
    out_lo = np.array(lo, copy=True)
    out_hi = np.array(hi, copy=True)
    high = lo >= RS_MIN_T
    if high.any():
        rlo, rhi = _impl.refine_rs_brackets(lo[high], hi[high], tol)
        out_lo[high] = rlo
        out_hi[high] = rhi
    low = np.nonzero(~high)[0]
    if low.size:
        llo = out_lo[low]
        lhi = out_hi[low]
        s_lo = np.sign(z_block(llo))
        max_iter = int(np.ceil(np.log2(max((lhi - llo).max(), tol) / tol))) + 2
        for _ in range(max_iter):
            active = np.nonzero(lhi - llo > tol)[0]
            if active.size == 0:
                break
            mid = 0.5 * (llo[active] + lhi[active])
            s_mid = np.sign(z_block(mid))
            same = s_mid * s_lo[active] > 0
            llo[active[same]] = mid[same]
            lhi[active[~same]] = mid[~same]
        out_lo[low] = llo
        out_hi[low] = lhi
    return out_lo, out_hi
