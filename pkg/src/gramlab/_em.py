"""Euler-Maclaurin evaluation of zeta(sigma + it).

This is the slow, independent route used to cross-validate the
Riemann-Siegel kernels and to evaluate Z(t) below RS_MIN_T, where the
asymptotic remainder expansion is no longer accurate to 1e-7.  It is
deliberately kept free of any Riemann-Siegel machinery.
"""

import math

import numpy as np

# B_2 .. B_24; twelve correction terms keep the tail below 1e-10 once the
# prime sum length exceeds ~2.5 * t / (2 pi).
_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
)

_FACT2K = tuple(float(math.factorial(2 * k)) for k in range(1, 13))


def em_term_count(t):
    """Main-sum length giving ~1e-9 accuracy for ordinates up to ~2e4."""
    return int(max(16.0, 2.5 * abs(t) / (2.0 * np.pi) + 16.0))


def zeta_em(sigma, t, terms):
    """zeta(sigma + it) by Euler-Maclaurin summation with `terms` main terms.

    Deterministic for fixed inputs.  Accuracy degrades once
    terms < ~2.5 * t / (2 pi); use em_term_count for an adequate default.
    """
    s = complex(sigma, t)
    n = np.arange(1, terms, dtype=np.float64)
    total = np.sum(n ** (-s))
    big_n = float(terms)
    total += big_n ** (1.0 - s) / (s - 1.0) + 0.5 * big_n ** (-s)
    poch = s
    npow = big_n ** (-s - 1.0)
    inv_n2 = 1.0 / (big_n * big_n)
    for k in range(12):
        total += _BERNOULLI[k] / _FACT2K[k] * poch * npow
        poch *= (s + (2 * k + 1)) * (s + (2 * k + 2))
        npow *= inv_n2
    return complex(total)


def zeta_half_line(t):
    """Vectorized zeta(1/2 + it) for an array of ordinates.

    Per-element term counts follow em_term_count, so each element's result
    is independent of how the batch was assembled.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty(t.shape, dtype=np.complex128)
    counts = np.maximum(16, (2.5 * np.abs(t) / (2.0 * np.pi) + 16.0).astype(np.int64))
    for terms in np.unique(counts):
        idx = np.nonzero(counts == terms)[0]
        tt = t[idx]
        s = 0.5 + 1j * tt
        n = np.arange(1, terms, dtype=np.float64)
        # sum_n n^{-1/2} * exp(-it ln n), built as an outer product
        phase = np.exp(-1j * np.outer(tt, np.log(n)))
        vals = phase @ (n ** -0.5)
        big_n = float(terms)
        vals = vals + big_n ** (1.0 - s) / (s - 1.0) + 0.5 * big_n ** (-s)
        poch = s.copy()
        npow = big_n ** (-s - 1.0)
        inv_n2 = 1.0 / (big_n * big_n)
        for k in range(12):
            vals = vals + _BERNOULLI[k] / _FACT2K[k] * poch * npow
            poch = poch * (s + (2 * k + 1)) * (s + (2 * k + 2))
            npow = npow * inv_n2
        out[idx] = vals
    return out
