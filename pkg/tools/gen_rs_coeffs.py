#!/usr/bin/env python3
"""Regenerate src/gramlab/_rs_coeffs.py (Chebyshev tables for the
Riemann-Siegel remainder coefficient functions C0..C4).

Each C_k is a combination of derivatives of the cos-ratio function

    psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p),   p in [0, 1),

evaluated here with mpmath at 50 digits and projected onto Chebyshev
series in x = 2p - 1.  The runtime package evaluates the frozen tables
with Clenshaw recurrence; mpmath is needed only to run this script.

The psi-derivative combinations were cross-checked against high-precision
values of Z(t): with all five tables the remainder of the two-line formula
decays like (t/2pi)^(-13/4) (see tests/test_special.py).

Usage: python3 tools/gen_rs_coeffs.py > src/gramlab/_rs_coeffs.py
"""

import mpmath as mp

mp.mp.dps = 50

PI = mp.pi
DEGREE = 56


def psi(p):
    return mp.cos(2 * PI * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * PI * p)


def c_funcs(p):
    d = [mp.diff(psi, p, k) for k in range(13)]
    return [
        d[0],
        -d[3] / (96 * PI**2),
        d[2] / (64 * PI**2) + d[6] / (18432 * PI**4),
        -d[1] / (64 * PI**2) - d[5] / (3840 * PI**4) - d[9] / (5308416 * PI**6),
        d[0] / (128 * PI**2) + 19 * d[4] / (24576 * PI**4)
        + 11 * d[8] / (5898240 * PI**6) + d[12] / (2038431744 * PI**8),
    ]


def cheb_coeffs(vals, n):
    # type-I Chebyshev projection from values at the n+1 extrema nodes
    out = []
    for j in range(n + 1):
        s = mp.mpf(0)
        for k in range(n + 1):
            w = mp.mpf(1) if 0 < k < n else mp.mpf('0.5')
            s += w * vals[k] * mp.cos(PI * j * k / n)
        c = 2 * s / n
        out.append(c)
    return out


def main():
    nodes = [(1 + mp.cos(PI * k / DEGREE)) / 2 for k in range(DEGREE + 1)]  # p in [0,1]
    table = [c_funcs(p) for p in nodes]
    print('"""Chebyshev tables for the Riemann-Siegel remainder terms C0..C4.')
    print()
    print('Generated by tools/gen_rs_coeffs.py; do not edit by hand.')
    print('Series variable is x = 2*p - 1 with p = frac(sqrt(t / 2pi)).')
    print('"""')
    print()
    for i in range(5):
        vals = [row[i] for row in table]
        coeffs = cheb_coeffs(vals, DEGREE)
        # halve the j=0 term so Clenshaw can treat all terms uniformly
        coeffs[0] = coeffs[0] / 2
        # parity of the C_k forces every other coefficient to vanish
        coeffs = [c if abs(c) >= mp.mpf('1e-18') else mp.mpf(0) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        print('C%d = (' % i)
        for c in coeffs:
            print('    %s,' % mp.nstr(c, 18, strip_zeros=False))
        print(')')
        print()


if __name__ == '__main__':
    main()
