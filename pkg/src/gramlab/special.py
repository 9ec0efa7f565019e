"""Riemann-Siegel theta and Z, plus the Euler-Maclaurin zeta oracle.

Z and the oracle are two independent evaluation routes for the same
analytic object (Z(t) = exp(i*theta(t)) * zeta(1/2 + it)); the test suite
holds them against each other.  Everything is plain 64-bit floating point;
accuracy budgets are stated per function.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _em, kernels
from .errors import DomainError

TWO_PI = 2.0 * math.pi

# Empirical envelope constant for the truncated remainder series: measured
# residuals against a 50-digit reference stay under 1e-4 * (t/2pi)^(-11/4);
# the factor 2 is headroom.  Euler-Maclaurin route: flat 2e-9 envelope.
_RS_REMAINDER_COEFF = 2e-4
_EM_REMAINDER = 2e-9


@dataclass(frozen=True)
class ThetaValue:
    """theta(t) with a bound on the truncated series tail."""

    t: float
    value: float
    truncation_bound: float


@dataclass(frozen=True)
class ZValue:
    """Z(t) with the main-sum length and a remainder magnitude bound."""

    t: float
    value: float
    term_count: int
    remainder_estimate: float


def _check_ordinate(t, name="t"):
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("%s must be finite, got %r" % (name, t))
    return t


def theta(t):
    """Riemann-Siegel theta(t) for t > 2 pi.

    Asymptotic series through the 7/(5760 t^3) term; the returned
    truncation_bound covers the omitted tail (the floating-point rounding
    floor, of order t*eps, is separate and smaller below ~1e7).
    """
    t = _check_ordinate(t)
    if t <= TWO_PI:
        raise DomainError("theta series needs t > 2*pi, got %g" % t)
    value = float(kernels.theta_block(np.array([t]))[0])
    bound = 1.2 * (31.0 / 80640.0) / t**5
    return ThetaValue(t=t, value=value, truncation_bound=bound)


def theta_deriv(t):
    """d/dt theta(t) = log(t/2pi)/2 - 1/(48 t^2) - ...; positive for t > 2 pi."""
    t = _check_ordinate(t)
    if t <= TWO_PI:
        raise DomainError("theta series needs t > 2*pi, got %g" % t)
    return float(kernels.theta_deriv_block(np.array([t]))[0])


def rs_term_count(t):
    """Main-sum length floor(sqrt(t / 2 pi)) of the Riemann-Siegel formula."""
    return int(math.sqrt(t / TWO_PI))


def z(t):
    """Riemann-Siegel Z(t) for t >= 10.

    Uses the main sum with C0..C4 remainder corrections for
    t >= kernels.RS_MIN_T and the Euler-Maclaurin route below, where the
    asymptotic expansion cannot reach 1e-6.  remainder_estimate bounds the
    formula truncation error of the route actually taken.
    """
    t = _check_ordinate(t)
    if t < 10.0:
        raise DomainError(
            "z needs t >= 10 (use zeta_euler_maclaurin below), got %g" % t
        )
    value = float(kernels.z_block(np.array([t]))[0])
    if t >= kernels.RS_MIN_T:
        est = _RS_REMAINDER_COEFF * (t / TWO_PI) ** -2.75
    else:
        est = _EM_REMAINDER
    return ZValue(t=t, value=value, term_count=rs_term_count(t), remainder_estimate=est)


def z_many(t):
    """Vectorized Z over an array of ordinates (each >= 10); values only."""
    t = np.asarray(t, dtype=np.float64)
    if t.size and float(t.min()) < 10.0:
        raise DomainError("z needs t >= 10 elementwise")
    return kernels.z_block(t)


def theta_many(t):
    """Vectorized theta over an array of ordinates (each > 2 pi); values only."""
    t = np.asarray(t, dtype=np.float64)
    if t.size and float(t.min()) <= TWO_PI:
        raise DomainError("theta series needs t > 2*pi elementwise")
    return kernels.theta_block(t)


def zeta_euler_maclaurin(sigma, t, terms):
    """zeta(sigma + it) by Euler-Maclaurin summation; the validation oracle.

    `terms` is the main-sum length; _em.em_term_count(t) gives a default
    adequate to ~1e-9 for |t| up to ~2e4.  Desk-scale oracle only
    (|t| < 1e6).
    """
    sigma = float(sigma)
    t = _check_ordinate(t)
    terms = int(terms)
    if terms < 10:
        raise ValueError("terms must be >= 10, got %d" % terms)
    if abs(t) >= 1e6:
        raise DomainError("oracle is restricted to |t| < 1e6, got %g" % t)
    if sigma == 1.0 and t == 0.0:
        raise DomainError("zeta has a pole at s = 1")
    return _em.zeta_em(sigma, t, terms)


def em_term_count(t):
    """Default Euler-Maclaurin main-sum length for ordinate t."""
    return _em.em_term_count(t)
