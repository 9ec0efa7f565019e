"""Gram points: solve theta(g_n) = n*pi, enumerate ranges, interval stats."""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DomainError, NonConvergenceError

TWO_PI = 2.0 * math.pi

_REL_TOL = 1e-12
_MAX_NEWTON = 50


@dataclass(frozen=True)
class GramPoint:
    """Index n and the solved ordinate t with theta(t) = n*pi."""

    n: int
    t: float
    residual: float


@dataclass(frozen=True)
class GramRange:
    """All Gram points with t_lo <= g_n <= t_hi, consecutive indices."""

    t_lo: float
    t_hi: float
    n_lo: int
    ordinates: np.ndarray
    residuals: np.ndarray

    def __len__(self):
        return len(self.ordinates)

    @property
    def indices(self):
        return np.arange(self.n_lo, self.n_lo + len(self.ordinates))

    @cached_property
    def points(self):
        return [
            GramPoint(n=self.n_lo + i, t=float(t), residual=float(r))
            for i, (t, r) in enumerate(zip(self.ordinates, self.residuals))
        ]

    def point(self, n):
        i = n - self.n_lo
        if not 0 <= i < len(self.ordinates):
            raise IndexError("Gram index %d outside range" % n)
        return GramPoint(n=n, t=float(self.ordinates[i]), residual=float(self.residuals[i]))


def _solve_indices(indices):
    """Newton-solve theta(t) = n*pi for an array of indices.

    Each element iterates until its own update drops below the relative
    tolerance and is then frozen, so results are independent of how indices
    are batched (cache blocks rely on this).
    """
    n = np.asarray(indices, dtype=np.float64)
    target = n * math.pi
    # leading-term inversion by three fixed-point rounds
    t = np.maximum(2.0 * TWO_PI, TWO_PI * (n + 2.0))
    for _ in range(3):
        t = (target + math.pi / 8.0 + 0.5 * t) / (0.5 * np.log(t / TWO_PI))
        t = np.maximum(t, 6.5)
    active = np.arange(t.size)
    for _ in range(_MAX_NEWTON):
        res = kernels.theta_block(t[active]) - target[active]
        step = res / kernels.theta_deriv_block(t[active])
        t[active] = np.maximum(t[active] - step, 6.5)
        done = np.abs(step) <= _REL_TOL * np.maximum(1.0, t[active])
        active = active[~done]
        if active.size == 0:
            break
    if active.size:
        bad = int(n[active[0]])
        raise NonConvergenceError(
            "Gram point Newton failed to converge for n=%d" % bad,
            last_iterate=float(t[active[0]]),
        )
    residuals = np.abs(kernels.theta_block(t) - target)
    return t, residuals


def gram_point(n):
    """The n-th Gram point (n >= 0), solved to relative 1e-12."""
    n = int(n)
    if n < 0:
        raise ValueError("Gram index must be >= 0, got %d" % n)
    t, res = _solve_indices(np.array([n], dtype=np.float64))
    return GramPoint(n=n, t=float(t[0]), residual=float(res[0]))


def gram_range(t_lo, t_hi):
    """All Gram points in [t_lo, t_hi] (t_lo > 2 pi), consecutive indices."""
    t_lo = float(t_lo)
    t_hi = float(t_hi)
    if t_lo <= TWO_PI:
        raise DomainError("Gram enumeration needs t_lo > 2*pi, got %g" % t_lo)
    if t_hi < t_lo:
        raise ValueError("empty range: t_hi < t_lo")
    th_lo = float(kernels.theta_block(np.array([t_lo]))[0]) / math.pi
    th_hi = float(kernels.theta_block(np.array([t_hi]))[0]) / math.pi
    # guard band of ~1e-9 keeps boundary Gram points included despite
    # floating-point noise in theta
    n_lo = max(0, int(math.ceil(th_lo - 1e-9)))
    n_hi = int(math.floor(th_hi + 1e-9))
    if n_hi < n_lo:
        empty = np.empty(0, dtype=np.float64)
        return GramRange(t_lo=t_lo, t_hi=t_hi, n_lo=n_lo, ordinates=empty, residuals=empty)
    t, res = _solve_indices(np.arange(n_lo, n_hi + 1, dtype=np.float64))
    return GramRange(t_lo=t_lo, t_hi=t_hi, n_lo=n_lo, ordinates=t, residuals=res)


@dataclass(frozen=True)
class IntervalLengthStats:
    max_len: float
    min_len: float
    argmax_n: int
    argmin_n: int


def interval_length_stats(grange):
    """Longest/shortest Gram interval in a range of >= 2 points."""
    if len(grange) < 2:
        raise ValueError("need at least 2 Gram points for interval stats")
    gaps = np.diff(grange.ordinates)
    imax = int(np.argmax(gaps))
    imin = int(np.argmin(gaps))
    return IntervalLengthStats(
        max_len=float(gaps[imax]),
        min_len=float(gaps[imin]),
        argmax_n=grange.n_lo + imax,
        argmin_n=grange.n_lo + imin,
    )
