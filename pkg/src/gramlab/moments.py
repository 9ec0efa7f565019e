"""The argument-count step function S(t) and its shifted moments.

S(t) jumps by +1 at every zero ordinate and decreases smoothly like
-theta(t)/pi in between, so |S(t+h) - S(t)|^{2m} is piecewise smooth with
breakpoints exactly at {zeros} union {zeros - h}.  Integrals are computed
piece by piece with a fixed 8-point Gauss-Legendre rule; the embedded
4-point value supplies the quadrature error estimate.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import AuditError, ResourceError

TWO_PI = 2.0 * math.pi

_GL8_X, _GL8_W = np.polynomial.legendre.leggauss(8)
_GL4_X, _GL4_W = np.polynomial.legendre.leggauss(4)


def _default_phase(t):
    """theta(t)/pi for arrays; the smooth part of S."""
    return kernels.theta_block(np.asarray(t, dtype=np.float64)) / math.pi


@dataclass(frozen=True)
class SFunction:
    """S(t) over [t_lo, t_hi] built from a jump list.

    s_offset is the integer level at the anchor ordinate (a good Gram
    point for census-built instances, where anchor_phase is the exact Gram
    index).  A custom `phase` (theta/pi surrogate) supports synthetic
    instances with hand-computable integrals.
    """

    zeros: np.ndarray
    t_lo: float
    t_hi: float
    s_offset: int = 0
    anchor_t: float = None
    anchor_phase: float = None
    phase: Optional[Callable] = None

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=np.float64)
        object.__setattr__(self, "zeros", z)
        if self.anchor_t is None:
            object.__setattr__(self, "anchor_t", float(self.t_lo))
        if self.anchor_phase is None:
            object.__setattr__(
                self, "anchor_phase", float(self._phase_of(np.array([self.anchor_t]))[0])
            )

    def _phase_of(self, t):
        fn = self.phase if self.phase is not None else _default_phase
        return np.asarray(fn(t), dtype=np.float64)

    def _eval(self, t):
        t = np.asarray(t, dtype=np.float64)
        cnt = np.searchsorted(self.zeros, t, side="right") - np.searchsorted(
            self.zeros, self.anchor_t, side="right"
        )
        return self.s_offset + cnt - (self._phase_of(t) - self.anchor_phase)


def build_s(census, s_offset=0):
    """SFunction over a census range, anchored at the audit's good anchor.

    Refuses a failed audit: a missed zero would mis-step S everywhere
    past it.
    """
    if not census.audit_passed:
        raise AuditError("cannot build S from a census that failed its audit")
    if census.anchor_n >= 0:
        anchor_t = census.anchor_t
        anchor_phase = float(census.anchor_n)
    else:
        anchor_t = census.t_lo
        anchor_phase = None  # computed from theta in __post_init__
    return SFunction(
        zeros=census.zeros,
        t_lo=census.t_lo,
        t_hi=census.t_hi,
        s_offset=int(s_offset),
        anchor_t=anchor_t,
        anchor_phase=anchor_phase,
    )


def eval_s(sf, t):
    """S(t); right-continuous at jumps; t must lie in the domain."""
    arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if arr.size and (arr.min() < sf.t_lo or arr.max() > sf.t_hi):
        raise ValueError("ordinate outside S domain [%g, %g]" % (sf.t_lo, sf.t_hi))
    out = sf._eval(arr)
    return float(out[0]) if np.isscalar(t) or np.ndim(t) == 0 else out


@dataclass(frozen=True)
class MomentEstimate:
    """Value of the 2m-th shifted moment integral over [t_lo, t_hi]."""

    t_lo: float
    t_hi: float
    h: float
    m: int
    value: float
    quad_error: float
    leading_term: float


def leading_term(T, h):
    """First-order size of the shifted second moment: T log(3 + h log T)/pi^2."""
    T = float(T)
    h = float(h)
    if T <= math.e:
        raise ValueError("leading term needs T > e, got %g" % T)
    if h < 0.0:
        raise ValueError("shift h must be >= 0, got %g" % h)
    return T * math.log(3.0 + h * math.log(T)) / math.pi**2


def shifted_moment(sf, h, m, t_lo, t_hi):
    """Integral of |S(t+h) - S(t)|^{2m} dt over [t_lo, t_hi].

    Breakpoint-exact: between consecutive points of {zeros} u {zeros - h}
    the jump part is constant, so the fixed-order rule sees only the
    smooth theta difference.
    """
    h = float(h)
    m = int(m)
    t_lo = float(t_lo)
    t_hi = float(t_hi)
    if not 1 <= m <= 8:
        raise ValueError("moment half-order m must be in [1, 8], got %d" % m)
    if t_hi <= t_lo:
        raise ValueError("empty integration range")
    if not 0.0 < h <= 0.5 * (t_hi - t_lo):
        raise ValueError(
            "shift h must satisfy 0 < h <= (t_hi - t_lo)/2, got %g" % h
        )
    if t_lo < sf.t_lo or t_hi + h > sf.t_hi:
        raise ValueError(
            "integration needs [%g, %g] inside the S domain [%g, %g]"
            % (t_lo, t_hi + h, sf.t_lo, sf.t_hi)
        )
    z = sf.zeros
    interior = z[(z > t_lo) & (z < t_hi)]
    shifted = z - h
    interior_sh = shifted[(shifted > t_lo) & (shifted < t_hi)]
    if len(interior) + len(interior_sh) > 10**8:
        raise ResourceError("more than 1e8 quadrature breakpoints")
    cuts = np.unique(np.concatenate([[t_lo, t_hi], interior, interior_sh]))
    lo = cuts[:-1]
    hi = cuts[1:]
    live = hi > lo
    lo, hi = lo[live], hi[live]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    jumps = (
        np.searchsorted(z, mid + h, side="right")
        - np.searchsorted(z, mid, side="right")
    ).astype(np.float64)

    def rule(nodes, weights):
        t_nodes = mid[:, None] + half[:, None] * nodes[None, :]
        phi = (
            sf._phase_of((t_nodes + h).ravel()) - sf._phase_of(t_nodes.ravel())
        ).reshape(t_nodes.shape)
        f = np.abs(jumps[:, None] - phi) ** (2 * m)
        return half * (f @ weights)

    per_piece8 = rule(_GL8_X, _GL8_W)
    per_piece4 = rule(_GL4_X, _GL4_W)
    value = float(per_piece8.sum())
    quad_error = float(np.abs(per_piece8 - per_piece4).sum())
    return MomentEstimate(
        t_lo=t_lo,
        t_hi=t_hi,
        h=h,
        m=m,
        value=value,
        quad_error=quad_error,
        leading_term=leading_term(t_lo, h),
    )


def korolev_shift(T):
    """The 2 pi / (3 log(T / 2 pi)) shift used by the even-moment bound."""
    return TWO_PI / (3.0 * math.log(T / TWO_PI))


@dataclass(frozen=True)
class GrowthRow:
    m: int
    value: float
    normalized: float


@dataclass(frozen=True)
class GrowthTable:
    T: float
    H: float
    h: float
    rows: list = field(default_factory=list)


def moment_growth_check(sf, T, m_max):
    """I_m for m = 1..m_max at the Korolev shift, with (I_m/H)^{1/m}/m^2.

    A bounded normalized column across m is the desk-scale witness of the
    (C m^2)^m H even-moment envelope.
    """
    T = float(T)
    m_max = int(m_max)
    if not 1 <= m_max <= 5:
        raise ValueError("m_max must be in [1, 5], got %d" % m_max)
    h = korolev_shift(T)
    H = sf.t_hi - h - T
    if T < sf.t_lo or H <= 0:
        raise ValueError(
            "S domain [%g, %g] cannot host [T, T+H] with the shift" % (sf.t_lo, sf.t_hi)
        )
    rows = []
    for m in range(1, m_max + 1):
        est = shifted_moment(sf, h, m, T, T + H)
        normalized = (est.value / H) ** (1.0 / m) / m**2
        rows.append(GrowthRow(m=m, value=est.value, normalized=normalized))
    return GrowthTable(T=T, H=H, h=h, rows=rows)


def write_moment_table(estimates, path):
    """Moment-table CSV: T, H, h, m, value, quad_error, leading_term, ratio."""
    lines = ["T,H,h,m,value,quad_error,leading_term,ratio"]
    for est in estimates:
        ratio = est.value / est.leading_term if est.leading_term else math.nan
        lines.append(
            ",".join(
                [
                    format(est.t_lo, ".17g"),
                    format(est.t_hi - est.t_lo, ".17g"),
                    format(est.h, ".17g"),
                    str(est.m),
                    format(est.value, ".17g"),
                    format(est.quad_error, ".17g"),
                    format(est.leading_term, ".17g"),
                    format(ratio, ".17g"),
                ]
            )
        )
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
