"""Gram interval classification (F_k counts) and Gram's Law statistics."""

import json
import logging
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import AuditError
from .zeros import FLAG_NEAR_TANGENCY, GRAM_COINCIDENCE

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GramInterval:
    """Half-open Gram interval (g_n, g_{n+1}] with its zero count."""

    n: int
    lo: float
    hi: float
    k: int
    flagged: bool = False


@dataclass(frozen=True)
class ClassificationReport:
    t_lo: float
    t_hi: float
    histogram: dict
    n_g: int
    n_zeros: int
    failure_count: int
    weak_failure_count: int
    weak_success_count: int
    flagged_count: int

    @property
    def failure_proportion(self):
        return self.failure_count / self.n_g

    @property
    def f0_proportion(self):
        return self.weak_failure_count / self.n_g

    @property
    def weak_success_proportion(self):
        return self.weak_success_count / self.n_g


def classify(grange, census, allow_failed_audit=False):
    """Label every Gram interval of `grange` with its exact zero count.

    Membership is half-open: a zero belongs to (g_n, g_{n+1}], except that
    a zero within 1e-9 of its lower endpoint g_n is pushed down one
    interval.  Zeros of the census outside (g_first, g_last] are excluded
    (logged at debug level).
    """
    if len(grange) < 2:
        raise ValueError("need at least 2 Gram points to classify intervals")
    g = grange.ordinates
    if census.t_lo > g[0] or census.t_hi < g[-1]:
        raise ValueError(
            "census [%g, %g] does not cover the Gram range [%g, %g]"
            % (census.t_lo, census.t_hi, g[0], g[-1])
        )
    if not census.audit_passed and not allow_failed_audit:
        raise AuditError(
            "census audit failed; pass allow_failed_audit=True to classify anyway"
        )
    z = census.zeros
    inside = (z > g[0]) & (z <= g[-1])
    excluded = int(len(z) - inside.sum())
    if excluded:
        log.debug("%d census zeros fall outside the Gram range", excluded)
    z_in = z[inside]
    flags_in = census.flags[inside]
    owner = np.searchsorted(g, z_in, side="left") - 1
    # coincidence rule: a zero essentially at g_n belongs below g_n
    near = z_in - g[owner] <= GRAM_COINCIDENCE
    owner = np.where(near, owner - 1, owner)
    dropped = owner < 0
    if dropped.any():
        log.debug("%d zeros pushed below the first Gram point", int(dropped.sum()))
    counts = np.zeros(len(g) - 1, dtype=np.int64)
    np.add.at(counts, owner[~dropped], 1)
    tang = np.zeros(len(g) - 1, dtype=bool)
    is_tang = (flags_in == FLAG_NEAR_TANGENCY) & ~dropped
    if is_tang.any():
        tang[owner[is_tang]] = True
    gap_flags = set(census.flagged_intervals)
    out = []
    for i in range(len(g) - 1):
        n = grange.n_lo + i
        out.append(
            GramInterval(
                n=n,
                lo=float(g[i]),
                hi=float(g[i + 1]),
                k=int(counts[i]),
                flagged=bool(tang[i]) or n in gap_flags,
            )
        )
    return out


def report(intervals):
    """Aggregate interval labels into the counting-identity report."""
    if not intervals:
        raise ValueError("cannot report on an empty interval sequence")
    hist = Counter(iv.k for iv in intervals)
    n_g = len(intervals)
    n_zeros = sum(k * c for k, c in hist.items())
    return ClassificationReport(
        t_lo=intervals[0].lo,
        t_hi=intervals[-1].hi,
        histogram=dict(sorted(hist.items())),
        n_g=n_g,
        n_zeros=n_zeros,
        failure_count=sum(c for k, c in hist.items() if k != 1),
        weak_failure_count=hist.get(0, 0),
        weak_success_count=sum(c for k, c in hist.items() if k >= 1),
        flagged_count=sum(1 for iv in intervals if iv.flagged),
    )


@dataclass(frozen=True)
class DecayProfile:
    """Pooled N_{F_k}/N_g rates and whether they decay beyond k = 2."""

    rates: dict
    monotone_tail: bool


def decay_profile(reports):
    """Pooled per-k interval rates across reports (each with n_g >= 1e4)."""
    reports = list(reports)
    if not reports:
        raise ValueError("no reports given")
    for r in reports:
        if r.n_g < 10**4:
            raise ValueError(
                "decay profile needs n_g >= 1e4 per report, got %d" % r.n_g
            )
    total = Counter()
    n_g = 0
    for r in reports:
        total.update(r.histogram)
        n_g += r.n_g
    rates = {k: c / n_g for k, c in sorted(total.items())}
    ks = [k for k in sorted(rates) if k >= 2]
    monotone = all(rates[a] >= rates[b] for a, b in zip(ks, ks[1:]))
    return DecayProfile(rates=rates, monotone_tail=monotone)


def report_to_json(rep):
    """Deterministic JSON rendering (fixed key order)."""
    payload = {
        "range": {"t_lo": rep.t_lo, "t_hi": rep.t_hi},
        "n_g": rep.n_g,
        "n_zeros": rep.n_zeros,
        "histogram": [[int(k), int(c)] for k, c in sorted(rep.histogram.items())],
        "failure_proportion": rep.failure_proportion,
        "f0_proportion": rep.f0_proportion,
        "weak_success_proportion": rep.weak_success_proportion,
        "flagged_count": rep.flagged_count,
    }
    return json.dumps(payload, indent=2)


def report_from_json(text):
    d = json.loads(text)
    hist = {int(k): int(c) for k, c in d["histogram"]}
    n_g = d["n_g"]
    return ClassificationReport(
        t_lo=d["range"]["t_lo"],
        t_hi=d["range"]["t_hi"],
        histogram=hist,
        n_g=n_g,
        n_zeros=d["n_zeros"],
        failure_count=n_g - hist.get(1, 0),
        weak_failure_count=hist.get(0, 0),
        weak_success_count=n_g - hist.get(0, 0),
        flagged_count=d["flagged_count"],
    )
