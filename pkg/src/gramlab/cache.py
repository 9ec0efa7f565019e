"""Resumable zero cache: immutable per-block CSV segments plus a manifest.

Blocks tile the line by absolute Gram interval index (1024 intervals per
block; block 0 also covers the [10, g_0] strip).  A block's content is a
pure function of its index, so any scan order, thread count or resume
pattern yields byte-identical files.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import gram, kernels, zeros
from .errors import CacheError, DomainError

BLOCK_INTERVALS = 1024
MANIFEST_NAME = "manifest.json"
BLOCK_DIR = "blocks"
FORMAT = "gramlab-cache v1"


def _atomic_write(path, data):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(data)
    os.replace(tmp, path)


def block_of_ordinate(t):
    """Index of the cache block whose span contains ordinate t (t >= 10)."""
    if t < 10.0:
        raise DomainError("cache covers t >= 10, got %g" % t)
    th = float(kernels.theta_block(np.array([max(t, 10.0)]))[0]) / math.pi
    n = max(0, int(math.floor(th + 1e-9)))
    return n // BLOCK_INTERVALS


def scan_block(k, threads=1, step=None):
    """Scan cache block k; returns a ZeroCensus over exactly its span."""
    k = int(k)
    if k < 0:
        raise ValueError("block index must be >= 0")
    n0 = k * BLOCK_INTERVALS
    n1 = (k + 1) * BLOCK_INTERVALS
    ends, _ = gram._solve_indices(np.array([n0, n1], dtype=np.float64))
    t_lo = 10.0 if k == 0 else float(ends[0])
    t_hi = float(ends[1])
    if step is None:
        step = zeros.default_step(t_hi)
    span = zeros.scan_span(n0, n1, step, include_bottom=(k == 0), threads=threads)
    inside = (span.zeros > t_lo) & (span.zeros <= t_hi) if k else span.zeros <= t_hi
    anchor_n, anchor_t = -1, math.nan
    for n in span.good_indices:
        if n0 <= n <= n1:
            anchor_n = int(n)
            anchor_t = float(span.gram_ordinates[n - span.gram_lo_n])
            break
    zs = span.zeros[inside]
    census = zeros.ZeroCensus(
        t_lo=t_lo,
        t_hi=t_hi,
        zeros=zs,
        bracket_lo=span.bracket_lo[inside],
        bracket_hi=span.bracket_hi[inside],
        flags=span.flags[inside],
        expected_count=int(inside.sum()) + span.deficit,
        audit_passed=span.audit_passed,
        flagged_intervals=tuple(
            n for n in span.flagged_intervals if n0 <= n < n1 or n == -1
        ),
        anchor_n=anchor_n,
        anchor_t=anchor_t,
        s_boundary_lo=math.nan,
        s_boundary_hi=math.nan,
    )
    return census


class ZeroCache:
    """A cache directory; create lazily, extend idempotently.

    An explicit scan step is recorded in the manifest; reopening the same
    cache with a different step is refused rather than silently mixing
    sampling policies.
    """

    def __init__(self, path, step=None):
        self.path = str(path)
        self.step = None if step is None else float(step)
        self._manifest = None

    # -- manifest ----------------------------------------------------------

    def _manifest_path(self):
        return os.path.join(self.path, MANIFEST_NAME)

    def _block_path(self, k):
        return os.path.join(self.path, BLOCK_DIR, "block-%08d.csv" % k)

    def _step_policy(self):
        return "default" if self.step is None else repr(self.step)

    def manifest(self):
        if self._manifest is not None:
            return self._manifest
        path = self._manifest_path()
        if not os.path.exists(path):
            self._manifest = {
                "format": FORMAT,
                "block_intervals": BLOCK_INTERVALS,
                "step_policy": self._step_policy(),
                "blocks": {},
            }
            return self._manifest
        try:
            with open(path, "r", encoding="ascii") as fh:
                m = json.load(fh)
        except (OSError, ValueError) as exc:
            raise CacheError("unreadable manifest %s: %s" % (path, exc))
        if m.get("format") != FORMAT:
            raise CacheError(
                "manifest format %r is not %r" % (m.get("format"), FORMAT)
            )
        if m.get("block_intervals") != BLOCK_INTERVALS:
            raise CacheError("manifest block size mismatch")
        self._manifest = m
        return m

    def _write_manifest(self):
        m = self.manifest()
        blocks = {k: m["blocks"][k] for k in sorted(m["blocks"], key=int)}
        payload = {
            "format": FORMAT,
            "block_intervals": BLOCK_INTERVALS,
            "step_policy": self._step_policy(),
            "blocks": blocks,
        }
        _atomic_write(self._manifest_path(), json.dumps(payload, indent=2) + "\n")

    # -- scanning ----------------------------------------------------------

    def blocks_for_range(self, t_lo, t_hi):
        if t_hi < t_lo:
            raise ValueError("empty range")
        return list(range(block_of_ordinate(t_lo), block_of_ordinate(t_hi) + 1))

    def missing_blocks(self, t_lo, t_hi):
        have = self.manifest()["blocks"]
        return [k for k in self.blocks_for_range(t_lo, t_hi) if str(k) not in have]

    def ensure_range(self, t_lo, t_hi, threads=1):
        """Scan and persist any blocks the range needs; skip existing ones."""
        m = self.manifest()
        if m.get("step_policy", self._step_policy()) != self._step_policy():
            raise CacheError(
                "cache was built with step policy %r, requested %r"
                % (m.get("step_policy"), self._step_policy())
            )
        missing = self.missing_blocks(t_lo, t_hi)
        if not missing:
            return []
        os.makedirs(os.path.join(self.path, BLOCK_DIR), exist_ok=True)

        def job(k):
            return scan_block(k, step=self.step)

        if threads > 1 and len(missing) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(job, missing))
        else:
            results = [scan_block(k, threads=threads, step=self.step) for k in missing]
        m = self.manifest()
        for k, census in zip(missing, results):
            path = self._block_path(k)
            zeros.save_census(census, path + ".tmp")
            os.replace(path + ".tmp", path)
            m["blocks"][str(k)] = {
                "t_lo": census.t_lo,
                "t_hi": census.t_hi,
                "n_zeros": census.count,
                "audit_passed": census.audit_passed,
                "flagged_intervals": list(census.flagged_intervals),
                "anchor_n": census.anchor_n,
            }
        self._write_manifest()
        return missing

    def load_block(self, k):
        path = self._block_path(k)
        if not os.path.exists(path):
            raise CacheError("block %d not in cache; run zeros first" % k)
        return zeros.load_census(path)

    def census(self, t_lo, t_hi):
        """Assemble a ZeroCensus for (t_lo, t_hi] from cached blocks only."""
        t_lo = float(t_lo)
        t_hi = float(t_hi)
        if t_hi <= t_lo:
            raise ValueError("empty range")
        have = self.manifest()["blocks"]
        ks = self.blocks_for_range(t_lo, t_hi)
        missing = [k for k in ks if str(k) not in have]
        if missing:
            raise CacheError(
                "range [%g, %g] not covered (missing blocks %s); run zeros first"
                % (t_lo, t_hi, missing)
            )
        parts = [self.load_block(k) for k in ks]
        for prev, nxt in zip(parts[:-1], parts[1:]):
            if prev.t_hi != nxt.t_lo:
                raise CacheError(
                    "cache blocks are not contiguous at t=%g" % prev.t_hi
                )
        zs = np.concatenate([p.zeros for p in parts])
        if np.any(np.diff(zs) <= 0.0):
            raise CacheError("cache zeros are not strictly increasing")
        rlo = np.concatenate([p.bracket_lo for p in parts])
        rhi = np.concatenate([p.bracket_hi for p in parts])
        flags = np.concatenate([p.flags for p in parts])
        inside = (zs > t_lo) & (zs <= t_hi)
        audit = all(p.audit_passed for p in parts)
        deficit = sum(p.expected_count - p.count for p in parts)
        anchor_n, anchor_t = -1, math.nan
        for p in parts:
            if p.anchor_n >= 0 and t_lo <= p.anchor_t <= t_hi:
                anchor_n, anchor_t = p.anchor_n, p.anchor_t
                break
        census = zeros.ZeroCensus(
            t_lo=t_lo,
            t_hi=t_hi,
            zeros=zs[inside],
            bracket_lo=rlo[inside],
            bracket_hi=rhi[inside],
            flags=flags[inside],
            expected_count=int(inside.sum()) + deficit,
            audit_passed=audit,
            flagged_intervals=tuple(
                n for p in parts for n in p.flagged_intervals
            ),
            anchor_n=anchor_n,
            anchor_t=anchor_t,
            s_boundary_lo=math.nan,
            s_boundary_hi=math.nan,
        )
        return census
