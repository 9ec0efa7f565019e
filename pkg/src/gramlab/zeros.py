"""Critical-line zero location by sign scanning, with a completeness audit.

Scanning samples Z(t) on a per-Gram-interval grid, brackets every sign
change and bisects each bracket to below 1e-9.  Completeness is audited
with Gram-block bookkeeping: at a "good" Gram point ((-1)^n Z(g_n) > 0)
the argument-count correction S vanishes at desk heights, so the span
between consecutive good points must contain exactly its index difference
in zeros.  Deficient spans are rescanned with halved steps (up to six
rounds); anything still missing is reported as a flagged gap, never
invented.

The bookkeeping assumption (S = 0 at good Gram points) is an empirical
fact below the first Rosser-rule violation (ordinates ~< 6e6); above that
the audit may fail closed.  This is a desk-scale tool.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import gram, kernels
from .errors import DomainError

TWO_PI = 2.0 * math.pi

CHUNK = 256          # Gram intervals per parallel work unit
MARGIN = 48          # extra intervals searched for good anchors
GOOD_MIN = 1e-8      # |Z(g_n)| below this is too uncertain to call good
REFINE_TOL = 5e-10   # target bracket width
GRAM_COINCIDENCE = 1e-9  # zero this close to g_n belongs to the lower interval
RESCAN_ROUNDS = 6

FLAG_OK = 0
FLAG_NEAR_TANGENCY = 1
FLAG_NAMES = {FLAG_OK: "ok", FLAG_NEAR_TANGENCY: "near_tangency"}
FLAG_CODES = {v: k for k, v in FLAG_NAMES.items()}


@dataclass(frozen=True)
class ZeroOrdinate:
    """A refined sign change of Z with its enclosing bracket."""

    t: float
    bracket_lo: float
    bracket_hi: float

    @property
    def width(self):
        return self.bracket_hi - self.bracket_lo


@dataclass(frozen=True)
class ZeroCensus:
    """All zeros found in (t_lo, t_hi] plus audit metadata.

    anchor_n / anchor_t name a good Gram point inside the range whose
    argument-count level the audit pinned to zero; s_boundary_lo/hi are the
    inferred S values at the range ends relative to that level.
    """

    t_lo: float
    t_hi: float
    zeros: np.ndarray
    bracket_lo: np.ndarray
    bracket_hi: np.ndarray
    flags: np.ndarray
    expected_count: int
    audit_passed: bool
    flagged_intervals: tuple
    anchor_n: int
    anchor_t: float
    s_boundary_lo: float
    s_boundary_hi: float

    @property
    def count(self):
        return len(self.zeros)

    def ordinate(self, i):
        return ZeroOrdinate(
            t=float(self.zeros[i]),
            bracket_lo=float(self.bracket_lo[i]),
            bracket_hi=float(self.bracket_hi[i]),
        )


def count_estimate(t):
    """round(theta(t)/pi + 1): the zero count N(t) up to the S(t) wiggle."""
    t = float(t)
    if t < 10.0:
        raise DomainError("count_estimate needs t >= 10, got %g" % t)
    th = float(kernels.theta_block(np.array([t]))[0])
    return int(round(th / math.pi + 1.0))


def refine_zero(bracket_lo, bracket_hi, tol):
    """Bisect one sign-change bracket of Z to width <= tol."""
    lo = float(min(bracket_lo, bracket_hi))
    hi = float(max(bracket_lo, bracket_hi))
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    vals = kernels.z_block(np.array([lo, hi]))
    if not vals[0] * vals[1] < 0.0:
        raise ValueError(
            "no sign change on bracket [%.6f, %.6f] (Z=%g, %g)"
            % (lo, hi, vals[0], vals[1])
        )
    rlo, rhi = kernels.refine_brackets(np.array([lo]), np.array([hi]), tol)
    return ZeroOrdinate(
        t=0.5 * (float(rlo[0]) + float(rhi[0])),
        bracket_lo=float(rlo[0]),
        bracket_hi=float(rhi[0]),
    )


# ---------------------------------------------------------------------------
# span scanning

@dataclass
class _SpanScan:
    """Scan of Gram intervals [n_lo, n_hi) (plus the [10, g_0] strip)."""

    n_lo: int
    n_hi: int
    counts: np.ndarray
    bottom_count: int
    zeros: np.ndarray
    bracket_lo: np.ndarray
    bracket_hi: np.ndarray
    flags: np.ndarray
    interval_of: np.ndarray
    audit_passed: bool
    flagged_intervals: tuple
    deficit: int
    good_indices: np.ndarray
    gram_lo_n: int
    gram_ordinates: np.ndarray


def _interval_grid(g_lo, g_len, subdivisions):
    """Interior sample points for intervals sharing one subdivision count."""
    frac = np.arange(1, subdivisions, dtype=np.float64) / subdivisions
    return g_lo[:, None] + g_len[:, None] * frac[None, :]


def _brackets_from_signs(edges, values):
    """Sign-change brackets from consecutive samples (edges: k x (m+1))."""
    s = np.sign(values)
    change = s[:, :-1] * s[:, 1:] < 0.0
    rows, cols = np.nonzero(change)
    return edges[rows, cols], edges[rows, cols + 1], rows


def _scan_interval_group(g_lo, g_len, z_lo, z_hi, subdivisions):
    """Scan same-subdivision intervals; returns bracket arrays + row index."""
    k = len(g_lo)
    m = subdivisions
    interior = _interval_grid(g_lo, g_len, m)
    z_interior = kernels.z_block(interior.ravel()).reshape(k, m - 1)
    values = np.empty((k, m + 1), dtype=np.float64)
    values[:, 0] = z_lo
    values[:, 1:m] = z_interior
    values[:, m] = z_hi
    frac = np.arange(0, m + 1, dtype=np.float64) / m
    edges = g_lo[:, None] + g_len[:, None] * frac[None, :]
    edges[:, m] = g_lo + g_len  # exact upper endpoint
    return _brackets_from_signs(edges, values)


def _refine_and_flag(blo, bhi):
    rlo, rhi = kernels.refine_brackets(blo, bhi, REFINE_TOL)
    t = 0.5 * (rlo + rhi)
    if t.size:
        eps = 1e-6
        s1 = np.sign(kernels.z_block(np.maximum(t - eps, 10.0)))
        s2 = np.sign(kernels.z_block(t + eps))
        flags = np.where(s1 * s2 < 0.0, FLAG_OK, FLAG_NEAR_TANGENCY).astype(np.uint8)
    else:
        flags = np.zeros(0, dtype=np.uint8)
    return t, rlo, rhi, flags


def _scan_indexed_intervals(indices, g, zg, gram_n_lo, step, mult=1):
    """Scan the given Gram intervals (indices into the absolute Gram grid).

    g / zg hold Gram ordinates and Z values starting at index gram_n_lo.
    Returns per-zero arrays plus the owning interval of each zero.
    """
    if len(indices) == 0:
        empty = np.zeros(0, dtype=np.float64)
        return empty, empty, empty, np.zeros(0, dtype=np.uint8), np.zeros(0, dtype=np.int64)
    idx = np.asarray(indices, dtype=np.int64)
    off = idx - gram_n_lo
    g_lo = g[off]
    g_len = g[off + 1] - g[off]
    z_lo = zg[off]
    z_hi = zg[off + 1]
    subs = np.maximum(8, np.ceil(g_len / step).astype(np.int64)) * mult
    out = []
    for m in np.unique(subs):
        sel = np.nonzero(subs == m)[0]
        blo, bhi, rows = _scan_interval_group(
            g_lo[sel], g_len[sel], z_lo[sel], z_hi[sel], int(m)
        )
        t, rlo, rhi, flags = _refine_and_flag(blo, bhi)
        owner = idx[sel][rows]
        out.append((t, rlo, rhi, flags, owner))
    t = np.concatenate([o[0] for o in out])
    rlo = np.concatenate([o[1] for o in out])
    rhi = np.concatenate([o[2] for o in out])
    flags = np.concatenate([o[3] for o in out])
    owner = np.concatenate([o[4] for o in out])
    order = np.argsort(t, kind="stable")
    t, rlo, rhi, flags, owner = t[order], rlo[order], rhi[order], flags[order], owner[order]
    # a zero within GRAM_COINCIDENCE above g_n belongs to the interval below
    if t.size:
        near = t - g[owner - gram_n_lo] <= GRAM_COINCIDENCE
        owner = np.where(near, owner - 1, owner)
    return t, rlo, rhi, flags, owner


def _scan_bottom_strip(g0, step, mult=1):
    """Scan [10, g_0]; returns the same per-zero arrays with owner -1."""
    length = g0 - 10.0
    m = max(8, int(math.ceil(length / step))) * mult
    edges = 10.0 + length * np.arange(0, m + 1, dtype=np.float64) / m
    edges[-1] = g0
    values = kernels.z_block(edges)
    s = np.sign(values)
    change = np.nonzero(s[:-1] * s[1:] < 0.0)[0]
    t, rlo, rhi, flags = _refine_and_flag(edges[change], edges[change + 1])
    owner = np.full(t.shape, -1, dtype=np.int64)
    return t, rlo, rhi, flags, owner


def _merge_zero_arrays(parts):
    t = np.concatenate([p[0] for p in parts])
    rlo = np.concatenate([p[1] for p in parts])
    rhi = np.concatenate([p[2] for p in parts])
    flags = np.concatenate([p[3] for p in parts])
    owner = np.concatenate([p[4] for p in parts])
    order = np.argsort(t, kind="stable")
    return t[order], rlo[order], rhi[order], flags[order], owner[order]


def scan_span(n_lo, n_hi, step, include_bottom=False, threads=1):
    """Scan Gram intervals [n_lo, n_hi) and audit them by Gram blocks.

    Pure function of its arguments: the chunk decomposition is fixed, so
    the result is independent of `threads`.
    """
    n_lo = int(n_lo)
    n_hi = int(n_hi)
    if n_lo < 0 or n_hi < n_lo:
        raise ValueError("invalid Gram interval span [%d, %d)" % (n_lo, n_hi))
    if include_bottom and n_lo > MARGIN:
        raise ValueError("bottom strip only makes sense for spans starting near 0")
    m_lo = max(0, n_lo - MARGIN)
    m_hi = n_hi + MARGIN
    g_idx = np.arange(m_lo, m_hi + 1, dtype=np.float64)
    g, _res = gram._solve_indices(g_idx)
    zg = kernels.z_block(g)
    parity = np.where((np.arange(m_lo, m_hi + 1) % 2) == 0, 1.0, -1.0)
    good = parity * zg > GOOD_MIN
    good_indices = np.arange(m_lo, m_hi + 1)[good]

    # anchors bracketing the requested span
    lower_goods = good_indices[good_indices <= n_lo]
    upper_goods = good_indices[good_indices >= n_hi]
    have_anchors = (len(lower_goods) > 0 or include_bottom) and len(upper_goods) > 0
    a_anchor = int(lower_goods[-1]) if len(lower_goods) else 0
    b_anchor = int(upper_goods[0]) if len(upper_goods) else n_hi

    scan_lo = min(a_anchor, n_lo) if not include_bottom else 0
    scan_hi = max(b_anchor, n_hi)

    # chunked interval scan (fixed decomposition, threadable)
    all_idx = np.arange(scan_lo, scan_hi)
    chunk_starts = range(scan_lo - scan_lo % CHUNK, scan_hi, CHUNK)
    jobs = []
    for c in chunk_starts:
        sel = all_idx[(all_idx >= c) & (all_idx < c + CHUNK)]
        if len(sel):
            jobs.append(sel)

    def run(sel):
        return _scan_indexed_intervals(sel, g, zg, m_lo, step)

    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(sel) for sel in jobs]
    if include_bottom:
        parts.insert(0, _scan_bottom_strip(float(g[0]), step))
    if not parts:
        parts = [(
            np.zeros(0), np.zeros(0), np.zeros(0),
            np.zeros(0, dtype=np.uint8), np.zeros(0, dtype=np.int64),
        )]
    t, rlo, rhi, flags, owner = _merge_zero_arrays(parts)

    def counts_from(owner_arr):
        counts = np.zeros(scan_hi - scan_lo, dtype=np.int64)
        inside = owner_arr >= scan_lo
        np.add.at(counts, owner_arr[inside] - scan_lo, 1)
        return counts

    counts = counts_from(owner)
    bottom_count = int(np.sum(owner == -1))

    # Gram-block audit between consecutive good anchors
    flagged = []
    deficit = 0
    audit_ok = have_anchors
    if have_anchors:
        chain = good_indices[(good_indices >= a_anchor) & (good_indices <= b_anchor)]
        blocks = list(zip(chain[:-1], chain[1:]))
        if include_bottom:
            if len(chain):
                blocks.insert(0, ("bottom", int(chain[0])))
            else:
                audit_ok = False

        def block_found(u, v):
            if u == "bottom":
                return bottom_count + int(counts[0:v - scan_lo].sum())
            return int(counts[u - scan_lo:v - scan_lo].sum())

        def block_expected(u, v):
            return v + 1 if u == "bottom" else v - u

        bad = [
            (u, v)
            for u, v in blocks
            if block_found(u, v) != block_expected(u, v)
        ]
        for round_ in range(1, RESCAN_ROUNDS + 1):
            if not bad:
                break
            redo = []
            for u, v in bad:
                lo_i = scan_lo if u == "bottom" else u
                redo.extend(range(lo_i, v))
            redo = np.array(sorted(set(redo)), dtype=np.int64)
            rescan = _scan_indexed_intervals(redo, g, zg, m_lo, step, mult=2 ** round_)
            if any(u == "bottom" for u, _ in bad):
                bstrip = _scan_bottom_strip(float(g[0 - m_lo]), step, mult=2 ** round_)
            else:
                bstrip = None
            keep = ~np.isin(owner, redo)
            if bstrip is not None:
                keep &= owner != -1
            parts = [(t[keep], rlo[keep], rhi[keep], flags[keep], owner[keep]), rescan]
            if bstrip is not None:
                parts.append(bstrip)
            t, rlo, rhi, flags, owner = _merge_zero_arrays(parts)
            counts = counts_from(owner)
            bottom_count = int(np.sum(owner == -1))
            bad = [
                (u, v)
                for u, v in bad
                if block_found(u, v) != block_expected(u, v)
            ]
        if bad:
            audit_ok = False
            for u, v in bad:
                lo_i = scan_lo if u == "bottom" else u
                flagged.extend(range(lo_i, v))
                deficit += max(0, block_expected(u, v) - block_found(u, v))

    return _SpanScan(
        n_lo=n_lo,
        n_hi=n_hi,
        counts=counts[n_lo - scan_lo:n_hi - scan_lo],
        bottom_count=bottom_count,
        zeros=t,
        bracket_lo=rlo,
        bracket_hi=rhi,
        flags=flags,
        interval_of=owner,
        audit_passed=audit_ok,
        flagged_intervals=tuple(sorted(set(flagged))),
        deficit=deficit,
        good_indices=good_indices,
        gram_lo_n=m_lo,
        gram_ordinates=g,
    )


def default_step(t_hi):
    """Spec default: an eighth of the shortest Gram interval in range."""
    return TWO_PI / math.log(t_hi / TWO_PI) / 8.0


def scan_zeros(t_lo, t_hi, initial_step=None, threads=1):
    """Locate all zeros of Z in (t_lo, t_hi] and audit completeness."""
    t_lo = float(t_lo)
    t_hi = float(t_hi)
    if t_lo < 10.0:
        raise DomainError("scan needs t_lo >= 10, got %g" % t_lo)
    if t_hi <= t_lo:
        raise ValueError("empty scan range")
    min_len = TWO_PI / math.log(t_hi / TWO_PI)
    if initial_step is None:
        step = min_len / 8.0
    else:
        step = float(initial_step)
        if step <= 0.0:
            raise ValueError("initial_step must be positive")
        if step > min_len / 4.0:
            raise ValueError(
                "initial_step %g exceeds a quarter Gram interval (%g)"
                % (step, min_len / 4.0)
            )

    th_lo = float(kernels.theta_block(np.array([t_lo]))[0]) / math.pi
    th_hi = float(kernels.theta_block(np.array([t_hi]))[0]) / math.pi
    # overcover by a guard band; the window filter drops any extras
    n0 = max(0, int(math.floor(th_lo - 1e-9)))
    n1 = max(n0, int(math.ceil(th_hi + 1e-9)))
    include_bottom = th_lo < 0.0

    span = scan_span(n0, n1, step, include_bottom=include_bottom, threads=threads)

    inside = (span.zeros > t_lo) & (span.zeros <= t_hi)
    zeros = span.zeros[inside]
    rlo = span.bracket_lo[inside]
    rhi = span.bracket_hi[inside]
    flags = span.flags[inside]

    # expected for the window: certified interval counts plus edge pieces
    expected = int(inside.sum()) if span.audit_passed else _expected_failed(span, inside)

    anchor_n, anchor_t = _window_anchor(span, t_lo, t_hi)
    s_lo, s_hi = _boundary_offsets(span, zeros, t_lo, t_hi, anchor_n, anchor_t)

    flagged_in_window = tuple(
        n for n in span.flagged_intervals if n0 <= n < n1 or n == -1
    )
    return ZeroCensus(
        t_lo=t_lo,
        t_hi=t_hi,
        zeros=zeros,
        bracket_lo=rlo,
        bracket_hi=rhi,
        flags=flags,
        expected_count=expected,
        audit_passed=span.audit_passed,
        flagged_intervals=flagged_in_window,
        anchor_n=anchor_n,
        anchor_t=anchor_t,
        s_boundary_lo=s_lo,
        s_boundary_hi=s_hi,
    )


def _expected_failed(span, inside):
    """Window expectation when the audit failed: found plus known deficits."""
    found = int(inside.sum())
    return found + span.deficit


def _window_anchor(span, t_lo, t_hi):
    g = span.gram_ordinates
    lo_n = span.gram_lo_n
    for n in span.good_indices:
        gt = float(g[n - lo_n])
        if t_lo <= gt <= t_hi:
            return int(n), gt
    return -1, math.nan


def _boundary_offsets(span, zeros, t_lo, t_hi, anchor_n, anchor_t):
    """Inferred S at the window ends, pinned to S(anchor) = 0."""
    if anchor_n < 0 or not len(zeros):
        return math.nan, math.nan
    th = kernels.theta_block(np.array([t_lo, t_hi])) / math.pi
    n_below_anchor = int(np.searchsorted(zeros, anchor_t, side="right"))
    s_lo = -(n_below_anchor - (float(anchor_n) - th[0]))
    s_hi = (len(zeros) - n_below_anchor) - (th[1] - float(anchor_n))
    return float(s_lo), float(s_hi)


# ---------------------------------------------------------------------------
# census serialization (format: "# gramlab-zeros v1")

def save_census(census, path):
    """Write a census as the v1 CSV; bit-exact round trip via %.17g."""
    lines = ["# gramlab-zeros v1"]
    lines.append("# t_lo %s" % format(census.t_lo, ".17g"))
    lines.append("# t_hi %s" % format(census.t_hi, ".17g"))
    lines.append("# expected_count %d" % census.expected_count)
    lines.append("# audit_passed %d" % int(census.audit_passed))
    lines.append("# flagged_intervals %s" % ",".join(str(n) for n in census.flagged_intervals))
    lines.append("# anchor_n %d" % census.anchor_n)
    lines.append("# anchor_t %s" % format(census.anchor_t, ".17g"))
    lines.append("# s_boundary_lo %s" % format(census.s_boundary_lo, ".17g"))
    lines.append("# s_boundary_hi %s" % format(census.s_boundary_hi, ".17g"))
    lines.append("index,t,bracket_width,flag")
    for i in range(census.count):
        width = census.bracket_hi[i] - census.bracket_lo[i]
        lines.append(
            "%d,%s,%s,%s"
            % (
                i,
                format(census.zeros[i], ".17g"),
                format(width, ".17g"),
                FLAG_NAMES[int(census.flags[i])],
            )
        )
    data = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(data)


def load_census(path):
    """Read a v1 census CSV written by save_census."""
    from .errors import CacheError

    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != "# gramlab-zeros v1":
        raise CacheError("%s: missing 'gramlab-zeros v1' header" % path)
    meta = {}
    rows = []
    for line in lines[1:]:
        if line.startswith("# "):
            key, _, val = line[2:].partition(" ")
            meta[key] = val
        elif line and line != "index,t,bracket_width,flag":
            rows.append(line.split(","))
    t = np.array([float(r[1]) for r in rows], dtype=np.float64)
    width = np.array([float(r[2]) for r in rows], dtype=np.float64)
    flags = np.array([FLAG_CODES[r[3]] for r in rows], dtype=np.uint8)
    if np.any(np.diff(t) <= 0.0):
        raise CacheError("%s: zero ordinates are not strictly increasing" % path)
    flagged = tuple(
        int(x) for x in meta.get("flagged_intervals", "").split(",") if x
    )
    # lo + width is exact (width is an on-grid float difference), so a
    # re-saved file reproduces the width column byte for byte
    lo = t - 0.5 * width
    return ZeroCensus(
        t_lo=float(meta["t_lo"]),
        t_hi=float(meta["t_hi"]),
        zeros=t,
        bracket_lo=lo,
        bracket_hi=lo + width,
        flags=flags,
        expected_count=int(meta["expected_count"]),
        audit_passed=bool(int(meta["audit_passed"])),
        flagged_intervals=flagged,
        anchor_n=int(meta["anchor_n"]),
        anchor_t=float(meta["anchor_t"]),
        s_boundary_lo=float(meta["s_boundary_lo"]),
        s_boundary_hi=float(meta["s_boundary_hi"]),
    )
