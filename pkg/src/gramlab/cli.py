"""Batch command line front end.

Subcommands: zeros (build/extend the cache), gram (Gram point table),
classify (interval report), moments (shifted-moment table), report
(combined summary).  Exit codes: 0 success, 2 argument error, 3 audit
failure, 4 cache error.
"""

import argparse
import json
import math
import os
import sys

from .cache import ZeroCache
from .classify import classify, report, report_to_json
from .errors import AuditError, CacheError, DomainError, GramlabError
from .gram import gram_range
from .moments import build_s, korolev_shift, shifted_moment

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_AUDIT = 3
EXIT_CACHE = 4


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    tmp = out + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    os.replace(tmp, out)


def _range_args(args):
    t_lo = args.t_lo
    t_hi = args.t_hi if args.t_hi is not None else 2.0 * t_lo
    if not (t_lo < t_hi):
        raise ValueError("need t_lo < t_hi (got %g, %g)" % (t_lo, t_hi))
    return t_lo, t_hi


def cmd_zeros(args):
    t_lo, t_hi = _range_args(args)
    cache = ZeroCache(args.cache, step=args.step)
    new_blocks = cache.ensure_range(t_lo, t_hi, threads=args.threads)
    census = cache.census(t_lo, t_hi)
    summary = {
        "range": {"t_lo": t_lo, "t_hi": t_hi},
        "new_blocks": list(new_blocks),
        "zeros": census.count,
        "expected": census.expected_count,
        "audit_passed": census.audit_passed,
    }
    _emit(json.dumps(summary, indent=2), args.out)
    return EXIT_OK if census.audit_passed else EXIT_AUDIT


def cmd_gram(args):
    t_lo, t_hi = _range_args(args)
    grange = gram_range(t_lo, t_hi)
    if args.format == "json":
        payload = {
            "t_lo": t_lo,
            "t_hi": t_hi,
            "n_lo": grange.n_lo,
            "count": len(grange),
            "points": [
                {"n": int(n), "t": float(t)}
                for n, t in zip(grange.indices, grange.ordinates)
            ],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = ["n,t,residual"]
        for n, t, r in zip(grange.indices, grange.ordinates, grange.residuals):
            lines.append("%d,%s,%s" % (n, format(t, ".17g"), format(r, ".3g")))
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def _census_for(args, t_lo, t_hi):
    cache = ZeroCache(args.cache)
    return cache.census(t_lo, t_hi)


def cmd_classify(args):
    t_lo, t_hi = _range_args(args)
    census = _census_for(args, t_lo, t_hi)
    grange = gram_range(t_lo, t_hi)
    intervals = classify(grange, census, allow_failed_audit=True)
    rep = report(intervals)
    if args.format == "csv":
        lines = ["k,count"]
        for k, c in sorted(rep.histogram.items()):
            lines.append("%d,%d" % (k, c))
        _emit("\n".join(lines), args.out)
    else:
        _emit(report_to_json(rep), args.out)
    return EXIT_OK if census.audit_passed else EXIT_AUDIT


def _shift_for(args, T):
    if args.h is not None:
        return args.h
    if args.c0 is not None:
        return args.c0 / math.log(T)
    return korolev_shift(T)


def cmd_moments(args):
    t_lo, t_hi = _range_args(args)
    h = _shift_for(args, t_lo)
    m_max = args.m if args.m is not None else 2
    census = _census_for(args, t_lo, min(t_hi + 2.0 * h, 2.0 * t_hi))
    sf = build_s(census)
    estimates = [
        shifted_moment(sf, h, m, t_lo, t_hi)
        for m in range(1, m_max + 1)
    ]
    lines = ["T,H,h,m,value,quad_error,leading_term,ratio"]
    for est in estimates:
        ratio = est.value / est.leading_term
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
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_report(args):
    t_lo, t_hi = _range_args(args)
    h = _shift_for(args, t_lo)
    census = _census_for(args, t_lo, min(t_hi + 2.0 * h, 2.0 * t_hi))
    grange = gram_range(t_lo, t_hi)
    intervals = classify(grange, census, allow_failed_audit=True)
    rep = report(intervals)
    sf = build_s(census)
    est1 = shifted_moment(sf, h, 1, t_lo, t_hi)
    payload = {
        "range": {"t_lo": t_lo, "t_hi": t_hi},
        "n_g": rep.n_g,
        "n_zeros": rep.n_zeros,
        "histogram": [[int(k), int(c)] for k, c in sorted(rep.histogram.items())],
        "failure_proportion": rep.failure_proportion,
        "f0_proportion": rep.f0_proportion,
        "weak_success_proportion": rep.weak_success_proportion,
        "flagged_count": rep.flagged_count,
        "moments": {
            "h": h,
            "I1": est1.value,
            "leading_term": est1.leading_term,
            "ratio": est1.value / est1.leading_term,
        },
        "audit_passed": census.audit_passed,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK if census.audit_passed else EXIT_AUDIT


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gramlab",
        description="Gram points, critical-line zeros and Gram's Law statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("zeros", cmd_zeros),
        ("gram", cmd_gram),
        ("classify", cmd_classify),
        ("moments", cmd_moments),
        ("report", cmd_report),
    ]:
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--t-lo", type=float, required=True, dest="t_lo")
        p.add_argument("--t-hi", type=float, default=None, dest="t_hi",
                       help="default: 2 * t_lo")
        p.add_argument("--step", type=float, default=None)
        p.add_argument("--h", type=float, default=None)
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--cache", default="./gramlab-cache")
        p.add_argument("--format", choices=("csv", "json"),
                       default="json" if name in ("classify", "report", "zeros") else "csv")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--c0", type=float, default=None,
                       help="shift constant: h = c0 / log(T)")
        p.add_argument("--out", default="-", help="output path ('-' = stdout)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.m is not None and not 1 <= args.m <= 8:
        parser.error("--m must be in [1, 8]")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.fn(args)
    except (CacheError,) as exc:
        sys.stderr.write("cache error: %s\n" % exc)
        return EXIT_CACHE
    except AuditError as exc:
        sys.stderr.write("audit failure: %s\n" % exc)
        return EXIT_AUDIT
    except (DomainError, ValueError) as exc:
        sys.stderr.write("argument error: %s\n" % exc)
        return EXIT_ARGS
    except GramlabError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
