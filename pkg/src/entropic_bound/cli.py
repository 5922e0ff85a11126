"""Command-line front end.

Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .bounds import INV_SQRT2, crossover_cstar, new_bound
from .exceptions import InputDomainError, SolverFailureError

CSV_HEADER = "c,deutsch,maassen_uffink,f,g,h1,bound,branch"
ORACLE_TOL = 1e-4


class UsageError(Exception):
    pass


def fmt(x: float | None) -> str:
    """12 significant digits, positional notation; empty for ``None``."""
    if x is None:
        return ""
    if x == 0.0:
        return "0"
    return np.format_float_positional(
        float(x), precision=12, unique=False, fractional=False, trim="-"
    )


def curve_row(c: float) -> str:
    b = new_bound(c)
    cols = [c, b.deutsch, b.maassen_uffink, b.f_val, b.g_val, b.h1, b.final]
    return ",".join(fmt(v) for v in cols) + "," + b.active_branch


def curve_points(lo: float, hi: float, step: float) -> list[float]:
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + k * step, 12) for k in range(n + 1)]


def _overlap_arg(c: float) -> float:
    if not (0.0 < c <= 1.0):
        raise UsageError(f"--c must lie in (0, 1], got {c!r}")
    return c


def cmd_bound(args) -> int:
    c = _overlap_arg(args.c)
    b = new_bound(c)
    print(f"c               {fmt(b.c)}")
    print(f"deutsch         {fmt(b.deutsch)}")
    print(f"maassen_uffink  {fmt(b.maassen_uffink)}")
    print(f"f               {fmt(b.f_val)}")
    print(f"g               {fmt(b.g_val)}")
    for M, val in b.h_m:
        print(f"h{M:<15d}{fmt(val) if val is not None else '-'}")
    print(f"bound           {fmt(b.final)}")
    print(f"branch          {b.active_branch}")
    return 0


def cmd_curve(args) -> int:
    if not (0.0 < args.min < args.max <= 1.0):
        raise UsageError("need 0 < --min < --max <= 1")
    if not (args.step > 0.0):
        raise UsageError("--step must be positive")
    lines = [CSV_HEADER] + [curve_row(c) for c in curve_points(args.min, args.max, args.step)]
    text = "\n".join(lines) + "\n"
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(lines) - 1} rows to {args.out}")
    return 0


def cmd_crossover(args) -> int:
    if not (args.tol > 0.0):
        raise UsageError(f"--tol must be positive, got {args.tol!r}")
    print(fmt(crossover_cstar(args.tol)))
    return 0


def verify_quantum(args) -> int:
    from .quantum import haar_random_pair, verify_bound_mc

    if args.dim < 2 or args.pairs < 1 or args.states < 1:
        raise UsageError("need --dim >= 2, --pairs >= 1, --states >= 1")
    ok = True
    worst_bound, worst_lp, worst_h = math.inf, math.inf, math.inf
    for k in range(args.pairs):
        pair = haar_random_pair(args.dim, args.seed + k)
        rep = verify_bound_mc(pair, args.states, args.seed + k, workers=args.workers)
        worst_bound = min(worst_bound, rep.min_bound_slack)
        worst_lp = min(worst_lp, rep.min_lp_slack)
        worst_h = min(worst_h, rep.min_entropy_sum)
        if not rep.passed:
            ok = False
            print(f"violation: pair {k} (c = {fmt(rep.c)}), state {rep.offending_state.amplitudes}")
    print(f"min entropy sum   {fmt(worst_h)}")
    print(f"min bound slack   {worst_bound:.6e}")
    print(f"min LP slack      {worst_lp:.6e}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def verify_oracle(args) -> int:
    from .oracle import grid_min

    c = _overlap_arg(args.c)
    if args.grid < 10:
        raise UsageError("--grid must be at least 10")
    g = grid_min(c, args.grid)
    final = new_bound(c).final
    diff = g.min_value - final
    print(f"oracle  {fmt(g.min_value)} at P_A = {fmt(g.argmin_P_A)}, P_B = {fmt(g.argmin_P_B)}")
    print(f"bound   {fmt(final)}")
    print(f"diff    {diff:.3e}")
    if c >= INV_SQRT2:
        ok = abs(diff) <= ORACLE_TOL
    else:
        # below 1/sqrt(2) the Landau-Pollak minimum does not beat MU
        ok = diff <= 1e-6
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def verify_witness(args) -> int:
    from .oracle import incomparability_witness

    c = _overlap_arg(args.c)
    w = incomparability_witness(c, resolution=args.grid)
    if w is None:
        print("no witnesses found")
        return 1
    for name, x in (
        ("MU-allowed / LP-forbidden", w.mu_allowed_lp_forbidden),
        ("LP-allowed / MU-forbidden", w.lp_allowed_mu_forbidden),
    ):
        if x is None:
            print(f"{name}: none found")
            continue
        print(f"{name}:")
        print(f"  p = {[fmt(v) for v in x.p.entries if v > 0]}")
        print(f"  q = {[fmt(v) for v in x.q.entries if v > 0]}")
        print(f"  LP lhs {fmt(x.lp_lhs)} vs arccos c {fmt(x.theta)}")
        print(f"  H sum  {fmt(x.entropy_sum)} vs -2 ln c {fmt(x.mu)}")
    found = w.mu_allowed_lp_forbidden is not None and w.lp_allowed_mu_forbidden is not None
    print("PASS" if found else "FAIL")
    return 0 if found else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entropic-bound", description="Entropic uncertainty lower bounds")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", help="all candidate bounds at one overlap")
    b.add_argument("--c", type=float, required=True)
    b.set_defaults(func=cmd_bound)

    cv = sub.add_parser("curve", help="write the bound curves as CSV")
    cv.add_argument("--min", type=float, default=0.5)
    cv.add_argument("--max", type=float, default=1.0)
    cv.add_argument("--step", type=float, default=0.001)
    cv.add_argument("--out", type=Path, required=True)
    cv.set_defaults(func=cmd_curve)

    x = sub.add_parser("crossover", help="overlap where F replaces H1")
    x.add_argument("--tol", type=float, default=1e-6)
    x.set_defaults(func=cmd_crossover)

    v = sub.add_parser("verify", help="verification suites")
    vs = v.add_subparsers(dest="suite", required=True, parser_class=_Parser)

    q = vs.add_parser("quantum")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--pairs", type=int, default=20)
    q.add_argument("--states", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=verify_quantum)

    o = vs.add_parser("oracle")
    o.add_argument("--c", type=float, required=True)
    o.add_argument("--grid", type=int, default=10_000)
    o.add_argument("--workers", type=int, default=1)
    o.set_defaults(func=verify_oracle)

    w = vs.add_parser("witness")
    w.add_argument("--c", type=float, required=True)
    w.add_argument("--grid", type=int, default=1000)
    w.add_argument("--workers", type=int, default=1)
    w.set_defaults(func=verify_witness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InputDomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverFailureError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
