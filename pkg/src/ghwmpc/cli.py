"""Command-line interface.

Exit codes: 0 success, 1 a reproduced value disagrees with the published
one, 2 parse or usage error, 3 scale guard refusal, 4 a mathematical
precondition (NSC, nesting, ...) fails.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import bounds, codes, mpc, reproduce
from .codes import EmptyCodeError, LinearCode, ScaleGuardError
from .formats import FormatError, digest, format_code, load_code_source, read_matrix
from .linalg import DimensionError
from .mpc import PreconditionError


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    method: str
    inputs: str
    r: list[int] = field(default_factory=list)
    values: list = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float | None = None

    def add(self, r: int, value, witness: str) -> None:
        self.r.append(r)
        self.values.append(value)
        self.witnesses.append(witness)

    def render_text(self) -> str:
        lines = [f"method {self.method}  inputs {self.inputs}"]
        width = max([len(_fmt_value(v)) for v in self.values] + [5])
        lines.append(f"{'r':>3}  {'value':>{width}}  witness")
        for r, v, w in zip(self.r, self.values, self.witnesses):
            lines.append(f"{r:>3}  {_fmt_value(v):>{width}}  {w}")
        lines += [f"note: {n}" for n in self.notes]
        if self.wall_time is not None:
            lines.append(f"wall-time {self.wall_time:.3f}s")
        return "\n".join(lines)

    def render_kv(self) -> str:
        lines = []
        for r, v, w in zip(self.r, self.values, self.witnesses):
            lines.append(f"method={self.method} inputs={self.inputs} r={r} value={_fmt_value(v)} witness={w}")
        lines += [f"method={self.method} inputs={self.inputs} note={n.replace(' ', '_')}" for n in self.notes]
        if self.wall_time is not None:
            lines.append(f"method={self.method} inputs={self.inputs} wall_time={self.wall_time:.3f}")
        return "\n".join(lines)


def _fmt_value(v) -> str:
    return "inf" if v == float("inf") else str(v)


def _fmt_tuple(t) -> str:
    if not t:
        return "-"
    return ",".join(";".join(str(x) for x in e) if isinstance(e, tuple) else str(e) for e in t)


def _fmt_rows(C: LinearCode) -> str:
    return ";".join(",".join(str(x) for x in row) for row in C.gen.rows) or "-"


def parse_range(text: str | None, top: int) -> list[int]:
    """``3``, ``1..5`` or ``1,3,5``; None means ``1..top``."""
    if text is None:
        return list(range(1, top + 1))
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad r-range {text!r}") from None
    if not out:
        raise UsageError(f"empty r-range {text!r}")
    return out


def _workers(n: int | None) -> int:
    return n if n else (os.cpu_count() or 1)


def _emit(report: RunReport, args) -> None:
    if not args.timing:
        report.wall_time = None
    print(report.render_kv() if args.format == "kv" else report.render_text())


# -- subcommands -------------------------------------------------------------

def cmd_ghw(args) -> int:
    if args.code is None and args.family is None:
        raise UsageError("one of --code or --family is required")
    C = load_code_source(args.code or args.family)
    if C.k == 0:
        raise EmptyCodeError("the code is {0}; it has no GHWs")
    rs = parse_range(None if args.all else args.r, C.k)
    for r in rs:
        if not 1 <= r <= C.k:
            raise UsageError(f"r={r} outside [1, {C.k}]")
    t0 = time.perf_counter()
    report = RunReport("ghw", digest(C))
    workers = _workers(args.workers)
    for r in rs:
        w, D = codes.ghw_witness(C, r, args.method, workers)
        report.add(r, w, _fmt_rows(D))
    report.wall_time = time.perf_counter() - t0
    _emit(report, args)
    return 0


def _constituents(args) -> list[LinearCode]:
    srcs = [args.c1, args.c2, args.c3]
    while srcs and srcs[-1] is None:
        srcs.pop()
    if any(s is None for s in srcs):
        raise UsageError("constituents must be given as --c1, --c2, ... without gaps")
    return [load_code_source(s) for s in srcs]


_SHAPES = {
    "2x2-general": 2, "2x2-nz": 2, "2x2-z": 2, "h2-nested": 2, "h3-nested": 3, "h3-s2": 2,
}


def cmd_bound(args) -> int:
    method = args.method
    t0 = time.perf_counter()
    if method == "rs-formula" and args.c1 is None:
        if None in (args.n, args.k1, args.k2):
            raise UsageError("rs-formula needs --n --k1 --k2 or --c1 --c2 --matrix")
        report = RunReport(method, digest(f"rs {args.n} {args.k1} {args.k2}"))
        for r in parse_range(args.r, args.k1 + args.k2):
            report.add(r, bounds.rs_ghw_closed_form(args.n, args.k1, args.k2, r), _fmt_tuple((args.n, args.k1, args.k2)))
        report.wall_time = time.perf_counter() - t0
        _emit(report, args)
        return 0

    cs = _constituents(args)
    if not cs:
        raise UsageError(f"method {method} needs constituents --c1 ...")
    if args.matrix is None:
        raise UsageError(f"method {method} needs --matrix")
    A = read_matrix(args.matrix)
    if method in _SHAPES and len(cs) != _SHAPES[method]:
        raise UsageError(f"method {method} takes {_SHAPES[method]} constituents, got {len(cs)}")
    report = RunReport(method, digest(method, *cs, A))

    if method in ("eq2", "eq3"):
        fn = bounds.min_dist_lower_bound if method == "eq2" else bounds.min_dist_lower_bound_nsc
        report.add(1, fn(cs, A), "-")
    else:
        top = sum(C.k for C in cs)
        m = mpc.mpc_construct(cs, A) if method in ("upper", "general-exhaustive") else None
        for r in parse_range(args.r, top):
            if method == "2x2-general":
                rep = bounds.lb_2x2(*cs, A, r, "general")
            elif method == "2x2-nz":
                rep = bounds.lb_2x2(*cs, A, r, "a21_nonzero")
            elif method == "2x2-z":
                rep = bounds.lb_2x2(*cs, A, r, "a21_zero")
            elif method == "h2-nested":
                rep = bounds.lb_h2_nested(*cs, A, r)
            elif method == "h3-nested":
                rep = bounds.lb_h3_nested(*cs, A, r)
            elif method == "h3-s2":
                rep = bounds.lb_h3_s2(*cs, A, r)
            elif method == "general-exhaustive":
                rep = bounds.lb_general_exhaustive(m, r)
            elif method == "upper":
                rep = bounds.ub_ghw(m, r)
            elif method == "rs-formula":
                if len(cs) != 2:
                    raise UsageError("rs-formula takes 2 constituents")
                rep = bounds.ghw_closed_form_mds(*cs, A, r)
            else:  # argparse restricts choices
                raise UsageError(f"unknown method {method}")
            report.add(r, rep.value, _fmt_tuple(rep.witness))
            for n in rep.notes:
                note = f"r={r}: {n}"
                if note not in report.notes:
                    report.notes.append(note)
    report.wall_time = time.perf_counter() - t0
    _emit(report, args)
    return 0


def cmd_mpc_build(args) -> int:
    cs = _constituents(args)
    if not cs:
        raise UsageError("mpc-build needs constituents --c1 ...")
    A = read_matrix(args.matrix)
    code = mpc.mpc_construct(cs, A).code
    text = format_code(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_nsc_check(args) -> int:
    A = read_matrix(args.matrix)
    rep = mpc.is_nsc(A)
    deltas = [mpc.row_code_delta(A, l) for l in range(1, A.nrows + 1)]
    if args.format == "kv":
        print(f"nsc={str(rep.is_nsc).lower()} witness={_fmt_tuple(rep.witness)} "
              f"deltas={_fmt_tuple(tuple(deltas))}")
    else:
        print(f"NSC: {'yes' if rep.is_nsc else 'no'}")
        if rep.witness:
            t, *cols = rep.witness
            print(f"singular minor: t={t} columns {cols}")
        print(f"row-code distances: {deltas}")
    return 0


_REPRO_COLUMNS = {
    "rs-hierarchy": ("formula", "oracle"),
    "rm-q2": ("oracle", "bound"),
    "rm-q3": ("oracle", "bound"),
}


def cmd_reproduce(args) -> int:
    cells = reproduce.EXAMPLES[args.example]()
    left, right = _REPRO_COLUMNS.get(args.example, ("published", "computed"))
    width = max(len(c.label) for c in cells)
    failed = 0
    if args.format == "kv":
        for c in cells:
            print(f"example={args.example} cell={c.label.replace(' ', '_')} {left}={_fmt_tuple(_as_tuple(c.expected))} "
                  f"{right}={_fmt_tuple(_as_tuple(c.computed))} status={'PASS' if c.ok else 'FAIL'}")
            failed += not c.ok
    else:
        print(f"{'':<{width}}  {left:<20}  {right:<20}")
        for c in cells:
            print(f"{c.label:<{width}}  {_fmt_tuple(_as_tuple(c.expected)):<20}  "
                  f"{_fmt_tuple(_as_tuple(c.computed)):<20}  {'PASS' if c.ok else 'FAIL'}")
            failed += not c.ok
        print(f"{len(cells) - failed}/{len(cells)} cells PASS")
    return 1 if failed else 0


def _as_tuple(v):
    return v if isinstance(v, tuple) else (v,)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ghwmpc", description="Generalized Hamming weights of matrix-product codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "kv"), default="text", help="aligned text or key=value records")
        p.add_argument("--timing", action="store_true", help="append wall-clock time (output no longer deterministic)")

    def constituent_args(p):
        for i in (1, 2, 3):
            p.add_argument(f"--c{i}", help=f"constituent C{i}: code file or family literal")

    p = sub.add_parser("ghw", help="exact GHWs of a code")
    p.add_argument("--code", help="code file")
    p.add_argument("--family", help="family literal, e.g. rs:q=2^2,n=4,k=2 or rm:q=2^1,nu=1,m=3")
    p.add_argument("--r", help="r, r1..r2 or a comma list (default: all)")
    p.add_argument("--all", action="store_true", help="full weight hierarchy")
    p.add_argument("--method", choices=codes.METHODS, default="auto", help="exhaustive search strategy")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    common(p)
    p.set_defaults(func=cmd_ghw)

    p = sub.add_parser("bound", help="evaluate a GHW bound")
    p.add_argument("--method", required=True, choices=bounds.METHOD_IDS)
    constituent_args(p)
    p.add_argument("--matrix", help="structure matrix file")
    p.add_argument("--r", help="r, r1..r2 or a comma list (default: all)")
    p.add_argument("--n", type=int, help="rs-formula without codes: length")
    p.add_argument("--k1", type=int, help="rs-formula without codes: dim C1")
    p.add_argument("--k2", type=int, help="rs-formula without codes: dim C2")
    p.add_argument("--workers", type=int, default=None, help=argparse.SUPPRESS)
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("mpc-build", help="write the code file of [C1,...,Cs].A")
    constituent_args(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_mpc_build)

    p = sub.add_parser("nsc-check", help="non-singular-by-columns test of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_nsc_check)

    p = sub.add_parser("reproduce", help="recompute a published table or example")
    p.add_argument("example", choices=sorted(reproduce.EXAMPLES))
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScaleGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None and exc.report.witness:
            print(f"nsc-witness: {_fmt_tuple(exc.report.witness)}", file=sys.stderr)
        return 4
    except (UsageError, FormatError, DimensionError, EmptyCodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
