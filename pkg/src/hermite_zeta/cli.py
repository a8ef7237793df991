"""Command-line interface: ``eval``, ``verify`` and ``table``.

Exit codes: 0 ok, 1 domain or usage error, 2 quadrature did not converge,
3 an identity check failed, 4 output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields

from .errors import DomainError, HermiteZetaError, NonFiniteIntegrand
from .hurwitz import (
    METHODS,
    verify_eq2,
    verify_neg_int,
    verify_recurrence,
    verify_representations,
    zeta,
)
from .identities import IDENTITIES, IdentityArgs, verify_identity
from .numerics import Tolerances

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CONVERGENCE = 2
EXIT_VERIFY = 3
EXIT_IO = 4

EVAL_HEADER = ("s_re", "s_im", "u", "method", "value_re", "value_im", "est_error", "n_evals", "elapsed_ms")
REPORT_HEADER = (
    "identity", "s_re", "s_im", "u", "x", "t",
    "lhs_re", "lhs_im", "rhs_re", "rhs_im",
    "abs_residual", "rel_residual", "floor", "converged", "passed",
)


class UsageError(Exception):
    pass


def fmt(value):
    """Shortest round-trip text for a float (at most 17 significant digits)."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


@dataclass(frozen=True)
class EvalRecord:
    s_re: float
    s_im: float
    u: float
    method: str
    value_re: float
    value_im: float
    est_error: float
    n_evals: int
    elapsed_ms: float

    def row(self):
        return [self.method if f.name == "method" else fmt(getattr(self, f.name)) for f in fields(self)]

    def to_json(self):
        return json.dumps(asdict(self))

    @classmethod
    def from_row(cls, row):
        vals = dict(zip(EVAL_HEADER, row))
        return cls(
            **{k: float(vals[k]) for k in ("s_re", "s_im", "u", "value_re", "value_im", "est_error", "elapsed_ms")},
            method=vals["method"],
            n_evals=int(vals["n_evals"]),
        )


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        for v in (self.start, self.stop, self.step):
            if not math.isfinite(v):
                raise UsageError(f"grid values must be finite, got {self}")
        if not self.step > 0:
            raise UsageError(f"grid step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise UsageError(f"grid start {self.start} exceeds stop {self.stop}")

    def __len__(self):
        return math.floor((self.stop - self.start) / self.step + 1 + 1e-9)

    def points(self):
        pts = [self.start + i * self.step for i in range(len(self))]
        # snap the last point onto stop when it lands within the slack
        if pts and abs(pts[-1] - self.stop) <= 1e-12 * max(1.0, abs(self.stop)):
            pts[-1] = self.stop
        return pts


def parse_grid(text):
    """``a:b:step`` (inclusive), a single number, or a comma list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid must look like start:stop:step, got {text!r}")
            return GridSpec(*(float(p) for p in parts)).points()
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed grid {text!r}") from None


def parse_s(text):
    """``re`` or ``re,im``."""
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise UsageError(f"--s takes 're' or 're,im', got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"malformed --s value {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _tolerances(args):
    return Tolerances(rel_tol=args.tol, max_levels=args.max_levels)


def _add_tol_flags(p):
    p.add_argument("--tol", type=float, default=1e-13, help="relative tolerance (default 1e-13)")
    p.add_argument("--max-levels", type=int, default=12, help="step-halving levels (default 12)")


def _evaluate(s, u, method, tol, timing=True):
    t0 = time.perf_counter()
    res = zeta(s, u, method, tol)
    elapsed = (time.perf_counter() - t0) * 1e3 if timing else 0.0
    value = complex(res.value)
    rec = EvalRecord(s.real, s.imag, float(u), res.method, value.real, value.imag,
                     float(res.err_estimate), int(res.n_evals), elapsed)
    return rec, res.converged


def _write_csv(stream, header, rows):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_eval(args):
    s = parse_s(args.s)
    rec, converged = _evaluate(s, args.u, args.method, _tolerances(args))
    if args.format == "json":
        print(rec.to_json())
    elif args.format == "csv":
        _write_csv(sys.stdout, EVAL_HEADER, [rec.row()])
    else:
        sign = "+" if rec.value_im >= 0 else "-"
        print(
            f"zeta({fmt(rec.s_re)}{'+' if rec.s_im >= 0 else '-'}{fmt(abs(rec.s_im))}i, {fmt(rec.u)}) = "
            f"{fmt(rec.value_re)} {sign} {fmt(abs(rec.value_im))}i  "
            f"(+/- {rec.est_error:.3g}, {rec.method}, {rec.n_evals} evals, {rec.elapsed_ms:.2f} ms)"
        )
    if not converged:
        print("quadrature did not reach the requested tolerance", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


_TWO_PI = 2.0 * math.pi

# Default grids, used when a grid flag is omitted.
DEFAULT_GRIDS = {
    "chen": {"s": [0.5, 1.0, 1.5, 2.5, 4.0], "u": [0.5, 1.0, 3.0], "x": [0.0, 0.5, 2.0, 10.0]},
    "legendre": {"t": [1e-3, 0.1, 1.0, _TWO_PI, 10.0, 50.0]},
    "arctan": {"x": [0.0, 0.5, 1.0, 10.0], "u": [0.25, 1.0, 4.0]},
    "limit": {"s": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6], "x": [1.0], "u": [1.0]},
    "fubini": {"s": [2.0, 0.5, 1.5], "u": [1.0, 2.0]},
    "eq3-eq4": {"s": [-0.5, -0.9, 0.5, 2.5, 3 + 4j], "u": [0.5, 1.0, 3.0]},
    "recurrence": {"s": [-0.5, 0.5, 1.5, 2.0, 2.5, 3.0, 5.5], "u": [0.25, 0.5, 1.0, 2.0, 3.0, 7.0]},
    "neg-int": {"s": [0.0, -1.0, -2.0, -3.0, -4.0, -5.0], "u": [0.3, 1.0, 2.5]},
}

# which grid flags each identity reads, in loop order (outermost first)
_IDENTITY_AXES = {
    "chen": ("s", "u", "x"),
    "legendre": ("t",),
    "arctan": ("x", "u"),
    "limit": ("s", "x", "u"),
    "fubini": ("s", "u"),
    "eq3-eq4": ("s", "u"),
    "recurrence": ("s", "u"),
    "neg-int": ("s", "u"),
}


def _grid_values(args, identity, axis):
    flag = getattr(args, f"{axis}_grid")
    if flag is None:
        return list(DEFAULT_GRIDS[identity][axis])
    vals = parse_grid(flag)
    if axis == "s":
        return [complex(v, args.s_im) for v in vals]
    return vals


def _run_check(identity, point, tol):
    s = point.get("s")
    if identity in IDENTITIES:
        return verify_identity(identity, IdentityArgs(**point), tol)
    if identity == "fubini":
        return verify_eq2(s, point["u"], tol)
    if identity == "eq3-eq4":
        return verify_representations(s, point["u"], tol)
    if identity == "recurrence":
        return verify_recurrence(s, point["u"], tol)
    # neg-int
    s = complex(s)
    if s.imag != 0.0 or s.real > 0 or s.real != round(s.real):
        raise DomainError(f"neg-int takes nonpositive integer s, got {s}")
    return verify_neg_int(int(-s.real), point["u"], tol)


def _report_row(rep):
    a = rep.args
    s = complex(a.s) if a.s is not None else None
    opt = lambda v: "" if v is None else fmt(v)
    return [
        rep.identity,
        opt(None if s is None else s.real),
        opt(None if s is None else s.imag),
        opt(a.u), opt(a.x), opt(a.t),
        fmt(rep.lhs.real), fmt(rep.lhs.imag), fmt(rep.rhs.real), fmt(rep.rhs.imag),
        fmt(rep.abs_residual), fmt(rep.rel_residual), fmt(rep.floor),
        fmt(rep.converged), fmt(rep.passed),
    ]


def _grid_points(args, identity):
    axes = _IDENTITY_AXES[identity]
    points = [{}]
    for axis in axes:
        vals = _grid_values(args, identity, axis)
        points = [dict(p, **{axis: v}) for p in points for v in vals]
    return points


def cmd_verify(args):
    identity = args.identity
    if identity not in _IDENTITY_AXES:
        raise UsageError(f"unknown identity {identity!r}; choose from {', '.join(_IDENTITY_AXES)}")
    tol = _tolerances(args)
    reports = [_run_check(identity, p, tol) for p in _grid_points(args, identity)]
    rows = [_report_row(r) for r in reports]
    if args.format == "json":
        for row in rows:
            print(json.dumps(dict(zip(REPORT_HEADER, row))))
    elif args.format == "csv":
        _write_csv(sys.stdout, REPORT_HEADER, rows)
    else:
        for rep in reports:
            status = "PASS" if rep.passed else "FAIL"
            print(f"{status} {rep.identity}({rep.args.describe()}): |lhs-rhs| = {rep.abs_residual:.3e}")
    n_fail = sum(not r.passed for r in reports)
    print(f"{len(reports) - n_fail}/{len(reports)} passed", file=sys.stderr)
    return EXIT_VERIFY if n_fail else EXIT_OK


def cmd_table(args):
    if args.s_grid is None or args.u_grid is None:
        raise UsageError("table needs --s-grid and --u-grid")
    s_vals = [complex(v, args.s_im) for v in parse_grid(args.s_grid)]
    u_vals = parse_grid(args.u_grid)
    tol = _tolerances(args)
    rows = []
    all_converged = True
    for s in s_vals:
        for u in u_vals:
            rec, converged = _evaluate(s, u, args.method, tol, timing=args.timing)
            rows.append(rec.row())
            all_converged &= converged
    buf = io.StringIO()
    _write_csv(buf, EVAL_HEADER, rows)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    if not all_converged:
        print("some rows did not reach the requested tolerance", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="hermite-zeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    methods = ["auto", *METHODS]

    p = sub.add_parser("eval", help="evaluate zeta(s, u) once")
    p.add_argument("--method", choices=methods, default="auto")
    p.add_argument("--s", required=True, help="'re' or 're,im'")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--format", choices=["csv", "json", "plain"], default="plain")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check an identity over a grid")
    p.add_argument("--identity", required=True, help=", ".join(_IDENTITY_AXES))
    for axis in ("s", "u", "x", "t"):
        p.add_argument(f"--{axis}-grid", default=None, help="start:stop:step, a value, or a comma list")
    p.add_argument("--s-im", type=float, default=0.0, help="imaginary part added to every s")
    p.add_argument("--format", choices=["csv", "json", "plain"], default="csv")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="write a CSV table of zeta(s, u) over a grid")
    p.add_argument("--s-grid", required=True)
    p.add_argument("--s-im", type=float, default=0.0)
    p.add_argument("--u-grid", required=True)
    p.add_argument("--method", choices=methods, default="hermite")
    p.add_argument("--out", required=True)
    p.add_argument("--timing", action="store_true", help="record wall time (makes output non-reproducible)")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonFiniteIntegrand as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except HermiteZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
