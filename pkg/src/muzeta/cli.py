"""Command-line front end: eval, verify, sweep, bernoulli.

Exit codes: 0 success, 1 identity failure, 2 usage/domain error,
3 non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bernoulli as bn
from . import gamma_binom as gb
from . import mu_series as ms
from .config import EvalConfig, SeriesEvaluation
from .errors import DomainError, MuZetaError, NonConvergence, PoleError
from .report import GridSpec, default_exclusions
from .verify import SUITES, PointFailure, build_report, default_grid, run
from .zeta import zeta, zeta_minus_one

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3

EVAL_FUNCTIONS = ("mu", "mu_dirichlet", "mu_direct", "lambda", "beta", "zeta", "alpha")
SWEEP_FUNCTIONS = ("mu", "mu_dirichlet", "mu_direct", "lambda", "lambda_minus_one",
                   "mu_functional", "zeta", "zeta_minus_one")
CSV_COLUMNS = ("re_s", "im_s", "re_value", "im_value", "terms_used", "converged", "status")
_VALUE_OPTS = ("--s", "--grid", "--exclude")


def parse_complex(text: str) -> complex:
    """``re,im`` (comma, no spaces); a bare real is accepted too."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im; got {text!r}")


def parse_exclusion(text: str) -> tuple:
    try:
        center, radius = text.rsplit(":", 1)
        return parse_complex(center), float(radius)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected re,im:radius; got {text!r}") from exc


def parse_grid(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def fmt_real(x: float) -> str:
    return repr(float(f"{x:.12g}"))


def fmt_complex(z: complex) -> str:
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z)):
        return fmt_real(z.real)
    re, im = fmt_real(z.real), fmt_real(abs(z.imag))
    return f"{re}{'-' if z.imag < 0 else '+'}{im}i"


def _config(args) -> EvalConfig:
    kw = {}
    if args.tol is not None:
        kw["rel_tol"] = args.tol
    if args.max_terms is not None:
        kw["max_terms"] = args.max_terms
    if args.quad_tol is not None:
        kw["quad_tol"] = args.quad_tol
    if args.snap_radius is not None:
        kw["integer_snap_radius"] = args.snap_radius
    return EvalConfig(**kw)


def _as_int(s: complex, what: str) -> int:
    n = gb.nearest_integer(s)
    if s.imag != 0 or s.real != n:
        raise DomainError(f"{what} needs an integer argument; got {s}")
    return n


def _eval(function: str, s: complex, cfg: EvalConfig):
    """(value, SeriesEvaluation or None, expected or None)."""
    if function == "mu":
        return ms.mu(s, cfg), None, None
    if function == "mu_dirichlet":
        r = ms.mu_dirichlet(s, cfg)
        return r.value, r, ms.mu(s, cfg)
    if function == "mu_direct":
        r = ms.mu_direct(s, cfg)
        return r.value, r, ms.mu(s, cfg)
    if function == "lambda":
        r = ms.lambda_(s, cfg)
        return r.value, r, 1
    if function == "zeta":
        r = zeta(s, cfg)
        return r.value, r, None
    if function == "beta":
        m = _as_int(s, "beta")
        if m > 0:
            raise DomainError("beta needs an integer s <= 0")
        return ms.beta_exact(m), None, ms.beta_closed(m)
    if function == "alpha":
        p = _as_int(s, "alpha")
        if p < 1:
            raise DomainError("alpha needs an integer p >= 1")
        r = gb.alpha_limit(p, cfg=cfg)
        return r.value, r, gb.alpha(p)
    raise ValueError(function)


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return fmt_complex(complex(v))


def cmd_eval(args) -> int:
    cfg = _config(args)
    value, series, expected = _eval(args.function, args.s, cfg)
    line = _fmt_value(value)
    if expected is not None:
        line += f" (expected {_fmt_value(expected)})"
    print(line)
    if series is not None:
        print(f"terms_used: {series.terms_used}")
        print(f"tail_estimate: {series.tail_estimate:.3e}")
        for w in series.warnings:
            print(f"warning: {w}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    grid = args.grid
    if grid is not None:
        # user grids get the same pole and near-integer disks as the defaults
        grid = grid.with_exclusions(list(default_exclusions(grid.re_min, grid.re_max)) + list(args.exclude or []))
    started = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()) if args.timestamp else None
    try:
        rows = run(args.suite, cfg, grid, args.jobs)
    except PointFailure as exc:
        print(f"error at s={exc.point}: {exc.error}", file=sys.stderr)
        return EXIT_NONCONV if isinstance(exc.error, NonConvergence) else EXIT_USAGE
    report = build_report(args.suite, cfg, rows, started)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    summary = report["summary"]
    print(f"suite {args.suite}: {summary['passed']}/{summary['total']} passed, "
          f"{summary['failed']} failed")
    for r in rows:
        if not r.passed:
            print(f"FAIL {r.identity_id} at s={fmt_complex(r.point)}: rel_error {r.rel_error:.3e}")
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


def _sweep_value(function: str, s: complex, cfg: EvalConfig) -> SeriesEvaluation:
    if function == "mu":
        return SeriesEvaluation(ms.mu(s, cfg), 0, 0.0, True)
    if function == "mu_functional":
        return SeriesEvaluation(ms.mu(s, cfg) + ms.mu(2.0 - s, cfg), 0, 0.0, True)
    if function == "mu_dirichlet":
        return ms.mu_dirichlet(s, cfg)
    if function == "mu_direct":
        return ms.mu_direct(s, cfg)
    if function in ("lambda", "lambda_minus_one"):
        r = ms.lambda_(s, cfg)
        if function == "lambda_minus_one":
            return SeriesEvaluation(r.value - 1.0, r.terms_used, r.tail_estimate, r.converged)
        return r
    if function == "zeta":
        return zeta(s, cfg)
    if function == "zeta_minus_one":
        return zeta_minus_one(s, cfg)
    raise ValueError(function)


def _sweep_point(job) -> dict:
    function, s, cfg, excluded = job
    row = {"re_s": s.real, "im_s": s.imag, "re_value": None, "im_value": None,
           "terms_used": None, "converged": None, "status": "ok"}
    if excluded:
        row["status"] = "excluded"
        return row
    try:
        r = _sweep_value(function, s, cfg)
    except PoleError:
        row["status"] = "pole"
    except DomainError:
        row["status"] = "domain_error"
    except NonConvergence:
        row["status"] = "nonconvergence"
    else:
        row.update(re_value=r.value.real, im_value=r.value.imag,
                   terms_used=r.terms_used, converged=r.converged)
    return row


def sweep_rows(function: str, grid: GridSpec, cfg: EvalConfig, jobs: int = 1) -> list[dict]:
    work = [(function, s, cfg, grid.excluded(s)) for s in grid.points()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_point, work, chunksize=8))
    return [_sweep_point(w) for w in work]


def render_sweep(function: str, grid: GridSpec, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"function": function, "columns": list(CSV_COLUMNS), "rows": rows},
                          indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(["" if row[c] is None else repr(row[c]) if isinstance(row[c], float) else row[c]
                    for c in CSV_COLUMNS])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    cfg = _config(args)
    grid = args.grid or default_grid("lambda")
    grid = grid.with_exclusions([(1 + 0j, 0.05)] + list(args.exclude or []))
    rows = sweep_rows(args.function, grid, cfg, args.jobs)
    text = render_sweep(args.function, grid, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bernoulli(args) -> int:
    if not 0 <= args.n_max <= bn.TABLE_SIZE:
        print(f"n_max must be in [0, {bn.TABLE_SIZE}]", file=sys.stderr)
        return EXIT_USAGE
    show = str if args.exact else (lambda q: repr(float(q)))
    print("q\tB_q\tzeta(-q)")
    table = bn.bernoulli_table(args.n_max)
    for q, b in enumerate(table):
        print(f"{q}\t{show(b)}\t{show(bn.zeta_neg_int(q))}")
    print("B: " + ", ".join(show(b) for b in table))
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="relative series tolerance (EvalConfig.rel_tol)")
    p.add_argument("--max-terms", type=int, help="series truncation limit")
    p.add_argument("--quad-tol", type=float, help="quadrature relative tolerance")
    p.add_argument("--snap-radius", type=float, help="integer snap radius for exact routing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="muzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("function", choices=EVAL_FUNCTIONS)
    p.add_argument("--s", type=parse_complex, required=True, help="point as re,im")
    _common(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("verify", help="run identity-verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--grid", type=parse_grid, help="re_min:re_max,im_min:im_max,RxI")
    p.add_argument("--exclude", type=parse_exclusion, action="append", help="re,im:radius")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timestamp", action="store_true",
                   help="record started_at (the report is no longer byte-reproducible)")
    _common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate a function over a grid")
    p.add_argument("function", choices=SWEEP_FUNCTIONS)
    p.add_argument("--grid", type=parse_grid)
    p.add_argument("--exclude", type=parse_exclusion, action="append")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("bernoulli", help="print Bernoulli numbers and zeta(-q)")
    p.add_argument("n_max", type=int)
    p.add_argument("--exact", action="store_true", help="exact fractions instead of floats")
    p.set_defaults(handler=cmd_bernoulli)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # "--s -1,0" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_OPTS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except NonConvergence as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except (MuZetaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
