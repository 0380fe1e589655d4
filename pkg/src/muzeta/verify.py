"""Identity-verification suites driven by the ``verify`` subcommand.

Each suite yields IdentityReports in a fixed order: per-point rows follow the
grid's row-major order, then the point-free rows. Per-point work may run in a
process pool; results are collected with ``map`` so the order never depends
on scheduling.
"""
from __future__ import annotations

import cmath
import dataclasses
import math
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb
from typing import Callable

from . import abel_plana as ap
from . import bernoulli as bn
from . import gamma_binom as gb
from . import mu_series as ms
from .config import EvalConfig
from .errors import DomainError, MuZetaError, NonConvergence
from .report import GridSpec, IdentityReport, default_exclusions
from .zeta import residue_check, zeta

SUITES = ("lambda", "beta", "abel_plana", "binomial", "bernoulli", "functional")

# acceptance floors; series-based checks loosen to the configured rel_tol if larger
LAMBDA_TOL = 1e-9
DIRECT_TOL = 1e-10
PN_TOL = 1e-10
GOLDBACH_TOL = 1e-11
FUNCTIONAL_TOL = 1e-14
REFLECTION_TOL = 1e-12
PASCAL_TOL = 1e-13
PATHS_TOL = 1e-11
ALPHA_TOL = 1e-8
ABEL_TOL = 1e-9
COVARIANCE_TOL = 1e-11
BRIDGE_TOL = 1e-12
QUAD_CHECK_TOL = 1e-10

ABEL_POINTS = (-1 + 0j, -2.5 + 0j, -0.5 + 2j, -0.5 - 2j, -4.2 + 1j)
BINOM_KS = (1, 2, 3, 7, 15, 31, 40)
PN_NS = (2, 3, 5, 10, 50)


def default_grid(suite: str) -> GridSpec:
    if suite == "abel_plana":
        return GridSpec(-6.0, -0.5, -5.0, 5.0, 12, 11)
    if suite == "binomial":
        return GridSpec(-5.0, 5.0, -5.0, 5.0, 11, 11, default_exclusions(-5.0, 5.0))
    return GridSpec(-5.0, 5.0, -5.0, 5.0, 21, 21, default_exclusions(-5.0, 5.0))


class PointFailure(Exception):
    """Carries the grid point at which an evaluation error occurred."""

    def __init__(self, point: complex, error: MuZetaError):
        super().__init__(f"at s={point}: {error}")
        self.point = point
        self.error = error


def _series_tol(floor: float, cfg: EvalConfig) -> float:
    return max(floor, cfg.rel_tol)


# --- per-point work (module level so that process pools can pickle it) -----

def _lambda_rows(s: complex, cfg: EvalConfig) -> list[IdentityReport]:
    tol = _series_tol(LAMBDA_TOL, cfg)
    lam = ms.lambda_(s, cfg)
    mud = ms.mu_dirichlet(s, cfg)
    rows = [
        IdentityReport.build("lambda_sum", s, lam.value, 1.0, tol, lam.terms_used),
        IdentityReport.build("mu_dirichlet", s, mud.value, ms.mu(s, cfg), tol, mud.terms_used),
    ]
    if ms.route_lambda(s, cfg).mode == "generic_series":
        rows.append(ms.apostol_form_check(s, cfg, tol))
    return rows


def _functional_rows(s: complex, cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    if abs(2.0 - s - 1.0) > cfg.pole_exclusion_radius:
        rows.append(ms.mu_functional_check(s, cfg, FUNCTIONAL_TOL))
    if s.real > 1.0 + cfg.direct_margin:
        d = ms.mu_direct(s, cfg)
        rows.append(IdentityReport.build("mu_direct", s, d.value, ms.mu(s, cfg),
                                         _series_tol(DIRECT_TOL, cfg), d.terms_used))
    if abs(s - 1.0) > 0.1:
        for n in PN_NS:
            p = ms.p_n_series(n, s, cfg)
            rows.append(IdentityReport.build(f"p_n_series_n{n}", s, p.value, ms.p_n_closed(n, s, cfg),
                                             _series_tol(PN_TOL, cfg), p.terms_used))
    if s.real < 1.0:
        q = ms.integral_0_1_direct(s, cfg)
        rows.append(IdentityReport.build("lower_limit_zero", s, q.value, ms.mu_lower_limit_zero(s, cfg),
                                         max(QUAD_CHECK_TOL, cfg.quad_tol), q.nodes_used))
    return rows


def _abel_rows(s: complex, cfg: EvalConfig) -> list[IdentityReport]:
    rows = [
        ap.abel_plana_zeta_check(s, cfg, min(ABEL_TOL, cfg.quad_tol)),
        ap.gamma_zeta_integral_check(s, cfg, max(QUAD_CHECK_TOL, cfg.quad_tol)),
        ap.sin_identity_check(s, REFLECTION_TOL),
    ]
    b2 = ap.bose_integral(s, ap.TWO_PI, cfg)
    b1 = ap.bose_integral(s, 1.0, cfg)
    scaled = cmath.exp((s - 1.0) * math.log(ap.TWO_PI)) * b1.value
    rows.append(IdentityReport.build("bose_scale_covariance", s, b2.value, scaled,
                                     max(COVARIANCE_TOL, cfg.quad_tol), b1.nodes_used + b2.nodes_used))
    return rows


def _binomial_rows(s: complex, cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    for k in BINOM_KS:
        lhs = (-1) ** k * gb.binom(1.0 - s, k, cfg)
        rhs = gb.binom(k + s - 2.0, k, cfg)
        rows.append(IdentityReport.build(f"binom_reflection_k{k}", s, lhs, rhs, REFLECTION_TOL, k))
    for k in BINOM_KS:
        lhs = gb.binom(s, k + 1, cfg) * (k + 1)
        rhs = gb.binom(s, k, cfg) * (s - k)
        rows.append(IdentityReport.build(f"binom_pascal_k{k}", s, lhs, rhs, PASCAL_TOL, k))
    for k in (8, 24, 64):
        if gb.near_integer(s, 1e-3) is None:
            lhs = gb._falling_product(s, k)
            rhs = cmath.exp(gb._falling_loggamma(s, k, cfg))
            rows.append(IdentityReport.build(f"falling_paths_k{k}", s, lhs, rhs, PATHS_TOL, k))
    return rows


_POINT_WORK: dict[str, Callable[[complex, EvalConfig], list[IdentityReport]]] = {
    "lambda": _lambda_rows,
    "functional": _functional_rows,
    "abel_plana": _abel_rows,
    "binomial": _binomial_rows,
}


def _point_job(args):
    suite, s, cfg = args
    try:
        return _POINT_WORK[suite](s, cfg)
    except MuZetaError as exc:
        return PointFailure(s, exc)


def _point_rows(suite: str, grid: GridSpec, cfg: EvalConfig, jobs: int) -> list[IdentityReport]:
    pts = [s for s in grid.points() if not grid.excluded(s)]
    if suite == "abel_plana":
        pts = [s for s in pts if s.real < 0]
    work = [(suite, s, cfg) for s in pts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_point_job, work, chunksize=8))
    else:
        results = [_point_job(w) for w in work]
    rows: list[IdentityReport] = []
    for res in results:
        if isinstance(res, PointFailure):
            raise res
        rows.extend(res)
    return rows


# --- point-free rows ---------------------------------------------------------

def _lambda_scalar_rows(cfg: EvalConfig) -> list[IdentityReport]:
    g = ms.goldbach_sum(cfg)
    rows = [IdentityReport.build("goldbach_sum", 0.0, g.value, 1.0,
                                 _series_tol(GOLDBACH_TOL, cfg), g.terms_used)]
    rows.extend(residue_check(cfg=cfg))
    return rows


def _beta_rows(cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    for m in range(0, -21, -1):
        closed = ms.beta_closed(m)
        rows.append(IdentityReport.build("beta_exact", m, ms.beta_exact(m), closed, 0.0, 1 - m))
        rows.append(IdentityReport.build("beta_zeta_form", m, ms.beta_zeta_form(m), closed, 0.0, 1 - m))
        rows.append(IdentityReport.build("beta_bernoulli_form", m, ms.beta_bernoulli_form(m), closed,
                                         0.0, 1 - m))
        rows.append(IdentityReport.build("lambda_integer_exact", m, ms.lambda_integer_exact(m),
                                         Fraction(1), 0.0, 2 - m))
    return rows


def _binomial_scalar_rows(cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    for s0 in range(0, -11, -1):
        for k in range(1, 4 - s0):
            lhs = Fraction(comb(1 - s0, k))
            rhs = Fraction(2 - k - s0, 2 - s0) * (comb(2 - s0, 2 - k - s0) if 2 - k - s0 >= 0 else 0)
            rows.append(IdentityReport.build(f"successive_binomial_k{k}", s0, lhs, rhs, 0.0, k))
    for n in range(1, 31):
        total = Fraction(sum((-1) ** j * comb(n, j) for j in range(n + 1)))
        rows.append(IdentityReport.build("alternating_binomial_sum", n, total, Fraction(0), 0.0, n + 1))
    for p in range(1, 11):
        a = gb.alpha_limit(p, cfg=cfg)
        rows.append(IdentityReport.build("alpha_limit", p, a.value, complex(float(gb.alpha(p))),
                                         ALPHA_TOL, a.terms_used))
    return rows


def _bernoulli_rows(cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    for q in range(2, 51):
        total = sum((comb(q, k) * bn.bernoulli_exact(k) for k in range(q)), Fraction(0))
        rows.append(IdentityReport.build("bernoulli_recurrence", q, total, Fraction(0), 0.0, q))
    for k in range(1, 26):
        rows.append(IdentityReport.build("bernoulli_odd_zero", 2 * k + 1, bn.bernoulli_exact(2 * k + 1),
                                         Fraction(0), 0.0, 1))
    for q in range(1, 21):
        rows.append(IdentityReport.build("bernoulli_sum", q, bn.bernoulli_sum_check(q), Fraction(-1),
                                         0.0, q))
    for k in range(1, 13):
        rows.append(IdentityReport.build("zeta_trivial_zero", -2 * k, bn.zeta_neg_int(2 * k),
                                         Fraction(0), 0.0, 1))
        sign = 1 if bn.bernoulli_exact(2 * k) > 0 else -1
        rows.append(IdentityReport.build("bernoulli_even_sign", 2 * k, Fraction(sign),
                                         Fraction((-1) ** (k + 1)), 0.0, 1))
    rows.append(IdentityReport.build("zeta_neg_one", -1, bn.zeta_neg_int(1), Fraction(-1, 12), 0.0, 1))
    rows.append(IdentityReport.build("zeta_neg_three", -3, bn.zeta_neg_int(3), Fraction(1, 120), 0.0, 1))
    for q in range(0, 13):
        z = zeta(-q, cfg)
        exact = float(bn.zeta_neg_int(q))
        rep = IdentityReport.build("zeta_bernoulli_bridge", -q, z.value, exact, BRIDGE_TOL, z.terms_used)
        # compared absolutely: half the targets are trivial zeros
        rows.append(dataclasses.replace(rep, passed=rep.abs_error <= BRIDGE_TOL))
    return rows


def _functional_scalar_rows(cfg: EvalConfig) -> list[IdentityReport]:
    ratios = ms.term_ratios(4, 0.3 + 0.7j, 1000, cfg)
    return [IdentityReport.build("p_n_ratio_limit", 4, ratios[-1], 0.25, 4e-3, len(ratios) + 1)]


def _abel_scalar_rows(cfg: EvalConfig) -> list[IdentityReport]:
    rows = []
    for s in ABEL_POINTS:
        rows.extend(_abel_rows(s, cfg))
    return rows


_SCALAR_WORK = {
    "lambda": _lambda_scalar_rows,
    "beta": _beta_rows,
    "binomial": _binomial_scalar_rows,
    "bernoulli": _bernoulli_rows,
    "functional": _functional_scalar_rows,
    "abel_plana": _abel_scalar_rows,
}


def run_suite(suite: str, cfg: EvalConfig, grid: GridSpec | None = None,
              jobs: int = 1) -> list[IdentityReport]:
    """Rows for one suite; ``grid`` defaults to the suite's own grid."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    rows: list[IdentityReport] = []
    if suite in _POINT_WORK:
        rows.extend(_point_rows(suite, grid or default_grid(suite), cfg, jobs))
    try:
        rows.extend(_SCALAR_WORK[suite](cfg))
    except MuZetaError as exc:
        raise PointFailure(complex("nan"), exc) from exc
    return rows


def run(suite: str, cfg: EvalConfig, grid: GridSpec | None = None, jobs: int = 1) -> list[IdentityReport]:
    names = SUITES if suite == "all" else (suite,)
    rows: list[IdentityReport] = []
    for name in names:
        rows.extend(run_suite(name, cfg, grid, jobs))
    return rows


def build_report(suite: str, cfg: EvalConfig, rows: list[IdentityReport],
                 started_at: str | None = None) -> dict:
    passed = sum(r.passed for r in rows)
    return {
        "suite": suite,
        "config": dataclasses.asdict(cfg),
        "started_at": started_at,
        "rows": [r.to_json() for r in rows],
        "summary": {"total": len(rows), "passed": passed, "failed": len(rows) - passed},
    }


def random_points(n: int, re_range: tuple, im_range: tuple, seed: int,
                  avoid: Callable[[complex], bool] = lambda s: False) -> list[complex]:
    """Deterministic pseudo-random sample points."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = complex(rng.uniform(*re_range), rng.uniform(*im_range))
        if not avoid(s):
            out.append(s)
    return out


__all__ = ["SUITES", "run", "run_suite", "build_report", "default_grid", "PointFailure",
           "random_points", "DomainError", "NonConvergence"]
