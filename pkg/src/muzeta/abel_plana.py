"""Abel-Plana check for f(x) = x^-s.

For Re(s) < 0 the Abel-Plana formula applied to x^-s reads

    zeta(s) - int_0^oo x^-s dx = 2 sin(pi s / 2) int_0^oo t^-s / (e^(2 pi t) - 1) dt,

and the right side equals zeta(s) by the functional equation. The checks
below compute the Bose-type integral by quadrature and compare it with the
zeta module, which pins the continued value of int_0^oo x^-s dx to 0.
"""
from __future__ import annotations

import cmath
import math

from .config import DEFAULT_CONFIG, EvalConfig, as_complex
from .errors import DomainError, NonConvergence
from .gamma_binom import log_gamma, near_integer, sinpi
from .quadrature import EPS, QuadratureResult, tanh_sinh
from .report import IdentityReport
from .zeta import zeta

TWO_PI = 2.0 * math.pi
NEAR_ZERO_ABS_TOL = 1e-11
_ZERO_BAND = 1e-3


def _tail_bound(s: complex, scale: float, T: float) -> float:
    # int_T^oo t^p e^(-c t) / (1 - e^(-c T)) dt, p = -Re(s); valid for T >= 2p/c
    p = -s.real
    return 2.0 * T ** p * math.exp(-scale * T) / scale / -math.expm1(-scale * T)


def bose_integral(s, scale: float = 1.0, cfg: EvalConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """int_0^oo t^-s / (e^(scale t) - 1) dt for Re(s) < 0.

    Tanh-sinh on (0, 1] absorbs the t^(-s-1) singularity at the origin; a
    second tanh-sinh panel covers [1, t_max], with t_max pushed out until the
    exponential tail bound is negligible.
    """
    s = as_complex(s)
    if s.real >= 0:
        raise DomainError(f"bose_integral needs Re(s) < 0; got {s}")
    if scale <= 0:
        raise DomainError("scale must be positive")
    p = -s.real

    def f(t: float) -> complex:
        return cmath.exp(-s * math.log(t)) / math.expm1(scale * t)

    def eval_err(t: float) -> float:
        # exp amplifies the rounding of -s log t into the phase
        return EPS * (8.0 + abs(s) * abs(math.log(t)))

    def left_mass(d: float) -> float:
        return d ** p / (p * scale)

    tol = 0.25 * cfg.quad_tol
    left = tanh_sinh(f, 0.0, 1.0, tol, left_mass=left_mass, strict=False, eval_err=eval_err)
    T = max(cfg.quad_tmax_factor / scale, 2.0, 2.0 * p / scale + 1.0)
    while True:
        right = tanh_sinh(f, 1.0, T, tol, strict=False, eval_err=eval_err)
        value = left.value + right.value
        tail = _tail_bound(s, scale, T)
        if tail <= 0.01 * cfg.quad_tol * abs(value):
            break
        T *= 1.5
    err = left.error_estimate + right.error_estimate + tail
    if err > cfg.quad_tol * abs(value):
        raise NonConvergence(f"bose_integral({s}, {scale:.6g}): error estimate {err:.3e} "
                             f"above {cfg.quad_tol:.1e} relative")
    return QuadratureResult(value, left.nodes_used + right.nodes_used, err, T)


def sin_identity_check(s, tol: float = 1e-13) -> IdentityReport:
    """i^(1-s) + (-i)^(1-s) against 2 sin(pi s / 2), principal branches."""
    s = as_complex(s)
    z = 1.0 - s
    lhs = cmath.exp(z * 0.5j * math.pi) + cmath.exp(-z * 0.5j * math.pi)
    rhs = 2.0 * cmath.sin(0.5 * math.pi * s)
    rep = IdentityReport.build("sin_identity", s, lhs, rhs, tol)
    # absolute criterion: rhs may vanish or grow like e^(pi |Im s| / 2)
    scale = max(1.0, abs(rhs))
    return _with_pass(rep, rep.abs_error <= tol * scale)


def _with_pass(rep: IdentityReport, passed: bool) -> IdentityReport:
    return IdentityReport(rep.identity_id, rep.point, rep.lhs, rep.rhs, rep.abs_error,
                          rep.rel_error, passed, rep.terms_used)


def abel_plana_zeta_check(s, cfg: EvalConfig = DEFAULT_CONFIG, tol: float | None = None) -> IdentityReport:
    """2 sin(pi s/2) * bose_integral(s, 2 pi) against zeta(s), Re(s) < 0.

    Passes when |R - zeta(s)| <= tol (1 + |zeta(s)|); within 1e-3 of a
    negative even integer both sides vanish and the absolute tolerance
    1e-11 is used instead.
    """
    s = as_complex(s)
    if s.real >= 0:
        raise DomainError(f"Abel-Plana reduction needs Re(s) < 0; got {s}")
    tol = cfg.quad_tol if tol is None else tol
    quad = bose_integral(s, TWO_PI, cfg)
    lhs = 2.0 * sinpi(0.5 * s) * quad.value
    rhs = zeta(s, cfg).value
    rep = IdentityReport.build("abel_plana_zeta", s, lhs, rhs, tol, quad.nodes_used)
    m = near_integer(s, _ZERO_BAND)
    if m is not None and m < 0 and m % 2 == 0:
        return _with_pass(rep, rep.abs_error <= NEAR_ZERO_ABS_TOL)
    return _with_pass(rep, rep.abs_error <= tol * (1.0 + abs(rhs)))


def gamma_zeta_integral_check(s, cfg: EvalConfig = DEFAULT_CONFIG,
                              tol: float | None = None) -> IdentityReport:
    """bose_integral(s, 1) against Gamma(1-s) zeta(1-s)."""
    s = as_complex(s)
    if s.real >= 0:
        raise DomainError(f"integral representation needs Re(s) < 0; got {s}")
    tol = cfg.quad_tol if tol is None else tol
    quad = bose_integral(s, 1.0, cfg)
    rhs = cmath.exp(log_gamma(1.0 - s, cfg)) * zeta(1.0 - s, cfg).value
    return IdentityReport.build("gamma_zeta_integral", s, quad.value, rhs, tol, quad.nodes_used)
