"""The monomial integral mu(s) = int_1^oo x^-s dx and its zeta-series continuation.

Integrating x^-s over [n-1, n] and expanding (n-1)^(1-s) binomially turns the
integral into a series in zeta(k+s-1) - 1 whose sum lambda(s) equals 1 on all
of C minus {1}. Away from the non-positive integers lambda is evaluated as a
truncated series; at s = m <= 0 the series splits into a finite exact part
(beta), a single 0*inf limit term (alpha) and identically vanishing terms, all
of which are evaluated in rational arithmetic.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator

from .bernoulli import bernoulli_exact, zeta_neg_int
from .config import DEFAULT_CONFIG, EvalConfig, SeriesEvaluation, as_complex, checked
from .errors import DomainError, NonConvergence, PoleError
from .gamma_binom import alpha, binom, near_integer
from .series import sum_series
from .zeta import _em_coefs, _log_n, zeta_minus_one, zeta_near_pole

NEAR_SINGULAR_BAND = 1e-3


def _check_pole(s: complex, cfg: EvalConfig) -> None:
    if abs(s - 1.0) <= cfg.pole_exclusion_radius:
        raise PoleError("pole at s=1")


def _npow(n: int, a: complex) -> complex:
    # n^a on the principal branch, n >= 1 real
    return cmath.exp(a * _log_n(n))


def p_n_closed(n: int, s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """int_{n-1}^{n} x^-s dx = (n^(1-s) - (n-1)^(1-s)) / (1-s)."""
    if n < 2:
        raise DomainError("P_n needs n >= 2")
    s = as_complex(s)
    _check_pole(s, cfg)
    a = 1.0 - s
    return checked((_npow(n, a) - _npow(n - 1, a)) / a)


def _p_n_terms(n: int, s: complex, cfg: EvalConfig) -> Iterator[complex]:
    a = 1.0 - s
    k = 1
    while True:
        yield (-1) ** k * binom(a, k, cfg) * _npow(n, a - k)
        k += 1


def p_n_series(n: int, s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """P_n(s) from the binomial expansion of (n-1)^(1-s) around n.

    (1/(s-1)) sum_{k>=1} (-1)^k C(1-s, k) n^(1-s-k); successive terms shrink
    by a factor tending to 1/n.
    """
    if n < 2:
        raise DomainError("P_n needs n >= 2")
    s = as_complex(s)
    _check_pole(s, cfg)
    res = sum_series(_p_n_terms(n, s, cfg), cfg.rel_tol, cfg.max_terms, what=f"P_{n}({s})")
    scale = 1.0 / (s - 1.0)
    return SeriesEvaluation(checked(res.value * scale), res.terms_used,
                            res.tail_estimate * abs(scale), res.converged)


def term_ratios(n: int, s, k_max: int, cfg: EvalConfig = DEFAULT_CONFIG) -> list[float]:
    """|t_{k+1} / t_k| for the P_n series, k = 1 .. k_max - 1.

    Formed from binomial ratios times 1/n so that large k does not underflow.
    """
    s = as_complex(s)
    a = 1.0 - s
    coefs = [binom(a, k, cfg) for k in range(1, k_max + 1)]
    return [abs(c1 / c0) / n for c0, c1 in zip(coefs, coefs[1:])]


def _expm1(z: complex) -> complex:
    if abs(z) > 1e-2:
        return cmath.exp(z) - 1.0
    # Taylor series, good to double precision for |z| <= 1e-2
    acc, term = 0j, 1 + 0j
    for j in range(1, 11):
        term *= z / j
        acc += term
    return acc


def _pow_diff(N: int, b: complex) -> complex:
    """N^b - (N-1)^b without cancellation when b is small."""
    lo = _log_n(N - 1)
    return cmath.exp(b * lo) * _expm1(b * (_log_n(N) - lo))


def _p_tail_euler_maclaurin(s: complex, N: int, cfg: EvalConfig) -> tuple[complex, float]:
    """sum_{n >= N} P_n(s), treating P_x as a smooth function of x.

    Uses int_N^oo P_x dx = -(N^(2-s) - (N-1)^(2-s)) / ((1-s)(2-s)) and the
    derivatives d^m/dx^m P_x = (-s)_(m-1) (x^(1-s-m) - (x-1)^(1-s-m)).
    """
    a = 1.0 - s
    b = a + 1.0
    if abs(b) > 1e-12:
        integral = -_pow_diff(N, b) / (a * b)
    else:
        integral = complex(_log_n(N) - _log_n(N - 1))
    value = integral + 0.5 * (_npow(N, a) - _npow(N - 1, a)) / a
    coefs = _em_coefs(cfg.em_order_M)
    M = cfg.em_order_M
    fall = 1 + 0j  # (a-1)_(m-1) for m = 2j-1
    for j in range(1, M + 2):
        m = 2 * j - 1
        deriv = fall * (_npow(N, a - m) - _npow(N - 1, a - m))
        if j == M + 1:
            bound = abs(coefs[M] * deriv)
            break
        value -= coefs[j - 1] * deriv
        fall *= (a - m) * (a - m - 1)
    return value, bound


def mu_direct(s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """sum_{n>=2} P_n(s) in the region of absolute convergence Re(s) > 1 + margin.

    The head sum_{n=2}^{N-1} P_n is added term by term; the remainder is
    handled by Euler-Maclaurin with the remainder integral as its leading
    term. N doubles until the remainder bound is below tolerance.
    """
    s = as_complex(s)
    if s.real <= 1.0 + cfg.direct_margin:
        raise DomainError(f"mu_direct needs Re(s) > {1.0 + cfg.direct_margin}; got {s}")
    N = cfg.em_cutoff_N
    while True:
        head = 0j
        for n in range(2, N):
            head += p_n_closed(n, s, cfg)
        tail, bound = _p_tail_euler_maclaurin(s, N, cfg)
        value = head + tail
        if bound <= 0.1 * cfg.rel_tol * abs(value):
            return SeriesEvaluation(checked(value), N - 2 + cfg.em_order_M, bound, True)
        if 2 * N > cfg.max_terms:
            raise NonConvergence(f"mu_direct({s}): remainder {bound:.3e} at N={N}")
        N *= 2


@dataclass(frozen=True)
class LambdaRouting:
    mode: str
    snapped_integer: int | None = None


def route_lambda(s, cfg: EvalConfig = DEFAULT_CONFIG) -> LambdaRouting:
    s = as_complex(s)
    m = near_integer(s, cfg.integer_snap_radius)
    if m is not None and m <= 0:
        return LambdaRouting("integer_exact", m)
    return LambdaRouting("generic_series")


def lambda_terms(s, cfg: EvalConfig = DEFAULT_CONFIG) -> Iterator[complex]:
    """(-1)^k C(1-s, k) (zeta(k+s-1) - 1) for k = 1, 2, ...

    Terms whose binomial factor is exactly zero are 0 without touching zeta.
    An argument inside the pole disk of zeta uses the Laurent expansion.
    """
    s = as_complex(s)
    a = 1.0 - s
    k = 1
    while True:
        c = (-1) ** k * binom(a, k, cfg)
        if c == 0:
            yield 0j
        else:
            arg = k + s - 1.0
            if abs(arg - 1.0) <= cfg.pole_exclusion_radius:
                zm1 = zeta_near_pole(arg - 1.0) - 1.0
            else:
                zm1 = zeta_minus_one(arg, cfg).value
            yield c * zm1
        k += 1


def _lambda_generic(s: complex, cfg: EvalConfig) -> SeriesEvaluation:
    res = sum_series(lambda_terms(s, cfg), cfg.rel_tol, cfg.max_terms, what=f"lambda({s})")
    m = near_integer(s, NEAR_SINGULAR_BAND)
    if m is not None and m <= 0:
        return SeriesEvaluation(res.value, res.terms_used, res.tail_estimate, res.converged,
                                ("near-singular term cancellation",))
    return res


def lambda_(s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """lambda(s) = sum_{k>=1} (-1)^k C(1-s, k) (zeta(k+s-1) - 1); equal to 1.

    Non-positive integers (within ``cfg.integer_snap_radius``) go through the
    exact rational path.
    """
    s = as_complex(s)
    _check_pole(s, cfg)
    route = route_lambda(s, cfg)
    if route.mode == "integer_exact":
        m = route.snapped_integer
        return SeriesEvaluation(complex(float(lambda_integer_exact(m))), 2 - m, 0.0, True)
    res = _lambda_generic(s, cfg)
    if not res.converged:
        raise NonConvergence(f"lambda({s}): tail estimate {res.tail_estimate:.3e}")
    return res


def _check_nonpositive(m: int) -> None:
    if m > 0:
        raise DomainError("needs an integer m <= 0")


def beta_exact(m: int) -> Fraction:
    """sum_{k=1}^{1-m} (-1)^k C(1-m, k) (zeta(k+m-1) - 1), exactly.

    Every zeta argument k+m-1 is <= 0 on this range, so all values are
    Bernoulli rationals.
    """
    _check_nonpositive(m)
    total = Fraction(0)
    for k in range(1, 2 - m):
        total += (-1) ** k * comb(1 - m, k) * (zeta_neg_int(1 - k - m) - 1)
    return total


def beta_closed(m: int) -> Fraction:
    _check_nonpositive(m)
    return Fraction((-1) ** (-m), 2 - m) + 1


def beta_zeta_form(m: int) -> Fraction:
    """1 + (1/(2-m)) sum_k (-1)^k C(2-m, 2-k-m) (2-k-m) zeta(k+m-1)."""
    _check_nonpositive(m)
    acc = Fraction(0)
    for k in range(1, 2 - m):
        acc += (-1) ** k * comb(2 - m, 2 - k - m) * (2 - k - m) * zeta_neg_int(1 - k - m)
    return 1 + acc / (2 - m)


def beta_bernoulli_form(m: int) -> Fraction:
    """1 + ((-1)^(1-m)/(2-m)) sum_{k=1}^{1-m} C(2-m, k) B_k."""
    _check_nonpositive(m)
    acc = sum((comb(2 - m, k) * bernoulli_exact(k) for k in range(1, 2 - m)), Fraction(0))
    return 1 + Fraction((-1) ** (1 - m), 2 - m) * acc


def lambda_integer_exact(m: int) -> Fraction:
    """lambda at an integer m <= 0, split at k = 2-m.

    Terms k <= 1-m sum to beta(m); the k = 2-m term is the limit
    (-1)^(-m) alpha(2-m); terms k >= 3-m carry C(1-m, k) = 0.
    """
    _check_nonpositive(m)
    return beta_exact(m) + (-1) ** (-m) * alpha(2 - m)


def mu(s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Analytic continuation of int_1^oo x^-s dx: 1/(s-1)."""
    s = as_complex(s)
    _check_pole(s, cfg)
    return 1.0 / (s - 1.0)


def mu_dirichlet(s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """mu(s) = lambda(s) / (s-1), computed through the zeta series for lambda."""
    s = as_complex(s)
    _check_pole(s, cfg)
    lam = lambda_(s, cfg)
    scale = 1.0 / (s - 1.0)
    return SeriesEvaluation(checked(lam.value * scale), lam.terms_used,
                            lam.tail_estimate * abs(scale), lam.converged, lam.warnings)


def mu_functional_check(s, cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-14):
    """mu(s) + mu(2-s) against 0 (absolute)."""
    from .report import IdentityReport

    s = as_complex(s)
    _check_pole(2.0 - s, cfg)
    return IdentityReport.build("mu_functional", s, mu(s, cfg) + mu(2.0 - s, cfg), 0.0, tol)


def goldbach_tail_bound(K: int) -> float:
    """Upper bound on sum_{k>K} (zeta(k) - 1) = sum_{n>=2} n^-K / (n-1)."""
    return 2.0 ** -K + 0.5 * 3.0 ** -K * (1.0 + 3.0 / (K - 1))


def goldbach_sum(cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """sum_{k>=2} (zeta(k) - 1), truncated where the tail bound drops below rel_tol."""
    K = 2
    while goldbach_tail_bound(K) >= 0.1 * cfg.rel_tol:
        K += 1
        if K > cfg.max_terms:
            raise NonConvergence("goldbach_sum: tail bound never met")
    total = 0.0
    for k in range(2, K + 1):
        total += zeta_minus_one(float(k), cfg).value.real
    return SeriesEvaluation(complex(total), K - 1, goldbach_tail_bound(K), True)


def apostol_terms(s, cfg: EvalConfig = DEFAULT_CONFIG) -> Iterator[complex]:
    """C(k+s-2, k) (zeta(k+s-1) - 1) for k = 1, 2, ..."""
    s = as_complex(s)
    k = 1
    while True:
        c = binom(k + s - 2.0, k, cfg)
        yield 0j if c == 0 else c * zeta_minus_one(k + s - 1.0, cfg).value
        k += 1


def apostol_form_check(s, cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-9):
    """sum_{k>=1} C(k+s-2, k)(zeta(k+s-1) - 1) against 1.

    The sum is formed with the same stopping rule as lambda; its terms must
    match lambda's term by term (reflection of the binomial coefficient).
    """
    from .report import IdentityReport

    s = as_complex(s)
    _check_pole(s, cfg)
    if route_lambda(s, cfg).mode == "integer_exact":
        raise DomainError(f"apostol form undefined at non-positive integer s={s}")
    res = sum_series(apostol_terms(s, cfg), cfg.rel_tol, cfg.max_terms, what=f"apostol({s})")
    return IdentityReport.build("apostol_sum", s, res.value, 1.0, tol, res.terms_used)


def mu_lower_limit_zero(s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Continuation of int_0^1 x^-s dx, i.e. mu(2-s) = 1/(1-s)."""
    s = as_complex(s)
    return mu(2.0 - s, cfg)


def integral_0_1_direct(s, cfg: EvalConfig = DEFAULT_CONFIG):
    """Quadrature of the convergent integral int_0^1 x^-s dx, Re(s) < 1."""
    from .quadrature import EPS, tanh_sinh

    s = as_complex(s)
    if s.real >= 1.0:
        raise DomainError("int_0^1 x^-s dx diverges for Re(s) >= 1")
    left_mass = lambda d: abs(cmath.exp((1.0 - s) * math.log(d)) / (1.0 - s))  # noqa: E731
    eval_err = lambda t: EPS * (8.0 + abs(s) * abs(math.log(t)))  # noqa: E731
    return tanh_sinh(lambda t: cmath.exp(-s * math.log(t)), 0.0, 1.0, cfg.quad_tol,
                     left_mass=left_mass, eval_err=eval_err)
