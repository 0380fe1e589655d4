"""Riemann zeta on C \\ {1}: Euler-Maclaurin for Re(s) >= 1/2, reflection below."""
from __future__ import annotations

import cmath
import math
from typing import Sequence

from .bernoulli import bernoulli_exact
from .config import DEFAULT_CONFIG, EvalConfig, SeriesEvaluation, as_complex, checked
from .errors import NonConvergence, PoleError
from .gamma_binom import DEFAULT_EPS, _check_eps, log_gamma, sinpi

LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)
EULER_GAMMA = 0.5772156649015329
STIELTJES_1 = -0.07281584548367672
REFLECT_BELOW = 0.5
_ORIGIN_DISK = 0.25

_log_cache: list[float] = [0.0, 0.0]
_em_coef_cache: dict[int, list[float]] = {}


def _log_n(n: int) -> float:
    while len(_log_cache) <= n:
        _log_cache.append(math.log(len(_log_cache)))
    return _log_cache[n]


def _em_coefs(M: int) -> list[float]:
    # B_{2j} / (2j)!, j = 1..M+1 (the last one feeds the remainder bound)
    coefs = _em_coef_cache.get(M)
    if coefs is None:
        coefs = [float(bernoulli_exact(2 * j)) / math.factorial(2 * j) for j in range(1, M + 2)]
        _em_coef_cache[M] = coefs
    return coefs


def _check_pole(s: complex, cfg: EvalConfig) -> None:
    if abs(s - 1.0) <= cfg.pole_exclusion_radius:
        raise PoleError("pole at s=1")


def _euler_maclaurin(s: complex, cfg: EvalConfig, start: int) -> SeriesEvaluation:
    """sum_{n >= start} n^-s with an adaptive cutoff N and order M."""
    M = cfg.em_order_M
    coefs = _em_coefs(M)
    N = max(cfg.em_cutoff_N, start + 1)
    while True:
        head = 0j
        for n in range(start, N):
            head += cmath.exp(-s * _log_n(n))
        logN = _log_n(N)
        N_s = cmath.exp(-s * logN)
        acc = N_s * N / (s - 1.0) + 0.5 * N_s
        # term_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
        rising = s
        power = N_s / N
        inv_N2 = 1.0 / (N * N)
        for j in range(M):
            acc += coefs[j] * rising * power
            rising *= (s + 2 * j + 1) * (s + 2 * j + 2)
            power *= inv_N2
        value = head + acc
        sigma = s.real
        bound = abs(coefs[M] * rising * power)
        if sigma + 2 * M + 1 > 0:
            bound *= abs(s + 2 * M + 1) / (sigma + 2 * M + 1)
        else:
            bound = math.inf
        if bound <= 0.1 * cfg.rel_tol * max(abs(value), 1e-300):
            return SeriesEvaluation(checked(value), N - start + M, bound, True)
        if 2 * N > cfg.max_terms:
            raise NonConvergence(f"zeta({s!r}): Euler-Maclaurin remainder {bound:.3e} "
                                 f"above tolerance at N={N}")
        N *= 2


def _reflect(s: complex, cfg: EvalConfig, inner: SeriesEvaluation) -> complex:
    # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    sin_half = sinpi(0.5 * s)
    if sin_half == 0:
        return 0j
    log_factor = s * LOG2 + (s - 1.0) * LOGPI + log_gamma(1.0 - s, cfg)
    return checked(cmath.exp(log_factor) * sin_half * inner.value)


def zeta(s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Riemann zeta at complex ``s`` with relative error about ``cfg.rel_tol``.

    Raises PoleError within ``cfg.pole_exclusion_radius`` of s = 1.
    """
    s = as_complex(s)
    _check_pole(s, cfg)
    if s.real >= REFLECT_BELOW or abs(s) < _ORIGIN_DISK:
        # near the origin zeta(1-s) has a pole; Euler-Maclaurin is still valid there
        return _euler_maclaurin(s, cfg, start=1)
    inner = _euler_maclaurin(1.0 - s, cfg, start=1)
    value = _reflect(s, cfg, inner)
    tail = inner.tail_estimate / abs(inner.value) * abs(value) if inner.value else 0.0
    return SeriesEvaluation(value, inner.terms_used, tail, inner.converged)


def zeta_minus_one(s, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """zeta(s) - 1 without the cancellation of subtracting 1 from zeta(s).

    For Re(s) >= 1/2 the n = 1 term is simply never added: a short direct sum
    with an integral tail bound when that suffices, otherwise Euler-Maclaurin
    started at n = 2. Below Re(s) = 1/2 zeta(s) is O(1) or larger and
    ``zeta(s) - 1`` is fine.
    """
    s = as_complex(s)
    _check_pole(s, cfg)
    if s.real < REFLECT_BELOW and abs(s) >= _ORIGIN_DISK:
        z = zeta(s, cfg)
        return SeriesEvaluation(z.value - 1.0, z.terms_used, z.tail_estimate, z.converged)
    sigma = s.real
    if sigma > 2.0:
        direct = _direct_minus_one(s, cfg)
        if direct is not None:
            return direct
    return _euler_maclaurin(s, cfg, start=2)


def _direct_minus_one(s: complex, cfg: EvalConfig) -> SeriesEvaluation | None:
    # smallest N with integral tail N^(1-sigma)/(sigma-1) below rel_tol * 2^-sigma / 10
    sigma = s.real
    target = math.log(0.1 * cfg.rel_tol) - sigma * LOG2 + math.log(sigma - 1.0)
    N = math.ceil(math.exp(target / (1.0 - sigma)))
    if N > cfg.em_cutoff_N:
        return None
    N = max(N, 2)
    value = 0j
    for n in range(2, N + 1):
        value += cmath.exp(-s * _log_n(n))
    tail = math.exp((1.0 - sigma) * _log_n(N)) / (sigma - 1.0)
    return SeriesEvaluation(checked(value), N - 1, tail, True)


def zeta_near_pole(delta: complex) -> complex:
    """zeta(1 + delta) from the Laurent expansion; for |delta| well below 1e-3."""
    return 1.0 / delta + EULER_GAMMA - STIELTJES_1 * delta


def residue_check(eps_sequence: Sequence[float] = DEFAULT_EPS,
                  cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-8) -> list:
    """Extrapolate eps*zeta(1+eps) and eps*Gamma(eps) to eps -> 0.

    Returns two IdentityReports (zeta residue, Gamma residue), each compared
    against the limit 1.
    """
    from .extrapolate import richardson_to_zero
    from .report import IdentityReport

    _check_eps(eps_sequence, cfg)
    zs = [e * zeta(1.0 + e, cfg).value for e in eps_sequence]
    gs = [e * cmath.exp(log_gamma(e, cfg)) for e in eps_sequence]
    z_lim = richardson_to_zero(eps_sequence, zs, 0.1 * tol, what="eps*zeta(1+eps)")
    g_lim = richardson_to_zero(eps_sequence, gs, 0.1 * tol, what="eps*Gamma(eps)")
    n = len(eps_sequence)
    return [
        IdentityReport.build("zeta_residue", 1.0, z_lim.value, 1.0, tol, n),
        IdentityReport.build("gamma_residue", 0.0, g_lim.value, 1.0, tol, n),
    ]
