"""Complex log-gamma, falling factorials and generalized binomial coefficients."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .bernoulli import bernoulli_exact
from .config import DEFAULT_CONFIG, EvalConfig, SeriesEvaluation, as_complex, checked
from .errors import DomainError, PoleError

LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING_SHIFT = 12.0
# B_{2j} / (2j (2j-1)) for the Stirling series of log Gamma
_STIRLING = [float(bernoulli_exact(2 * j)) / (2 * j * (2 * j - 1)) for j in range(1, 13)]


def nearest_integer(z: complex) -> int:
    return int(math.floor(z.real + 0.5))


def near_integer(z: complex, radius: float) -> int | None:
    """Integer m with |z - m| < radius, else None."""
    m = nearest_integer(z)
    return m if abs(z - m) < radius else None


def sinpi(z: complex) -> complex:
    """sin(pi z) with exact zeros at the integers."""
    x, y = z.real, z.imag
    r = math.fmod(x, 2.0)
    if y == 0.0 and r == int(r):
        return 0j
    s, c = _sincospi_real(r)
    return complex(s * math.cosh(math.pi * y), c * math.sinh(math.pi * y))


def _sincospi_real(r: float) -> tuple[float, float]:
    # exact at multiples of 1/2
    if r == int(r):
        return 0.0, (1.0 if int(r) % 2 == 0 else -1.0)
    if 2 * r == int(2 * r):
        return (1.0 if int(2 * r) % 4 in (1, -3) else -1.0), 0.0
    return math.sin(math.pi * r), math.cos(math.pi * r)


def _log_sinpi(z: complex) -> complex:
    """Principal log of sin(pi z); avoids cosh overflow for large |Im z|."""
    if abs(z.imag) < 200.0:
        return cmath.log(sinpi(z))
    # sin(pi z) = e^{-i pi z sgn} (e^{2 i pi z sgn} - 1) / (2i sgn), sgn = sign(Im z)
    sgn = 1.0 if z.imag > 0 else -1.0
    w = -1j * math.pi * z * sgn + cmath.log((cmath.exp(2j * math.pi * z * sgn) - 1.0) / (2j * sgn))
    im = math.remainder(w.imag, 2.0 * math.pi)
    if im == -math.pi:
        im = math.pi
    return complex(w.real, im)


def _log_gamma_right(z: complex) -> complex:
    # Re z >= 0.5: shift to Re >= 12 and apply Stirling
    shift = 0j
    while z.real < _STIRLING_SHIFT:
        shift += cmath.log(z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    acc = 0j
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    return (z - 0.5) * cmath.log(z) - z + HALF_LOG_2PI + acc * inv - shift


def log_gamma(z, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Log-gamma on the standard branch (cut along the negative real axis).

    Agrees with ``scipy.special.loggamma``: real for positive real ``z`` and
    analytic off the negative real axis, so ``exp(log_gamma(z)) == Gamma(z)``.

    Raises PoleError within ``cfg.integer_snap_radius`` of 0, -1, -2, ...
    """
    z = as_complex(z)
    m = near_integer(z, cfg.integer_snap_radius)
    if m is not None and m <= 0:
        raise PoleError(f"Gamma has a pole at z={m}")
    if z.real >= 0.5:
        return checked(_log_gamma_right(z))
    # reflection, with the 2 pi i correction that keeps the branch continuous
    k = math.floor(0.5 * z.real + 0.25)
    turn = math.copysign(2.0 * math.pi, z.imag) * k
    return checked(complex(LOG_PI, turn) - _log_sinpi(z) - _log_gamma_right(1.0 - z))


def gamma(z, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    return checked(cmath.exp(log_gamma(z, cfg)))


def _falling_product(s: complex, k: int) -> complex:
    acc = 1 + 0j
    for j in range(k):
        acc *= s - j
    return acc


def _falling_loggamma(s: complex, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    # log of (s)_k via gamma ratios; the caller handles exact zeros
    m = near_integer(s, cfg.integer_snap_radius)
    if m is not None and m >= 0:
        # s - k + 1 >= 1 here, so Gamma(s+1)/Gamma(s-k+1) has no poles
        return log_gamma(s + 1.0, cfg) - log_gamma(s - k + 1.0, cfg)
    # (s)_k = (-1)^k Gamma(k - s) / Gamma(-s)
    return log_gamma(k - s, cfg) - log_gamma(-s, cfg) + (1j * math.pi * (k % 2))


def falling_factorial(s, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """(s)_k = s (s-1) ... (s-k+1); direct product up to ``cfg.product_cutoff``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    s = as_complex(s)
    m = near_integer(s, cfg.integer_snap_radius)
    if m is not None and 0 <= m < k:
        return 0j
    if k <= cfg.product_cutoff:
        return checked(_falling_product(s, k))
    return checked(cmath.exp(_falling_loggamma(s, k, cfg)))


def binom(s, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Generalized binomial coefficient C(s, k) = (s)_k / k!.

    Exactly zero when ``s`` snaps to a nonnegative integer m < k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    s = as_complex(s)
    m = near_integer(s, cfg.integer_snap_radius)
    if m is not None and 0 <= m < k:
        return 0j
    if k <= cfg.product_cutoff:
        acc = 1 + 0j
        for j in range(k):
            acc *= (s - j) / (j + 1)
        return checked(acc)
    return checked(cmath.exp(_falling_loggamma(s, k, cfg) - math.lgamma(k + 1)))


def alpha(p: int) -> Fraction:
    """Closed-form limit of C(p-1+eps, p) zeta(1-eps) as eps -> 0: exactly -1/p."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return Fraction(-1, p)


DEFAULT_EPS = tuple(0.1 * 2.0 ** -j for j in range(8))


def alpha_limit(p: int, eps_sequence: Sequence[float] = DEFAULT_EPS,
                cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-10) -> SeriesEvaluation:
    """Numerically extrapolate C(p-1+eps, p) zeta(1-eps) to eps -> 0."""
    from .extrapolate import richardson_to_zero
    from .zeta import zeta

    if p < 1:
        raise ValueError("p must be >= 1")
    _check_eps(eps_sequence, cfg)
    ys = [binom(p - 1 + e, p, cfg) * zeta(1.0 - e, cfg).value for e in eps_sequence]
    return richardson_to_zero(eps_sequence, ys, tol, what=f"alpha({p})")


def _check_eps(eps_sequence: Sequence[float], cfg: EvalConfig) -> None:
    eps = list(eps_sequence)
    if len(eps) < 3:
        raise DomainError("eps_sequence needs at least three values")
    if any(not (cfg.pole_exclusion_radius < e <= 0.1) for e in eps):
        raise DomainError("eps values must lie in (pole_exclusion_radius, 0.1]")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise DomainError("eps_sequence must be strictly decreasing")
