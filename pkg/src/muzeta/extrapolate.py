from __future__ import annotations

from typing import Sequence

from .config import SeriesEvaluation
from .errors import NonConvergence


def richardson_to_zero(xs: Sequence[float], ys: Sequence[complex], tol: float,
                       what: str = "extrapolation") -> SeriesEvaluation:
    """Extrapolate samples y(x) to x -> 0 with Neville's polynomial scheme.

    The k-th extrapolant interpolates the first k+1 samples. Convergence is
    declared when the last two extrapolants agree to ``tol`` (absolute, or
    relative when the limit exceeds one in magnitude).
    """
    if len(xs) != len(ys) or len(xs) < 3:
        raise ValueError("need at least three samples")
    p = list(ys)
    diag = [p[0]]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            x_lo, x_hi = xs[i], xs[i + level]
            p[i] = (x_lo * p[i + 1] - x_hi * p[i]) / (x_lo - x_hi)
        diag.append(p[0])
    value = diag[-1]
    change = abs(diag[-1] - diag[-2])
    scale = max(1.0, abs(value))
    if change > tol * scale:
        raise NonConvergence(f"{what}: extrapolants still moving by {change:.3e}")
    return SeriesEvaluation(value, n, change, True)
