"""Truncated summation with a three-small-terms stopping rule."""
from __future__ import annotations

import math
from typing import Iterable

from .config import SeriesEvaluation, checked
from .errors import NonConvergence

ABS_FLOOR = 1e-300
_QUIET_RUN = 3


def sum_series(terms: Iterable[complex], rel_tol: float, max_terms: int,
               what: str = "series") -> SeriesEvaluation:
    """Sum ``terms`` until three consecutive terms fall below ``rel_tol``.

    A term counts as small when ``|term| < rel_tol * max(|partial|, 1e-30)``.
    The tail beyond the last term is extrapolated geometrically from the
    largest of the last three term ratios; a ratio >= 1 gives an infinite
    tail and a non-converged result.

    Raises NonConvergence when ``max_terms`` terms are consumed first.
    """
    partial = 0j
    quiet = 0
    used = 0
    mags: list[float] = []
    for term in terms:
        used += 1
        partial += term
        mag = abs(term)
        mags.append(mag)
        if len(mags) > _QUIET_RUN + 1:
            del mags[0]
        if mag < rel_tol * max(abs(partial), 1e-30):
            quiet += 1
        else:
            quiet = 0
        if quiet >= _QUIET_RUN:
            break
        if used >= max_terms:
            raise NonConvergence(f"{what}: no convergence after {max_terms} terms "
                                 f"(partial {partial!r})")
    else:
        # finite iterator ran out: the sum is exact up to rounding
        return SeriesEvaluation(checked(partial), used, 0.0, True)

    tail = geometric_tail(mags)
    converged = tail <= rel_tol * max(abs(partial), ABS_FLOOR)
    return SeriesEvaluation(checked(partial), used, tail, converged)


def geometric_tail(mags: list[float]) -> float:
    last = mags[-1]
    if last == 0.0:
        return 0.0
    ratios = [b / a for a, b in zip(mags, mags[1:]) if a > 0.0]
    if not ratios:
        return last
    r = max(ratios)
    if r >= 1.0:
        return math.inf
    return last * r / (1.0 - r)
