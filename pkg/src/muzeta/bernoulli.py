"""Exact Bernoulli numbers and zeta at the non-positive integers.

Convention: B_1 = -1/2, so that zeta(0) = B_1 = -1/2.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

TABLE_SIZE = 128

_table: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def _extend(q: int) -> None:
    with _lock:
        # recurrence sum_{k=0}^{n-1} C(n, k) B_k = 0 for n >= 2, solved for B_{n-1}
        while len(_table) <= q:
            n = len(_table) + 1
            acc = sum(comb(n, k) * _table[k] for k in range(n - 1))
            _table.append(-acc / n)


def bernoulli_exact(q: int) -> Fraction:
    if q < 0:
        raise ValueError("q must be >= 0")
    if len(_table) <= q:
        _extend(max(q, TABLE_SIZE))
    return _table[q]


def bernoulli_table(n_max: int) -> list[Fraction]:
    """B_0 .. B_{n_max} inclusive."""
    bernoulli_exact(n_max)
    return _table[: n_max + 1]


def zeta_neg_int(q: int) -> Fraction:
    """zeta(-q) = (-1)^q B_{q+1} / (q+1), exact."""
    if q < 0:
        raise ValueError("q must be >= 0")
    return (-1) ** q * bernoulli_exact(q + 1) / (q + 1)


def bernoulli_sum_check(q: int) -> Fraction:
    """sum_{k=1}^{q} C(q+1, k) B_k; equals -1 for every q >= 1."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return sum((comb(q + 1, k) * bernoulli_exact(k) for k in range(1, q + 1)), Fraction(0))
