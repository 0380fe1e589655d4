import threading
from fractions import Fraction
from math import comb

import pytest

from muzeta import bernoulli_exact, bernoulli_sum_check, zeta_neg_int
from muzeta.bernoulli import bernoulli_table


def akiyama_tanigawa(n):
    """Independent oracle; yields the B_1 = +1/2 convention."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


ORACLE = akiyama_tanigawa(60)
ORACLE[1] = -ORACLE[1]


def test_examples():
    assert bernoulli_exact(0) == 1
    assert bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(2) == Fraction(1, 6)
    assert bernoulli_exact(12) == Fraction(-691, 2730)


def test_matches_independent_oracle():
    assert bernoulli_table(60) == ORACLE


def test_zeta_neg_int_examples():
    assert zeta_neg_int(1) == Fraction(-1, 12)
    assert zeta_neg_int(3) == Fraction(1, 120)
    assert zeta_neg_int(0) == Fraction(-1, 2)


@pytest.mark.parametrize("q", [1, 3, 10, 40])
def test_bernoulli_sum_is_minus_one(q):
    assert bernoulli_sum_check(q) == -1


@pytest.mark.parametrize("k", range(1, 26))
def test_odd_vanish(k):
    assert bernoulli_exact(2 * k + 1) == 0


@pytest.mark.parametrize("q", range(2, 51))
def test_recurrence_holds(q):
    assert sum(comb(q, k) * bernoulli_exact(k) for k in range(q)) == 0


@pytest.mark.parametrize("k", range(1, 13))
def test_trivial_zeros_and_signs(k):
    assert zeta_neg_int(2 * k) == 0
    assert (float(bernoulli_exact(2 * k)) > 0) == (k % 2 == 1)


def test_beyond_table_and_concurrent_reads():
    results = []

    def worker():
        results.append(bernoulli_exact(130))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
    # B_130 sign: (-1)^(65+1) > 0
    assert results[0] > 0


def test_negative_rejected():
    with pytest.raises(ValueError):
        bernoulli_exact(-1)
    with pytest.raises(ValueError):
        bernoulli_sum_check(0)
