import mpmath
import pytest

mpmath.mp.dps = 40


def rel_err(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a)


@pytest.fixture
def mp_zeta():
    return lambda s: complex(mpmath.zeta(mpmath.mpc(s)))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.RESULTS[n])
