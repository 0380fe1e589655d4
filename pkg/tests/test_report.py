import json
from fractions import Fraction

import pytest

from muzeta.report import GridSpec, IdentityReport, default_exclusions


def test_build_relative_and_zero_valued():
    r = IdentityReport.build("x", 1 + 1j, 1.0 + 1e-10, 1.0, 1e-9)
    assert r.passed and r.rel_error == pytest.approx(1e-10, rel=1e-5)
    z = IdentityReport.build("z", 0, 3e-15, 0.0, 1e-14)
    assert z.rel_error == z.abs_error and z.passed


def test_build_exact():
    assert IdentityReport.build("e", 0, Fraction(1, 3), Fraction(1, 3), 0.0).passed
    bad = IdentityReport.build("e", 0, Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 30), 1.0)
    assert not bad.passed


def test_nonfinite_fails():
    assert not IdentityReport.build("n", 0, float("nan"), 1.0, 1.0).passed


def test_json_fields():
    d = IdentityReport.build("x", 2 - 1j, 1.0, 1.0, 1e-9, 7).to_json()
    assert list(d) == ["identity_id", "point", "lhs", "rhs", "abs_error", "rel_error", "passed",
                       "terms_used"]
    assert d["point"] == {"re": 2.0, "im": -1.0}
    json.dumps(d)


def test_grid_parse_and_order():
    g = GridSpec.parse("-1:1,0:2,3x2")
    assert g.points() == [-1 + 0j, 0j, 1 + 0j, -1 + 2j, 2j, 1 + 2j]
    assert GridSpec.parse("0:1,0:1,1x1").points() == [0j]


@pytest.mark.parametrize("bad", ["1:0,0:1,2x2", "0:1,0:1,0x2", "0:1,0:1", "a:b,0:1,2x2"])
def test_grid_rejects(bad):
    with pytest.raises(ValueError):
        GridSpec.parse(bad)


def test_default_exclusions():
    g = GridSpec(-5, 5, -5, 5, 21, 21, default_exclusions(-5, 5))
    excluded = [s for s in g.points() if g.excluded(s)]
    assert sorted(excluded, key=lambda z: z.real) == [complex(m) for m in range(-5, 2)]
