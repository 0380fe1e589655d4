"""Identity reports and evaluation grids."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


def _abs_diff(lhs, rhs) -> float:
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        return float(abs(lhs - rhs))
    return abs(complex(lhs) - complex(rhs))


@dataclass(frozen=True)
class IdentityReport:
    """One verified instance of an identity at a sample point."""

    identity_id: str
    point: complex
    lhs: complex
    rhs: complex
    abs_error: float
    rel_error: float
    passed: bool
    terms_used: int

    @classmethod
    def build(cls, identity_id: str, point, lhs, rhs, tol: float,
              terms_used: int = 0) -> "IdentityReport":
        """Compare ``lhs`` against ``rhs``.

        ``rel_error`` is measured against |rhs|; when the right side is zero
        it falls back to the absolute error. Fractions are compared exactly
        before projection to floats.
        """
        abs_error = _abs_diff(lhs, rhs)
        scale = abs(complex(rhs))
        rel_error = abs_error / scale if scale > 0 else abs_error
        if not math.isfinite(rel_error):
            passed = False
        elif isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            passed = lhs == rhs
        else:
            passed = rel_error <= tol
        return cls(identity_id, complex(point), complex(lhs), complex(rhs),
                   abs_error, rel_error, passed, terms_used)

    def to_json(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "point": _cv(self.point),
            "lhs": _cv(self.lhs),
            "rhs": _cv(self.rhs),
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "passed": self.passed,
            "terms_used": self.terms_used,
        }


def _cv(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    re_steps: int
    im_steps: int
    exclusions: tuple = field(default=())

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid needs re_min < re_max and im_min < im_max")
        if self.re_steps < 1 or self.im_steps < 1:
            raise ValueError("grid steps must be >= 1")
        if any(r <= 0 for _, r in self.exclusions):
            raise ValueError("exclusion radii must be positive")

    @classmethod
    def parse(cls, text: str, exclusions=()) -> "GridSpec":
        """Parse ``re_min:re_max,im_min:im_max,RxI``."""
        try:
            re_part, im_part, steps = text.split(",")
            re_min, re_max = (float(v) for v in re_part.split(":"))
            im_min, im_max = (float(v) for v in im_part.split(":"))
            r, i = (int(v) for v in steps.lower().split("x"))
        except ValueError as exc:
            raise ValueError(f"bad grid {text!r}; expected re_min:re_max,im_min:im_max,RxI") from exc
        return cls(re_min, re_max, im_min, im_max, r, i, tuple(exclusions))

    def with_exclusions(self, extra) -> "GridSpec":
        return GridSpec(self.re_min, self.re_max, self.im_min, self.im_max,
                        self.re_steps, self.im_steps, self.exclusions + tuple(extra))

    def _axis(self, lo: float, hi: float, steps: int) -> list[float]:
        if steps == 1:
            return [lo]
        return [lo + (hi - lo) * j / (steps - 1) for j in range(steps)]

    def points(self) -> list[complex]:
        """All grid points in row-major order (imaginary part outer)."""
        res = self._axis(self.re_min, self.re_max, self.re_steps)
        ims = self._axis(self.im_min, self.im_max, self.im_steps)
        return [complex(x, y) for y in ims for x in res]

    def excluded(self, s: complex) -> bool:
        return any(abs(s - c) < r for c, r in self.exclusions)


def default_exclusions(re_min: float, re_max: float, pole_radius: float = 0.05,
                       integer_radius: float = 1e-3) -> tuple:
    """Guard disks around s = 1 and around the non-positive integers in range."""
    disks = [(1 + 0j, pole_radius)]
    m = min(0, math.ceil(re_max))
    while m >= math.floor(re_min) - 1:
        disks.append((complex(m, 0), integer_radius))
        m -= 1
    return tuple(disks)
