from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import EvaluationOverflow


@dataclass(frozen=True)
class EvalConfig:
    """Tolerances and truncation limits used by every evaluator."""

    rel_tol: float = 1e-12
    max_terms: int = 10_000
    em_cutoff_N: int = 32
    em_order_M: int = 16
    integer_snap_radius: float = 1e-9
    pole_exclusion_radius: float = 1e-8
    quad_tol: float = 1e-11
    quad_tmax_factor: float = 40.0
    product_cutoff: int = 64
    direct_margin: float = 0.05

    def __post_init__(self):
        for name in ("rel_tol", "integer_snap_radius", "pole_exclusion_radius",
                     "quad_tol", "quad_tmax_factor", "direct_margin"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.max_terms < 64:
            raise ValueError("max_terms must be >= 64")
        if self.em_order_M < 2 or self.em_order_M % 2:
            raise ValueError("em_order_M must be even and >= 2")
        if self.em_cutoff_N < 2:
            raise ValueError("em_cutoff_N must be >= 2")
        if self.product_cutoff < 1:
            raise ValueError("product_cutoff must be >= 1")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class SeriesEvaluation:
    """Value of a truncated infinite sum together with its truncation diagnostics."""

    value: complex
    terms_used: int
    tail_estimate: float
    converged: bool
    warnings: tuple = field(default=())


def as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise EvaluationOverflow(f"non-finite value {z!r}")
    return z


def checked(z: complex) -> complex:
    """Raise instead of letting inf/nan escape."""
    if cmath.isfinite(z):
        return z
    raise EvaluationOverflow(f"result overflowed: {z!r}")
