"""Exception hierarchy shared by every module."""


class MuZetaError(ArithmeticError):
    """Base class for evaluation failures."""


class DomainError(MuZetaError):
    """Argument outside the domain of the requested function."""


class PoleError(DomainError):
    """Argument inside the exclusion disk of a pole."""


class EvaluationOverflow(DomainError):
    """Result not representable as a finite double."""


class NonConvergence(MuZetaError):
    """A truncated sum, extrapolation or quadrature failed to reach tolerance."""
