"""Analytic continuation of int_1^oo x^-s dx through the Riemann zeta function."""
from .abel_plana import (abel_plana_zeta_check, bose_integral, gamma_zeta_integral_check,
                         sin_identity_check)
from .bernoulli import bernoulli_exact, bernoulli_sum_check, zeta_neg_int
from .config import DEFAULT_CONFIG, EvalConfig, SeriesEvaluation
from .errors import DomainError, EvaluationOverflow, MuZetaError, NonConvergence, PoleError
from .gamma_binom import alpha, alpha_limit, binom, falling_factorial, log_gamma
from .mu_series import (LambdaRouting, apostol_form_check, beta_exact, goldbach_sum,
                        lambda_, lambda_integer_exact, mu, mu_direct, mu_dirichlet,
                        mu_functional_check, mu_lower_limit_zero, p_n_closed, p_n_series)
from .quadrature import QuadratureResult
from .report import GridSpec, IdentityReport
from .zeta import residue_check, zeta, zeta_minus_one

__version__ = "0.1.0"
