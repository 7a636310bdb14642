"""Exact product moments of multivariate Gaussian random variables."""
from .coefficients import coefficient_closed_form, coefficient_recursive, coefficient_univariate
from .core import (
    EXACT,
    FLOAT,
    GaussianSpec,
    InvariantError,
    MomentPolynomial,
    MomentTerm,
    MultiIndex,
    PairExponentMatrix,
    ResidualDegrees,
    UnsupportedOperationError,
    ValidationError,
    make_gaussian_spec,
    make_multi_index,
    standard_spec,
)
from .evaluator import build_polynomial, differentiate_wrt_cov, evaluate, moment, to_symbolic
from .oracles import McReport, cholesky, isserlis_sum, mc_estimate, stein_moment
from .support import count_support, enumerate_support, is_admissible, residual_degrees

__version__ = "0.1.0"
