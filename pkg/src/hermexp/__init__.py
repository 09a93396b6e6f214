"""Hermite expansions of operator groups, cosine and sine functions."""

from .expansion_engine import (
    cosine_partial,
    error_curve,
    fejer_expansion,
    group_partial,
    holo_series,
    laguerre_partial,
    lemma33_check,
    partial_sums,
    rate_fit,
    sine_partial,
)
from .hermite_core import (
    QuadratureError,
    h_fn,
    h_norm,
    hermite_poly,
    hermite_zeros,
    muckenhoupt_calibrate,
    ortho_hermite,
    ortho_hermite_seq,
)
from .operator_models import (
    BlockCosineLift,
    DiagonalCosine,
    DiagonalGroup,
    MatrixGroup,
    ShiftGroup,
    coeff_analytic,
    evolve,
    fejer_family_direct,
    resolvent_power,
    subordinated_exact,
)
from .quadrature import coeff_by_quadrature, gauss_hermite_rule, lp_error_on_line
from .scalar_expansions import ScalarSeriesSpec, cos_partial, exp_partial
from .signedlog import LogVector, SignedLogValue

__version__ = "0.1.0"
