"""Chern classes of tensor products, exterior and symmetric squares."""

from .chern import (
    ChernVector,
    TotalClass,
    bundle,
    bundle_pair,
    c_polynomial,
    d_coefficients,
    d_polynomial,
    elementary_from_power_sums,
    power_sums_from_elementary,
    sym2,
    tensor_chern_character,
    tensor_companion,
    tensor_resultant,
    tensor_resultant_symmetric,
    top_chern,
    wedge2,
    wedge2_C,
    wedge_complement,
)
from .oracle import oracle_chern, symmetric_reduce
from .polymat import PolyMatrix, companion_lambda, determinant, matrix_poly_horner
from .resultant import resultant, resultant_companion, resultant_sylvester, sylvester_matrix
from .ring import Context, Polynomial, UnivariateView, as_univariate, poly_format, poly_parse

__version__ = "0.1.0"
