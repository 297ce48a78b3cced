"""Exact tools for deciding when a polynomial in an endomorphism J acts
tensorially on the Courant element, plus a symbolic algebroid engine to check
the answers on concrete data."""
from .exact import RatMatrix, Rational, as_rational, format_rational, kernel_basis
from .poly import (
    Poly3,
    PolySyntaxError,
    UniPoly,
    divide,
    evaluate,
    exact_divide,
    homogeneous_component,
    parse_poly,
    parse_poly3,
    parse_unipoly,
    substitute,
)
from .tensorial import (
    CriteriaDisagree,
    CriterionReport,
    Variant,
    Violation,
    check_all,
    coefficient_criterion,
    divisibility_criterion,
    graded_dimension,
    minimality_polynomial,
    polynomially_tensorial,
    reduce_mod_minimal,
    restrictions,
    shifted_generator,
    variety_criterion,
)

__version__ = "0.1.0"
