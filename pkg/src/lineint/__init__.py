"""Exact truncated-series calculus over rational and p-adic coefficients.

The package computes with finitely supported Laurent windows over a family
of series rings, differentiates and integrates termwise, takes logarithms of
units, trivializes framed unipotent connections, and evaluates iterated line
integrals of two-variable families along sections.
"""

from .coeff import (
    PAdic,
    Rational,
    ResidueElement,
    lift_from_residue,
    padic_normalize,
    reduce_mod_p,
)
from .errors import (
    CalculusError,
    CannotDetermineDegreeError,
    DisjointWindowsError,
    InsufficientWindowError,
    IntegralityError,
    IntegralObstructionError,
    InvalidInputError,
    NonUnitError,
    NotFramedError,
    NotIntegralError,
    ParseError,
)
from .nabla import (
    ConnectionMatrix,
    FramedNablaModule,
    InvariantRepresentative,
    Signature,
    UnipotentMatrix,
    fundamental_solution,
    horizontal_basis,
    invariant,
    is_identity_series_matrix,
    matrix_residual,
    series_matrix_product,
    trivialize,
    validate_framed,
)
from .parsing import (
    dump_biseries_matrix,
    dump_series_matrix,
    dump_unipotent,
    load_connection,
    load_connection_matrix,
    load_family,
    parse_biseries,
    parse_series,
    parse_series_matrix,
    print_biseries,
    print_series,
    rational_residue,
    structured_biseries,
    structured_series,
)
from .scheme import (
    BiForm,
    BiSeries,
    FramedFamily,
    biseries_from_map,
    curvature,
    line_integral,
    partial_u,
    partial_x,
    section_pullback,
    substitute_fiber,
    total_d,
    zero_biseries,
)
from .series import (
    DEFAULT_ABS_PREC,
    DifferentialForm,
    RingLabel,
    TruncatedSeries,
    antiderive,
    degree_of_unit,
    derive,
    dlog,
    formal_log,
    inverse,
    monomial,
    mul,
    one_series,
    padic_log_dagger,
    padic_log_one_minus_py,
    residue,
    series_from_coeffs,
    unboundedness_witness,
    unit_decompose,
    valuation_profile,
    zero_series,
)

__version__ = "0.1.0"

__all__ = [
    "BiForm",
    "BiSeries",
    "CalculusError",
    "CannotDetermineDegreeError",
    "ConnectionMatrix",
    "DEFAULT_ABS_PREC",
    "DifferentialForm",
    "DisjointWindowsError",
    "FramedFamily",
    "FramedNablaModule",
    "InsufficientWindowError",
    "IntegralityError",
    "IntegralObstructionError",
    "InvalidInputError",
    "InvariantRepresentative",
    "NonUnitError",
    "NotFramedError",
    "NotIntegralError",
    "PAdic",
    "ParseError",
    "Rational",
    "ResidueElement",
    "RingLabel",
    "Signature",
    "TruncatedSeries",
    "UnipotentMatrix",
    "antiderive",
    "biseries_from_map",
    "curvature",
    "degree_of_unit",
    "derive",
    "dlog",
    "dump_biseries_matrix",
    "dump_series_matrix",
    "dump_unipotent",
    "formal_log",
    "fundamental_solution",
    "horizontal_basis",
    "invariant",
    "is_identity_series_matrix",
    "inverse",
    "lift_from_residue",
    "line_integral",
    "load_connection",
    "load_connection_matrix",
    "load_family",
    "matrix_residual",
    "monomial",
    "mul",
    "one_series",
    "padic_log_dagger",
    "padic_log_one_minus_py",
    "padic_normalize",
    "parse_biseries",
    "parse_series",
    "parse_series_matrix",
    "partial_u",
    "partial_x",
    "print_biseries",
    "print_series",
    "rational_residue",
    "reduce_mod_p",
    "residue",
    "section_pullback",
    "series_from_coeffs",
    "series_matrix_product",
    "structured_biseries",
    "structured_series",
    "substitute_fiber",
    "total_d",
    "trivialize",
    "unboundedness_witness",
    "unit_decompose",
    "validate_framed",
    "valuation_profile",
    "zero_biseries",
    "zero_series",
]
