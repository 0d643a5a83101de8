"""Recover polynomials in several variables from directional derivative samples."""

from .errors import (
    BirkhoffError,
    DegenerateNodeError,
    DegreeError,
    DimensionMismatchError,
    FitError,
    InvalidDimensionError,
    SchemaError,
    SchemeShapeError,
    SingularSchemeError,
)
from .fit import FitProblem, FitResult, Target, minimax_fit, robust_experiment
from .grids import Ball, Box
from .norming import (
    NormingBoundTrace,
    chebyshev_derivative_at_one,
    norming_bound,
    remez_theta,
    robustness_bound,
    scheme_norming_bound,
)
from .polyspace import (
    Polynomial,
    directional_derivative,
    enumerate_multi_indices,
    eval_poly,
    homogeneous_component,
    homogeneous_dim,
    random_polynomial,
    restrict_to_line,
)
from .solver import (
    Node,
    SampleSet,
    Scheme,
    apply_functionals,
    cardinal_basis,
    estimate_direction_theta,
    estimate_norming_constant,
    random_exact_scheme,
    solve_full,
    solve_staged,
)
from .vandermonde import (
    DirectionSet,
    RegularityReport,
    build_homogeneous_vandermonde,
    check_scheme_regularity,
    planar_product_determinant,
    vandermonde_determinant,
)

__version__ = "0.1.0"
