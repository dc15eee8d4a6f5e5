"""Numerical ranges of compressed shifts on the bidisk.

Core pipeline: degree-(1,1) rational inner factors (`rif`) feed the exact
matrix Toeplitz symbol (`symbol`); numerical ranges of its values sweep
out the region (`nrange`); for the squared normalized factor the boundary
has a closed form (`boundary`); `checks` cross-validates everything.
"""

from .boundary import (
    Branch,
    CircleFamily,
    EnvelopeCurve,
    circle_at,
    convexity_check,
    envelope,
    envelope_residuals,
    hull_vs_envelope,
    non_circularity_gap,
    normalize_coeffs,
    reparam_consistency,
)
from .checks import CheckResult, run_verification
from .errors import (
    DenominatorZero,
    ExceptionalSlice,
    InvalidDegree,
    MathValidationError,
    NonpositiveCoefficient,
    NotHermitian,
    NotSingularOnTorus,
    RifRangeError,
    RootfindFailure,
    UnstableDenominator,
    UsageError,
    ZeroOutsideDisk,
)
from .nrange import (
    EllipseDisk,
    PlanarRegion,
    SupportSamples,
    WitnessVerdict,
    ZeroVerdict,
    ellipse_from_2x2,
    hermitian_eigs,
    hull_boundary_distance,
    minor_axis_identity_residual,
    monotone_chain,
    normalized_factors,
    numerical_radius,
    point_in_hull,
    region_hull,
    support_function,
    zero_test_general,
    zero_test_normalized,
)
from .poly2 import (
    BivariatePoly,
    StabilityClass,
    UnivariatePoly,
    eval2,
    linear_stability_check,
    reflect,
    roots,
)
from .rif import (
    RifFactor,
    RifProduct,
    backward_shift_residual,
    eval_product,
    factor_from_coeffs,
    parse_factor_config,
    product_from_coeffs,
    slice_blaschke,
)
from .symbol import (
    MatrixSymbol,
    RationalFunc,
    basis_gram,
    build_symbol,
    eval_symbol,
    render_symbol,
    slice_isometry_residual,
    tmw_matrix,
)

__version__ = "0.1.0"
