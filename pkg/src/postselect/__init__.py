"""Post-selected unitary realizations of linear maps on projective space.

The package realizes arbitrary operators as post-selected blocks of
one-ancilla unitaries, decides which finite transformations of complex
projective space extend to (limits of) projective-linear maps, and
measures how the volume of approximable transformations scales with
the approximation tolerance.
"""

from .errors import (
    BadOptions,
    BadWeights,
    DegenerateGrid,
    DimensionMismatch,
    FormatError,
    InfiniteRangePoint,
    InvalidSuite,
    NonFinite,
    NotBorder,
    NotContracting,
    NotGeneralPosition,
    NotHermitian,
    NotInvertible,
    NotNormalized,
    NotOrthonormal,
    NotPSD,
    NotUnitary,
    NotUnitaryMember,
    PostselectError,
    SingularConfiguration,
    WrongDimension,
    WrongDomain,
    ZeroOperator,
)
from .linalg import hermitian_eigensystem, nullspace, orthonormal_completion
from .gram import vectors_with_gram
from .realize import (
    DilationResult,
    PostSelectOutcome,
    apply_postselected,
    contraction_spectrum,
    dilate_literal,
    exact_realize,
    realize_convex_combination,
    rho,
)
from .projective import (
    Moebius,
    ProjectivePoint,
    RiemannPoint,
    apply_ql,
    chordal_distance,
    cross_ratio,
    from_riemann,
    fs_distance,
    in_general_position,
    moebius_apply,
    moebius_through,
    pl_from_correspondence,
    standard_basis_point,
    to_bloch,
    to_riemann,
)
from .suites import (
    ApproxResult,
    FitOptions,
    FitResult,
    SingleQubitClass,
    Suite,
    VarietyCheck,
    averages_identity_check,
    border_sequence,
    classify_single_qubit,
    exact_realize_suite,
    fit_suite,
    is_eps_approximable,
    pl_variety_check,
)
from .montecarlo import (
    ScalingReport,
    estimate_exact_fraction,
    estimate_fraction,
    fit_scaling,
    predicted_exponent,
    run_scaling_experiment,
    sample_point,
    sample_rng,
    sample_suite,
)
from .channel import (
    DensityMatrix,
    KrausChannel,
    apply_channel,
    build_kraus,
    postselect_branch,
)
from .kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "BadOptions",
    "BadWeights",
    "DegenerateGrid",
    "DensityMatrix",
    "DilationResult",
    "DimensionMismatch",
    "FitOptions",
    "FitResult",
    "FormatError",
    "InfiniteRangePoint",
    "InvalidSuite",
    "KERNEL_IMPLEMENTATION",
    "KrausChannel",
    "Moebius",
    "NonFinite",
    "NotBorder",
    "NotContracting",
    "NotGeneralPosition",
    "NotHermitian",
    "NotInvertible",
    "NotNormalized",
    "NotOrthonormal",
    "NotPSD",
    "NotUnitary",
    "NotUnitaryMember",
    "PostSelectOutcome",
    "PostselectError",
    "ProjectivePoint",
    "RiemannPoint",
    "ScalingReport",
    "SingleQubitClass",
    "SingularConfiguration",
    "Suite",
    "VarietyCheck",
    "WrongDimension",
    "WrongDomain",
    "ZeroOperator",
    "apply_channel",
    "apply_postselected",
    "apply_ql",
    "averages_identity_check",
    "border_sequence",
    "build_kraus",
    "chordal_distance",
    "classify_single_qubit",
    "contraction_spectrum",
    "cross_ratio",
    "dilate_literal",
    "estimate_exact_fraction",
    "estimate_fraction",
    "exact_realize",
    "exact_realize_suite",
    "fit_scaling",
    "fit_suite",
    "from_riemann",
    "fs_distance",
    "hermitian_eigensystem",
    "in_general_position",
    "is_eps_approximable",
    "moebius_apply",
    "moebius_through",
    "nullspace",
    "orthonormal_completion",
    "pl_from_correspondence",
    "pl_variety_check",
    "postselect_branch",
    "predicted_exponent",
    "realize_convex_combination",
    "rho",
    "run_scaling_experiment",
    "sample_point",
    "sample_rng",
    "sample_suite",
    "standard_basis_point",
    "to_bloch",
    "to_riemann",
    "vectors_with_gram",
]
