"""Structural stability certification and simulation of reaction networks."""

from .network import (
    Complex,
    ParseError,
    Reaction,
    ReactionNetwork,
    Species,
    distinct_complexes,
    parse_network,
    parse_network_file,
    reaction_vector,
    serialize_network,
)
from .structure import (
    RationalBasis,
    StructureReport,
    conservation_basis,
    is_weakly_reversible,
    linkage_classes,
    stoichiometric_basis,
    structure_report,
)
from .siphons import (
    EnumerationCapError,
    SiphonCatalog,
    SiphonEntry,
    all_semi_locking_sets,
    catalog_with_count,
    is_locking,
    is_semi_locking,
    minimal_semi_locking_sets,
)
from .certify import (
    BoundaryClassification,
    Certificate,
    FaceStatus,
    FaceVerdict,
    OverallStatus,
    certify,
    check_discrete,
    check_empty_all_classes,
    classify_boundary_point,
    face_kernel_basis,
    is_extreme_point,
)
from .dynamics import (
    MASS_ACTION,
    ConvergenceError,
    EquilibriumResult,
    HypothesesError,
    IntegrationError,
    KineticsSpec,
    Trajectory,
    complex_balance_residual,
    complex_balanced_point,
    find_equilibrium,
    generalized_kinetics,
    jacobian,
    lyapunov,
    omega_limit_siphon_check,
    persistence_margin,
    reaction_rates,
    rhs,
    simulate,
    write_trajectory_csv,
)

__version__ = "0.1.0"
