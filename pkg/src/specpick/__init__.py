"""specpick: feasibility certificates for spectral Pick interpolation.

Decides necessary conditions for 2- and 3-point holomorphic interpolation
into the spectral unit ball, built on a matrix functional calculus and
minimal Blaschke products, and certifies Schwarz-type bounds for proper
holomorphic correspondences from the disc to planar discs.
"""

from .blaschke import BlaschkeProduct, apply_to_matrix, minimal_blaschke, preimage
from .conditions import (
    DataPoint,
    ThreePointData,
    Verdict,
    VerdictStatus,
    check_baribeau_kamara,
    check_three_point,
    check_two_point,
    generate_example,
    q_exponent,
)
from .correspondence import (
    Correspondence,
    DiscDomain,
    caratheodory_distance,
    check_schwarz_hausdorff,
    check_schwarz_product,
    fiber,
    validate_properness,
)
from .errors import (
    AmbiguityError,
    ConstraintError,
    IllConditionedError,
    OrderCapError,
    PropernessError,
    RootFindingError,
    SpecpickError,
)
from .funcalc import (
    HoloFn,
    apply,
    hermite_interpolant,
    nilpotent_combo_minpoly,
    ord_of_vanishing,
    predicted_minpoly,
)
from .matrixspec import (
    JordanSpec,
    SpectralData,
    characteristic_polynomial,
    companion,
    eigen_multiset,
    in_spectral_unit_ball,
    is_nonderogatory,
    jordan_to_matrix,
    minimal_polynomial,
)
from .polyalg import (
    ComplexPolynomial,
    RationalFunction,
    RootMultiset,
    disc_automorphism,
    hausdorff_distance,
    mobius_distance,
    poly_roots,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "BlaschkeProduct",
    "ComplexPolynomial",
    "ConstraintError",
    "Correspondence",
    "DataPoint",
    "DiscDomain",
    "HoloFn",
    "IllConditionedError",
    "JordanSpec",
    "OrderCapError",
    "PropernessError",
    "RationalFunction",
    "RootFindingError",
    "RootMultiset",
    "SpectralData",
    "SpecpickError",
    "ThreePointData",
    "Verdict",
    "VerdictStatus",
    "apply",
    "apply_to_matrix",
    "caratheodory_distance",
    "characteristic_polynomial",
    "check_baribeau_kamara",
    "check_schwarz_hausdorff",
    "check_schwarz_product",
    "check_three_point",
    "check_two_point",
    "companion",
    "disc_automorphism",
    "eigen_multiset",
    "fiber",
    "generate_example",
    "hausdorff_distance",
    "hermite_interpolant",
    "in_spectral_unit_ball",
    "is_nonderogatory",
    "jordan_to_matrix",
    "minimal_blaschke",
    "minimal_polynomial",
    "mobius_distance",
    "nilpotent_combo_minpoly",
    "ord_of_vanishing",
    "poly_roots",
    "predicted_minpoly",
    "preimage",
    "q_exponent",
    "validate_properness",
]
