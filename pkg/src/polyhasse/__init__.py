"""Hasse derivatives, higher chain rules and inversion of polynomial maps.

All arithmetic is exact over Q, prime fields F_p and residue rings Z/m.
"""

from .chain_rule import FdBTerm, chain_lhs, chain_rhs, fdb_coefficient, fdb_terms
from .coord_change import (
    DerivativeTable,
    SymPowerMatrix,
    dual_derivatives,
    sym_power_det_exponent,
    sym_power_matrix,
    theta_f_apply,
)
from .errors import (
    ArityMismatch,
    BoundExceeded,
    BoundInconclusive,
    DimensionMismatch,
    ExponentOverflow,
    MissingAssignment,
    NonInvertibleDenominator,
    NonSquare,
    NotAnAutomorphism,
    NotAUnit,
    NotAUnitDeterminant,
    ParseError,
    PolyHasseError,
    PreconditionError,
    RingMismatch,
    SingularLinearPart,
    UnknownVariable,
    VariableMismatch,
)
from .hasse import JacobianMatrix, hasse_multi, hasse_single, jacobian, taylor, taylor_by_derivatives
from .inverter import (
    InverseCoefficients,
    NormalizedMap,
    formal_inverse,
    invert,
    invert_core,
    invert_detailed,
    is_automorphism,
    normalize,
    ns_inverse_apply,
)
from .linalg import matrix_adjugate, matrix_adjugate_inverse, matrix_det
from .polynomial import (
    Polynomial,
    PolyMap,
    TruncatedSeries,
    coeff_of,
    compose_map,
    poly_add,
    poly_mul,
    substitute,
    total_degree,
)
from .rings import GF, QQ, RingElement, RingSpec, Zmod, binom_multi, canon, invert_unit
from .text import format_poly, parse_poly

__version__ = "0.1.0"
