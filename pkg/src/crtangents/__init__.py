"""Exact constructions of embeddings with prescribed complex tangents.

Heisenberg groups and odd spheres are embedded as graphs in C^(2n-1) so that
their complex tangents are exactly a prescribed algebraic set, with symbolic
and sampled verification.
"""

__version__ = "0.1.0"

from .cr import CROperator, apply, cr_basis, heisenberg_operator, is_cr, solve_preimage
from .errors import (
    CRTangentsError,
    DimensionError,
    IOFailure,
    NotRealError,
    NotUnitaryError,
    NumericPathRequired,
    OffSurfaceError,
    ParseError,
    PoleError,
    PreconditionError,
    VerificationFailed,
)
from .gaussian import GaussianRational, as_gaussian
from .heisenberg import (
    AlgebraicTarget,
    canonical_embedding,
    certify_totally_real,
    certify_trough,
    realize_algebraic_set,
    totally_real_embedding,
    trough_totally_real_embedding,
)
from .parser import parse_expression, parse_real
from .polynomial import (
    Monomial,
    Polynomial,
    exact_divide,
    is_unitary,
    linear_change_of_vars,
    real_variable,
    substitute_real_coords,
)
from .rational import RestrictedRational, compose_rational
from .sampling import (
    SampleSpec,
    VanishingReport,
    emit_point_cloud,
    read_point_cloud,
    sample_surface,
    sample_target,
    vanishing_report,
)
from .sphere import (
    RationalEmbedding,
    certify_minimal_sphere,
    minimal_sphere_embedding,
    north_pole_check,
    north_pole_decay,
    rotate_target,
    sphere_embedding,
    sphere_realize,
    transfer_target,
)
from .surfaces import (
    Hypersurface,
    heisenberg_rho,
    heisenberg_surface,
    parametrize,
    phi,
    psi,
    sphere_surface,
    trough_surface,
)
from .tangency import (
    GraphEmbedding,
    TangencyCertificate,
    canonical_reduction,
    cofactor_determinant,
    graph_system,
    jacobian,
    tangency_eval,
    tangency_eval_many,
    webster_determinant,
)
