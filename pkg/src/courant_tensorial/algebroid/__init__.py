"""Symbolic engine for constant-structure proto-Courant algebroids."""
from .core import (
    ALMOST_LEIBNIZ,
    PROTO_COURANT,
    Algebroid,
    AlgebroidData,
    AlgebroidError,
    AxiomReport,
    Endomorphism,
    Section,
    annihilator_check,
    build_algebroid,
    classify_endomorphism,
    from_lie_algebra,
    jacobi_residuals,
    minimal_polynomial,
)
from .examples import (
    abelian_complex_structure,
    abelian_tangent,
    heisenberg_eps,
    heisenberg_example,
    heisenberg_expected_defect,
)
from .forms import (
    AlternatingReport,
    EigenNecessity,
    act,
    alternating_check,
    eigen_endomorphism,
    eigen_necessity,
    minimality_report,
    minimality_tensor,
    nijenhuis_torsion,
    shifted_torsion,
    tau_C,
    tensoriality_defect,
    theta,
    torsion_defect,
)
from .scalar import DepthBoundExceeded, DerivationRing, ScalarExpr, ScalarSyntaxError, parse_scalar
