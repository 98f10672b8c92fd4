"""Exact verification of Sylvester-type tridiagonal determinant identities.

Core layout:

* :mod:`sylvdet.algebra` - exact rationals, dense polynomials, interpolation,
  (q-)shifted factorials;
* :mod:`sylvdet.families` - the eight matrix families, predicted spectra,
  parameter validation/sampling and induction shifts;
* :mod:`sylvdet.determinant` - the two independent characteristic-polynomial
  paths and the closed-form/induction/cross-family checks;
* :mod:`sylvdet.reduction` - exact block-triangularization replays and the
  q-racah scalar identity;
* :mod:`sylvdet.service` / :mod:`sylvdet.cli` - FastAPI service and the thin
  CLI client over the shared runner.
"""

from .algebra import (
    Polynomial,
    Rational,
    interpolate,
    poly_eval,
    poly_from_roots,
    q_pochhammer,
    shifted_factorial,
)
from .determinant import (
    VerifyReport,
    a_family_check,
    b_leading_coefficient_check,
    charpoly,
    charpoly_oracle,
    induction_check,
    verify_family,
)
from .families import (
    FamilyId,
    ShiftSpec,
    TridiagonalSpec,
    build_matrix,
    predicted_spectrum,
    sample_params,
    shifted_family,
    validate_params,
)
from .reduction import (
    DenseMatrix,
    ReductionReport,
    TransformKind,
    ansatz_kernel_check,
    build_transform,
    invert,
    qracah_scalar_identity,
    reduce_step,
)

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "Rational",
    "interpolate",
    "poly_eval",
    "poly_from_roots",
    "q_pochhammer",
    "shifted_factorial",
    "VerifyReport",
    "a_family_check",
    "b_leading_coefficient_check",
    "charpoly",
    "charpoly_oracle",
    "induction_check",
    "verify_family",
    "FamilyId",
    "ShiftSpec",
    "TridiagonalSpec",
    "build_matrix",
    "predicted_spectrum",
    "sample_params",
    "shifted_family",
    "validate_params",
    "DenseMatrix",
    "ReductionReport",
    "TransformKind",
    "ansatz_kernel_check",
    "build_transform",
    "invert",
    "qracah_scalar_identity",
    "reduce_step",
    "__version__",
]
