"""Exact-arithmetic workbench for 4-dimensional Sklyanin algebras and their
Klein-four cocycle twists."""

from sklytwist.scalars import (
    FieldSpec,
    TowerScalar,
    ScalarError,
    FieldSpecMismatch,
    ZeroDivisorError,
    MissingRadicalError,
)
from sklytwist.klein import CocycleTable, GradingAssignment, KleinElement
from sklytwist.freealg import NcPoly
from sklytwist.presentations import (
    InvalidParameters,
    Presentation,
    derive_alpha,
    omega_elements,
    sklyanin_presentation,
    theta_elements,
    validate_parameters,
)
from sklytwist.twisting import matrix_model, twist_presentation
from sklytwist.suites import CheckReport, RunConfig, run_suites

__all__ = [
    "FieldSpec",
    "TowerScalar",
    "ScalarError",
    "FieldSpecMismatch",
    "ZeroDivisorError",
    "MissingRadicalError",
    "CocycleTable",
    "GradingAssignment",
    "KleinElement",
    "NcPoly",
    "InvalidParameters",
    "Presentation",
    "derive_alpha",
    "omega_elements",
    "sklyanin_presentation",
    "theta_elements",
    "validate_parameters",
    "matrix_model",
    "twist_presentation",
    "CheckReport",
    "RunConfig",
    "run_suites",
]

__version__ = "0.1.0"
