"""Numerical verification of dual-connection curvature inequalities.

Pointwise models of statistical submanifolds of a warped product line-over-
Kaehler ambient, Casorati / Chen-Ricci inequality checkers, the associated
constrained quadratic optimization tools, and a seeded fuzzing campaign
driver with machine-readable findings.
"""

from .tolerances import Tolerances, DEFAULT_TOLERANCES
from .ambient import (
    WarpingProfile,
    CurvatureCoefficients,
    AmbientGeometry,
    coefficients,
    space_form_curvature,
    ambient_curvature,
    sectional_form_matrix,
)
from .submanifold import SubmanifoldPointData, CurvatureSummary
from .scengen import Scenario, generate, realizability_audit
from .verifier import SlackReport

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "WarpingProfile",
    "CurvatureCoefficients",
    "AmbientGeometry",
    "coefficients",
    "space_form_curvature",
    "ambient_curvature",
    "sectional_form_matrix",
    "SubmanifoldPointData",
    "CurvatureSummary",
    "Scenario",
    "generate",
    "realizability_audit",
    "SlackReport",
]
