"""Exact kernel for isospectral deformations and their twisted symmetries."""

from .algebra import (
    DegreeVector,
    Element,
    GradedPresentation,
    dequantize,
    involution,
    multiply,
    normal_order,
    quantize,
    quantize_presentation,
    star_involution,
    star_product,
)
from .scalars import DegreeForm, Gaussian, Scalar, degree_variables, form_identity_check, lam
from .parsing import load_fixture_action, load_presentation, load_symmetry
from .suites import SuiteOptions, run_suite
from .twist import R_MATRIX, TwistedSymmetry, check_cocycle

__version__ = "0.1.0"
