"""Numerical workbench for the U(1)-current and Virasoro chiral algebras."""

from .fnspace import (
    SIGMA_NORM,
    CircleFourier,
    LineIntegralResult,
    LineObject,
    PiecewiseLinearCircle,
    QuadratureSpec,
    Weight,
    cayley_t_of_theta,
    derivative,
    dilate_line,
    fourier_project,
    g_limit,
    gn_family,
    line_integral,
    pointwise_product,
    sigma,
    sobolev_half_sq,
    translate_line,
    vectorfield_line_integral_f3g,
)
from .fock import ExactnessWindow, FockVector, apply_current, apply_L0, apply_mode, inner, vacuum
from .states import GroundStateParams, WeylWord
from .sugawara import VirasoroParams, apply_stress_circle, apply_stress_line, apply_virasoro_mode

__all__ = [
    "SIGMA_NORM",
    "CircleFourier",
    "ExactnessWindow",
    "FockVector",
    "GroundStateParams",
    "LineIntegralResult",
    "LineObject",
    "PiecewiseLinearCircle",
    "QuadratureSpec",
    "VirasoroParams",
    "Weight",
    "WeylWord",
    "apply_L0",
    "apply_current",
    "apply_mode",
    "apply_stress_circle",
    "apply_stress_line",
    "apply_virasoro_mode",
    "cayley_t_of_theta",
    "derivative",
    "dilate_line",
    "fourier_project",
    "g_limit",
    "gn_family",
    "inner",
    "line_integral",
    "pointwise_product",
    "sigma",
    "sobolev_half_sq",
    "translate_line",
    "vacuum",
    "vectorfield_line_integral_f3g",
]
