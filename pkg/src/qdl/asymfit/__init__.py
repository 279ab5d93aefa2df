"""Fiber integrals near a plane-curve singularity and asymptotic fits in ``|t|``."""

from .estimators import ExponentBasisRegressor, ExponentScanner, LogSlopeRegressor
from .fiber import FiberIntegral, fiber_integral, integrate_milnor_fiber
from .fits import (BasisTerm, FitResult, ScanResult, barlet_candidates, congruence_report,
                   exponent_scan, fit_exponents, fit_log_slope, in_barlet_set,
                   leading_exponent)
from .samples import (Samples, circle_points, geometric_radii, sample_fiber_integrals,
                      sample_quillen)

__all__ = [
    "BasisTerm", "ExponentBasisRegressor", "ExponentScanner", "FiberIntegral", "FitResult",
    "LogSlopeRegressor", "Samples", "ScanResult", "barlet_candidates", "circle_points",
    "congruence_report", "exponent_scan", "fiber_integral", "fit_exponents", "fit_log_slope",
    "geometric_radii", "in_barlet_set", "integrate_milnor_fiber", "leading_exponent",
    "sample_fiber_integrals", "sample_quillen",
]
