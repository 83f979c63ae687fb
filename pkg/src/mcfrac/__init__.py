"""Spectral-Galerkin solver for the integral fractional Laplacian on R^d.

Mapped Chebyshev functions plus their Fourier-like bi-orthogonal
recombination diagonalise (-Delta)^s.  A solve is a DCT-based transform,
one dense basis change per axis and a pointwise division.
"""

from .analytic import fraclap_gaussian, fraclap_rational, gaussian_problem, rational_problem
from .basis import MCFBasis, make_bases
from .fnls import FnlsConfig, run_simulation, ts4_step
from .norms import ConvergenceReport, error_hs, error_l2, error_max, fit_order, predicted_rate
from .solver import (DtQuadratureSpec, FracOperatorSpec, SingularOperatorError, apply_fraclap,
                     dt_quadrature_apply, solve_fractional, solve_multiterm, solve_shifted)
from .transforms import (Expansion, GridField, analyze, from_fourier_like, interpolate, load_tensor,
                         save_tensor, synthesize, to_fourier_like)

__version__ = "0.1.0"

__all__ = [
    "MCFBasis", "make_bases", "GridField", "Expansion", "interpolate", "synthesize", "analyze",
    "to_fourier_like", "from_fourier_like", "save_tensor", "load_tensor",
    "FracOperatorSpec", "DtQuadratureSpec", "SingularOperatorError", "solve_fractional",
    "solve_multiterm", "solve_shifted", "apply_fraclap", "dt_quadrature_apply",
    "fraclap_gaussian", "fraclap_rational", "gaussian_problem", "rational_problem",
    "error_l2", "error_max", "error_hs", "fit_order", "predicted_rate", "ConvergenceReport",
    "FnlsConfig", "run_simulation", "ts4_step",
]
