"""Diagonal spectral solves for fractional Laplacian problems on R^d.

In the Fourier-like basis the Galerkin system for

    sum_j rho_j (-Delta)^{s_j} u + gamma u = f

is diagonal with multiplier gamma + sum_j rho_j |lambda_p|_1^{s_j}, so a
solve costs two transforms and one pointwise division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .fourier_like import eigen_sum_grid
from .transforms import FOURIER_LIKE, DataError, Expansion, _as_bases, analyze, to_fourier_like

DEFAULT_DT_NODES = 200


class SingularOperatorError(ArithmeticError):
    """The operator multiplier vanishes or is negative at some mode."""


@dataclass(frozen=True)
class FracOperatorSpec:
    """gamma + sum_j rho_j (-Delta)^{s_j}, terms given as (rho_j, s_j)."""

    terms: tuple = ((1.0, 0.5),)
    gamma: float = 0.0

    def __post_init__(self):
        terms = tuple((float(r), float(s)) for r, s in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("operator needs at least one term")
        for _, s in terms:
            if not 0.0 <= s <= 1.0:
                raise ValueError(f"fractional order {s} outside [0, 1]")
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"shift must be finite and non-negative, got {self.gamma}")

    def multiplier(self, lam) -> np.ndarray:
        lam = np.asarray(lam, dtype=float)
        m = np.full(lam.shape, float(self.gamma))
        for rho, s in self.terms:
            m = m + rho * _power(lam, s)
        return m

    @classmethod
    def parse_terms(cls, text: str, gamma: float = 0.0) -> "FracOperatorSpec":
        """Parse ``"rho:s,rho:s,..."``."""
        terms = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                rho, s = chunk.split(":")
                terms.append((float(rho), float(s)))
            except ValueError as exc:
                raise ValueError(f"bad term {chunk!r}, expected rho:s") from exc
        return cls(tuple(terms), gamma)


@dataclass(frozen=True)
class DtQuadratureSpec:
    """Gauss-Jacobi rule for the t-integral after t = (1+y)/(1-y)."""

    num_nodes: int = DEFAULT_DT_NODES
    rule: str = field(default="gauss-jacobi")

    def __post_init__(self):
        if self.num_nodes < 1:
            raise ValueError(f"need at least one quadrature node, got {self.num_nodes}")
        if self.rule != "gauss-jacobi":
            raise ValueError(f"unknown rule {self.rule!r}")


def _power(lam: np.ndarray, s: float) -> np.ndarray:
    if s == 0.0:
        return np.ones_like(lam)
    if s == 1.0:
        return lam.copy()
    if np.any(lam <= 0):
        raise SingularOperatorError("non-positive eigenvalue sum; stiffness matrix is not definite")
    return np.exp(s * np.log(lam))


def _check_order(s: float, lo_open: bool = True) -> float:
    s = float(s)
    lo_ok = s > 0 if lo_open else s >= 0
    if not (lo_ok and s <= 1):
        bounds = "(0, 1]" if lo_open else "[0, 1]"
        raise ValueError(f"fractional order {s} outside {bounds}")
    return s


def eigen_sums(bases) -> np.ndarray:
    """|lambda_p|_1 on the full multi-index grid."""
    return eigen_sum_grid([b.eigenvalues for b in _as_bases(bases)])


def _rhs_coeffs(f, bases) -> Expansion:
    if isinstance(f, Expansion):
        if tuple(f.bases) != tuple(_as_bases(bases)):
            raise ValueError("right-hand side expansion lives on different bases")
        fh = to_fourier_like(f)
    else:
        fh = analyze(f, bases)
    if not np.all(np.isfinite(fh.coeffs)):
        raise DataError("non-finite right-hand side coefficients")
    return fh


def _divide(fh: Expansion, m: np.ndarray) -> Expansion:
    bad = m <= 0
    if bad.any():
        p = tuple(int(i) for i in np.argwhere(bad)[0])
        raise SingularOperatorError(f"operator multiplier {m[p]:.3e} is not positive at mode {p}")
    return Expansion(fh.coeffs / m, fh.bases, FOURIER_LIKE)


def solve_fractional(f, s: float, gamma: float, bases) -> Expansion:
    """Solve (-Delta)^s u + gamma u = f in V_N^d; returns Fourier-like coefficients.

    ``f`` may be a callable of the grid coordinates, a GridField, grid
    samples or an Expansion.  s = 1 gives the classical shifted Laplacian.
    """
    s = _check_order(s)
    if gamma < 0:
        raise ValueError(f"shift must be non-negative, got {gamma}")
    bases = _as_bases(bases)
    fh = _rhs_coeffs(f, bases)
    return _divide(fh, gamma + _power(eigen_sums(bases), s))


def solve_multiterm(f, spec: FracOperatorSpec, bases) -> Expansion:
    bases = _as_bases(bases)
    fh = _rhs_coeffs(f, bases)
    return _divide(fh, spec.multiplier(eigen_sums(bases)))


def solve_shifted(f, s: float, gamma_in: float, bases) -> Expansion:
    """Invert (-Delta + gamma_in)^s: u_p = f_p / (gamma_in + |lambda_p|_1)^s."""
    s = _check_order(s)
    if not gamma_in > 0:
        raise ValueError(f"inner shift must be positive, got {gamma_in}")
    bases = _as_bases(bases)
    fh = _rhs_coeffs(f, bases)
    return _divide(fh, _power(gamma_in + eigen_sums(bases), s))


def apply_fraclap(u: Expansion, s: float) -> Expansion:
    """(-Delta)^s restricted to V_N^d: mode p times |lambda_p|_1^s."""
    s = _check_order(s, lo_open=False)
    uh = to_fourier_like(u)
    return Expansion(uh.coeffs * _power(eigen_sums(uh.bases), s), uh.bases, FOURIER_LIKE)


# --- Dunford-Taylor quadrature (validation path) ----------------------------

def dt_rule(s: float, num_nodes: int):
    """Nodes y_k and weights w_k of the Gauss-Jacobi rule with indices (2s-1, 1-2s)."""
    return roots_jacobi(int(num_nodes), 2 * s - 1, 1 - 2 * s)


def dt_multiplier(lam, s: float, q: DtQuadratureSpec | None = None) -> np.ndarray:
    """C_s int_0^inf t^{1-2s} lam/(1+t^2 lam) dt evaluated by quadrature.

    With t = (1+y)/(1-y) the integrand becomes
    (1-y)^{2s-1}(1+y)^{1-2s} * 2 lam / ((1-y)^2 + (1+y)^2 lam),
    so the Jacobi weight absorbs both endpoint singularities.
    """
    s = float(s)
    if not 0 < s < 1:
        raise ValueError(f"Dunford-Taylor quadrature needs 0 < s < 1, got {s}")
    q = q or DtQuadratureSpec()
    y, w = dt_rule(s, q.num_nodes)
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise SingularOperatorError("Dunford-Taylor multiplier needs positive eigenvalue sums")
    lf = lam.reshape(-1, 1)
    vals = 2 * lf / ((1 - y) ** 2 + (1 + y) ** 2 * lf)
    cs = 2 * math.sin(math.pi * s) / math.pi
    return (cs * (vals @ w)).reshape(lam.shape)


def dt_quadrature_apply(u: Expansion, s: float, q: DtQuadratureSpec | None = None) -> Expansion:
    """Approximate (-Delta)^s on V_N^d through the quadrature multiplier."""
    uh = to_fourier_like(u)
    return Expansion(uh.coeffs * dt_multiplier(eigen_sums(uh.bases), s, q), uh.bases, FOURIER_LIKE)


def dt_shifted_multiplier(lam, s: float, gamma_in: float, q: DtQuadratureSpec | None = None):
    """Quadrature value of (gamma_in + lam)^s, for checking :func:`solve_shifted`."""
    return dt_multiplier(gamma_in + np.asarray(lam, dtype=float), s, q)
