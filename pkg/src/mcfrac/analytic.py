"""Closed-form fractional Laplacians and manufactured test problems.

For the Gaussian and for algebraically decaying profiles on R^d,

    (-Delta)^s exp(-|x|^2)   = 4^s G(s+d/2)/G(d/2) 1F1(s+d/2; d/2; -|x|^2)
    (-Delta)^s (1+|x|^2)^-r  = 4^s G(s+r)G(s+d/2)/(G(r)G(d/2))
                                 * 2F1(s+r, s+d/2; d/2; -|x|^2)

Point arguments ``x`` carry the spatial coordinate on their last axis; for
d = 1 a scalar or a plain 1-D array of points is accepted too.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate

from .special import ConvergenceError, gamma_fn, hyp1f1, hyp2f1


def norm_constant_cds(d: int, s: float) -> float:
    """C_{d,s} = 4^s s G(s+d/2) / (pi^{d/2} G(1-s)) of the singular-integral form."""
    return 4.0**s * s * gamma_fn(s + d / 2) / (math.pi ** (d / 2) * gamma_fn(1 - s))


def norm_constant_cs(s: float) -> float:
    """C_s = 2 sin(pi s)/pi of the Dunford-Taylor integral."""
    return 2.0 * math.sin(math.pi * s) / math.pi


def _radius2(x, d: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        return x * x
    if x.shape[-1] != d:
        raise ValueError(f"points must have last axis of length {d}, got shape {x.shape}")
    return np.sum(x * x, axis=-1)


def _out(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def gaussian_prefactor(s: float, d: int) -> float:
    return 4.0**s * gamma_fn(s + d / 2) / gamma_fn(d / 2)


def rational_prefactor(s: float, r: float, d: int) -> float:
    return 4.0**s * gamma_fn(s + r) * gamma_fn(s + d / 2) / (gamma_fn(r) * gamma_fn(d / 2))


def fraclap_gaussian_r2(r2, s: float, d: int):
    """(-Delta)^s exp(-|x|^2) as a function of r2 = |x|^2."""
    if s < 0:
        raise ValueError(f"order must be non-negative, got {s}")
    return gaussian_prefactor(s, d) * hyp1f1(s + d / 2, d / 2, -np.asarray(r2, dtype=float))


def fraclap_rational_r2(r2, s: float, r: float, d: int):
    """(-Delta)^s (1+|x|^2)^{-r} as a function of r2 = |x|^2."""
    if s < 0 or r <= 0:
        raise ValueError(f"need s >= 0 and r > 0, got s={s}, r={r}")
    r2 = np.asarray(r2, dtype=float)
    if s == 0:
        return (1.0 + r2) ** (-r)
    return rational_prefactor(s, r, d) * hyp2f1(s + r, s + d / 2, d / 2, -r2)


def fraclap_gaussian(x, s: float, d: int = 1):
    return _out(fraclap_gaussian_r2(_radius2(x, d), s, d))


def fraclap_rational(x, s: float, r: float, d: int = 1):
    return _out(fraclap_rational_r2(_radius2(x, d), s, r, d))


def gaussian_tail(x, s: float, d: int = 1):
    """Leading large-|x| behaviour of (-Delta)^s exp(-|x|^2) for non-integer s."""
    rad = np.sqrt(_radius2(x, d))
    return _out(-(4.0**s) * math.sin(math.pi * s) / math.pi
                * gamma_fn(s + d / 2) * gamma_fn(1 + s) * rad ** (-d - 2 * s))


def rhs_exponential(x, s: float, d: int = 1, gamma: float = 1.0):
    r2 = _radius2(x, d)
    return _out(gamma * np.exp(-r2) + fraclap_gaussian_r2(r2, s, d))


def rhs_algebraic(x, s: float, r: float, d: int = 1, gamma: float = 1.0):
    r2 = _radius2(x, d)
    return _out(gamma * (1.0 + r2) ** (-r) + fraclap_rational_r2(r2, s, r, d))


# --- manufactured problems on tensor grids ---------------------------------

def _grid_r2(X) -> np.ndarray:
    r2 = 0.0
    for xk in X:
        r2 = r2 + np.asarray(xk, dtype=float) ** 2
    return np.asarray(r2)


class Problem:
    """Exact solution u and right-hand side f as callables of grid coordinates."""

    def __init__(self, name: str, exact, rhs):
        self.name = name
        self._exact = exact
        self._rhs = rhs

    def exact(self, *X):
        return self._exact(_grid_r2(X))

    def rhs(self, *X):
        return self._rhs(_grid_r2(X))

    def __repr__(self) -> str:
        return f"Problem({self.name!r})"


def gaussian_problem(s: float, d: int, gamma: float = 1.0, terms=None) -> Problem:
    """u = exp(-|x|^2) for (-Delta)^s u + gamma u = f, or a multi-term operator."""
    terms = [(1.0, s)] if terms is None else list(terms)

    def rhs(r2):
        out = gamma * np.exp(-r2)
        for rho, sj in terms:
            out = out + rho * (np.exp(-r2) if sj == 0 else fraclap_gaussian_r2(r2, sj, d))
        return out

    return Problem("gaussian", lambda r2: np.exp(-r2), rhs)


def rational_problem(s: float, r: float, d: int, gamma: float = 1.0, terms=None) -> Problem:
    """u = (1+|x|^2)^{-r}; ``terms`` gives a list of (rho_j, s_j) instead of a single s."""
    terms = [(1.0, s)] if terms is None else list(terms)

    def rhs(r2):
        out = gamma * (1.0 + r2) ** (-r)
        for rho, sj in terms:
            out = out + rho * fraclap_rational_r2(r2, sj, r, d)
        return out

    return Problem(f"rational(r={r})", lambda r2: (1.0 + r2) ** (-r), rhs)


def table_source(*X):
    """f(x) = prod_k (1+x_k) exp(-|x|^2/2), the given-source benchmark."""
    out = np.exp(-0.5 * _grid_r2(X))
    for xk in X:
        out = out * (1.0 + np.asarray(xk, dtype=float))
    return out


# --- independent Fourier-quadrature oracle (d = 1) --------------------------

def gaussian_fourier(xi):
    """int exp(-t^2) e^{-i xi t} dt."""
    return math.sqrt(math.pi) * np.exp(-np.asarray(xi) ** 2 / 4)


def rational_fourier(r: float):
    """int (1+t^2)^{-r} e^{-i xi t} dt = 2 sqrt(pi)/G(r) (|xi|/2)^{r-1/2} K_{r-1/2}(|xi|)."""
    from scipy.special import kv

    def ft(xi):
        a = abs(float(xi))
        if a == 0.0:
            return math.sqrt(math.pi) * gamma_fn(r - 0.5) / gamma_fn(r)
        return 2 * math.sqrt(math.pi) / gamma_fn(r) * (a / 2) ** (r - 0.5) * kv(r - 0.5, a)

    return ft


def _cos_sin_integral(g, x: float, weight: str, split: float):
    """int_0^inf g(xi) w(xi x) dxi as a finite oscillatory part plus a Fourier tail."""
    v1, e1 = integrate.quad(g, 0, split, weight=weight, wvar=x, epsabs=1e-14, epsrel=1e-12, limit=500)
    v2, e2 = integrate.quad(g, split, np.inf, weight=weight, wvar=x, epsabs=1e-14, limlst=200)
    return v1 + v2, e1 + e2


def _fourier_by_quadrature(u, split: float):
    def parts(xi):
        if xi == 0.0:
            c = integrate.quad(u, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
            return c, 0.0
        c = _cos_sin_integral(lambda t: u(t) + u(-t), xi, "cos", split)[0]
        sn = _cos_sin_integral(lambda t: u(t) - u(-t), xi, "sin", split)[0]
        return c, sn

    return parts


def fraclap_quadrature_1d(u, x: float, s: float, fourier=None, split: float = 40.0) -> float:
    """(-Delta)^s u(x) = (1/pi) int_0^inf xi^{2s} Re(uhat(xi) e^{i xi x}) dxi.

    ``fourier`` is an optional callable for the transform of an even ``u``;
    without it the cosine/sine transforms of ``u`` are computed numerically
    (slow, nested adaptive quadrature).  Intended as a test oracle.
    """
    x = float(x)
    if fourier is not None:
        def even(xi):
            return xi ** (2 * s) * fourier(xi)

        def odd(xi):
            return 0.0
    else:
        parts = _fourier_by_quadrature(u, split)

        def even(xi):
            return xi ** (2 * s) * parts(xi)[0]

        def odd(xi):
            return xi ** (2 * s) * parts(xi)[1]

    with warnings.catch_warnings():
        # quad's own diagnostics are replaced by the error-estimate check below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if x == 0.0:
            val, err = integrate.quad(even, 0, np.inf, epsabs=1e-14, epsrel=1e-12, limit=500)
        else:
            vc, ec = _cos_sin_integral(even, abs(x), "cos", split)
            vs, es = (0.0, 0.0) if fourier is not None else _cos_sin_integral(odd, abs(x), "sin", split)
            val, err = vc + math.copysign(1.0, x) * vs, ec + es
    if not np.isfinite(val) or not np.isfinite(err) or err > 1e-7 * max(1.0, abs(val)):
        raise ConvergenceError(f"Fourier quadrature unreliable at x={x}: estimate {val}, error {err}")
    return val / math.pi
