"""Gamma and hypergeometric functions for real parameters and z <= 0.

Thin wrappers over :mod:`scipy.special` that add domain checks.  The
scipy 2F1 handles the b - a integer connection-formula case, which the
rational-decay closed form hits whenever r - d/2 is an integer.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sp


TAYLOR_CUTOFF = 1e-6


class ConvergenceError(ArithmeticError):
    """A numerical evaluation did not reach the requested accuracy."""


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma_fn(x: float) -> float:
    """Gamma function of a real non-pole argument."""
    x = float(x)
    if _is_pole(x):
        raise ValueError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x: float) -> float:
    """1/Gamma(x), equal to zero at the poles."""
    return float(sp.rgamma(float(x)))


def _checked_z(z, name):
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr > 0) or np.any(~np.isfinite(z_arr)):
        raise ValueError(f"{name} is implemented for finite z <= 0 only")
    return z_arr


def _finish(out, name, params):
    if not np.all(np.isfinite(out)):
        raise ConvergenceError(f"{name}{params} returned a non-finite value")
    return float(out) if np.ndim(out) == 0 else out


def hyp1f1(a: float, b: float, z):
    """Kummer's confluent hypergeometric function 1F1(a; b; z) for z <= 0."""
    a, b = float(a), float(b)
    if _is_pole(b):
        raise ValueError(f"1F1 undefined for b = {b}")
    z_arr = _checked_z(z, "hyp1f1")
    out = np.array(sp.hyp1f1(a, b, z_arr), dtype=float, ndmin=1)
    # scipy loses accuracy (even returns inf) for tiny |z|; three Taylor terms are exact there
    zt = np.atleast_1d(z_arr)
    tiny = np.abs(zt) < TAYLOR_CUTOFF
    c1 = a / b
    out[tiny] = 1.0 + zt[tiny] * (c1 + zt[tiny] * c1 * (a + 1) / (2 * (b + 1)))
    out = out.reshape(z_arr.shape)
    return _finish(out, "hyp1f1", (a, b))


def hyp2f1(a: float, b: float, c: float, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for z <= 0."""
    a, b, c = float(a), float(b), float(c)
    if _is_pole(c):
        raise ValueError(f"2F1 undefined for c = {c}")
    z_arr = _checked_z(z, "hyp2f1")
    return _finish(sp.hyp2f1(a, b, c, z_arr), "hyp2f1", (a, b, c))
