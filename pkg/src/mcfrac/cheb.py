"""Chebyshev polynomials of the first kind on (-1, 1).

Gauss rules, Clenshaw evaluation, and fast value/coefficient transforms
based on the type-II/III discrete cosine transform.  Nodes are always
stored in descending order, ``y_j = cos((2j+1)pi/(2N+2))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft


@dataclass(frozen=True)
class GaussRule:
    """Chebyshev-Gauss nodes (descending) and their uniform weights."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.shape[0]


def chebyshev_gauss(num_points: int) -> GaussRule:
    """Return the ``num_points`` roots of T_{num_points} with weights pi/num_points."""
    num_points = int(num_points)
    if num_points < 1:
        raise ValueError(f"need at least one quadrature point, got {num_points}")
    j = np.arange(num_points)
    nodes = np.cos((2 * j + 1) * np.pi / (2 * num_points))
    # cos is not exactly antisymmetric in floating point; enforce it
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = np.full(num_points, np.pi / num_points)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return GaussRule(nodes, weights)


def cheb_eval(coeffs, y):
    """Evaluate sum_n a_n T_n(y) by Clenshaw's recurrence.

    ``y`` may be a scalar or an array; every entry must lie in [-1, 1].
    """
    a = np.asarray(coeffs, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    y_arr = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(y_arr)) or np.any(np.abs(y_arr) > 1.0):
        raise ValueError("Chebyshev evaluation requires |y| <= 1")
    b1 = np.zeros_like(y_arr)
    b2 = np.zeros_like(y_arr)
    two_y = 2.0 * y_arr
    for a_k in a[:0:-1]:
        b1, b2 = a_k + two_y * b1 - b2, b1
    out = a[0] + y_arr * b1 - b2
    return float(out) if out.ndim == 0 else out


def _check_length(n: int, rule: GaussRule | None) -> None:
    if rule is not None and rule.size != n:
        raise ValueError(f"data length {n} does not match rule size {rule.size}")


def values_to_coeffs(values, rule: GaussRule | None = None, axis: int = -1,
                     method: str = "dct") -> np.ndarray:
    """Discrete Chebyshev coefficients from samples at the Gauss nodes.

    ``a_n = 2/(c_n pi) sum_j rho_j v_j T_n(y_j)``, which reproduces every
    polynomial of degree <= N exactly.  ``method="direct"`` uses the O(N^2)
    matrix product and is kept as an independent cross-check.
    """
    v = np.asarray(values)
    n = v.shape[axis]
    _check_length(n, rule)
    if np.iscomplexobj(v):
        return (values_to_coeffs(v.real, None, axis, method)
                + 1j * values_to_coeffs(v.imag, None, axis, method))
    v = v.astype(float, copy=False)
    if method == "dct":
        a = fft.dct(v, type=2, axis=axis) / n
    elif method == "direct":
        a = np.moveaxis(np.moveaxis(v, axis, -1) @ _cos_matrix(n).T, -1, axis) * (2.0 / n)
    else:
        raise ValueError(f"unknown transform method {method!r}")
    first = [slice(None)] * a.ndim
    first[axis] = 0
    a[tuple(first)] *= 0.5
    return a


def coeffs_to_values(coeffs, rule: GaussRule | None = None, axis: int = -1,
                     method: str = "dct") -> np.ndarray:
    """Values ``v_j = sum_n a_n T_n(y_j)`` at the Gauss nodes (inverse of values_to_coeffs)."""
    a = np.asarray(coeffs)
    n = a.shape[axis]
    _check_length(n, rule)
    if np.iscomplexobj(a):
        return (coeffs_to_values(a.real, None, axis, method)
                + 1j * coeffs_to_values(a.imag, None, axis, method))
    a = a.astype(float, copy=True)
    if method == "dct":
        rest = [slice(None)] * a.ndim
        rest[axis] = slice(1, None)
        a[tuple(rest)] *= 0.5
        return fft.dct(a, type=3, axis=axis)
    if method == "direct":
        return np.moveaxis(np.moveaxis(a, axis, -1) @ _cos_matrix(n), -1, axis)
    raise ValueError(f"unknown transform method {method!r}")


def _cos_matrix(n: int) -> np.ndarray:
    # row k, column j: T_k(y_j)
    k = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    return np.cos(k * (2 * j + 1) * np.pi / (2 * n))
