"""Mapped Chebyshev functions (MCFs) on the real line.

With the algebraic map ``x = nu*y/sqrt(1-y^2)`` the scaled MCFs are

    T^nu_n(x) = nu^{-1/2} (c_n pi/2)^{-1/2} sqrt(1-y^2) T_n(y),

an orthonormal system in L^2(R).  Their H^1 Gram matrix is banded with
nonzeros only on offsets 0, +-2 and +-4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cheb import chebyshev_gauss


def _check_nu(nu: float) -> float:
    nu = float(nu)
    if not np.isfinite(nu) or nu <= 0:
        raise ValueError(f"scaling factor must be positive, got {nu}")
    return nu


def map_forward(y, nu: float = 1.0):
    """x = nu*y/sqrt(1-y^2); requires |y| < 1."""
    nu = _check_nu(nu)
    y = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(y)) or np.any(np.abs(y) >= 1.0):
        raise ValueError("map_forward requires |y| < 1")
    x = nu * y / np.sqrt((1.0 - y) * (1.0 + y))
    return float(x) if x.ndim == 0 else x


def map_backward(x, nu: float = 1.0):
    """y = x/sqrt(nu^2+x^2), the inverse of :func:`map_forward`."""
    nu = _check_nu(nu)
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)):
        raise ValueError("map_backward requires finite x")
    y = x / np.hypot(nu, x)
    return float(y) if y.ndim == 0 else y


def _norm_factors(N: int) -> np.ndarray:
    c = np.ones(N + 1)
    c[0] = 2.0
    return 1.0 / np.sqrt(c * np.pi / 2)


def mcf_vandermonde(N: int, x, nu: float = 1.0) -> np.ndarray:
    """Matrix V[..., n] = T^nu_n(x) for n = 0..N, broadcast over ``x``."""
    nu = _check_nu(nu)
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)):
        raise ValueError("MCF evaluation requires finite x")
    r = np.hypot(nu, x)
    y = x / r
    g = np.sqrt(nu) / r            # nu^{-1/2} sqrt(1-y^2)
    T = np.empty(x.shape + (N + 1,))
    T[..., 0] = 1.0
    if N >= 1:
        T[..., 1] = y
    for n in range(2, N + 1):
        T[..., n] = 2.0 * y * T[..., n - 1] - T[..., n - 2]
    return T * (g[..., None] * _norm_factors(N))


def mcf_derivative_vandermonde(N: int, x, nu: float = 1.0) -> np.ndarray:
    """Matrix D[..., n] = d/dx T^nu_n(x), by the analytic chain rule.

    Uses (1-y^2)T_n' - yT_n = ((n-1)T_{n-1} - (n+1)T_{n+1})/2 with T_{-1} = T_1,
    so no division by sqrt(1-y^2) is ever needed.
    """
    nu = _check_nu(nu)
    x = np.asarray(x, dtype=float)
    r = np.hypot(nu, x)
    y = x / r
    one_m_y2 = (nu / r) ** 2
    T = np.empty(x.shape + (N + 2,))
    T[..., 0] = 1.0
    T[..., 1] = y
    for n in range(2, N + 2):
        T[..., n] = 2.0 * y * T[..., n - 1] - T[..., n - 2]
    n = np.arange(N + 1)
    lower = np.concatenate([T[..., 1:2], T[..., : N]], axis=-1)   # T_{n-1}
    bracket = 0.5 * ((n - 1) * lower - (n + 1) * T[..., 1 : N + 2])
    # dy/dx = (1-y^2)^{3/2}/nu, times the nu^{-1/2}sqrt(1-y^2) prefactor
    scale = one_m_y2 * nu ** -1.5
    return bracket * (scale[..., None] * _norm_factors(N))


def mcf_eval(n: int, x, nu: float = 1.0):
    """Value of the single scaled MCF of index ``n`` at ``x``."""
    n = int(n)
    if n < 0:
        raise ValueError(f"MCF index must be non-negative, got {n}")
    v = mcf_vandermonde(n, x, nu)[..., n]
    return float(v) if v.ndim == 0 else v


@dataclass(frozen=True)
class StiffnessMatrix:
    """Symmetric banded H^1 Gram matrix of the MCFs.

    ``bands[k, n]`` holds S[n, n+2k] for k = 0, 1, 2 (zero-padded at the end).
    """

    N: int
    nu: float
    bands: np.ndarray

    def dense(self) -> np.ndarray:
        S = np.diag(self.bands[0])
        for k in (1, 2):
            if 2 * k > self.N:
                break
            off = self.bands[k, : self.N + 1 - 2 * k]
            S += np.diag(off, 2 * k) + np.diag(off, -2 * k)
        return S

    def parity_block(self, parity: int) -> np.ndarray:
        """Upper banded storage (LAPACK 'U' layout) of the even/odd sub-block.

        Row 2 is the diagonal, row 1 the first super-diagonal, row 0 the
        second; within a parity block offsets +-2, +-4 become +-1, +-2.
        """
        idx = np.arange(parity, self.N + 1, 2)
        m = idx.size
        ab = np.zeros((3, m))
        ab[2] = self.bands[0, idx]
        ab[1, 1:] = self.bands[1, idx[:-1]]
        ab[0, 2:] = self.bands[2, idx[:-2]]
        return ab


def stiffness_matrix(N: int, nu: float = 1.0) -> StiffnessMatrix:
    """Assemble S_mn = int T'_n T'_m dx from exact Chebyshev expansions.

    T'_n is proportional to P_n(y)(1-y^2) with P_n a combination of T_{n-1},
    T_{n+1}; the integral then reduces to Chebyshev orthogonality.
    """
    N = int(N)
    if N < 0:
        raise ValueError(f"degree must be non-negative, got {N}")
    nu = _check_nu(nu)
    L = N + 4
    c = np.ones(L)
    c[0] = 2.0
    P = np.zeros((N + 1, L))
    n = np.arange(N + 1)
    P[n, n + 1] -= (n + 1) / 2
    P[n[1:], n[1:] - 1] += (n[1:] - 1) / 2
    P[0, 1] -= 0.5                      # T_{-1} := T_1
    # multiply each row by (1-y^2) = T_0/2 - T_2/2 in the Chebyshev basis
    R = 0.5 * P
    R[:, 2:] -= 0.25 * P[:, :-2]
    R[:, :-2] -= 0.25 * P[:, 2:]
    R[:, 2] -= 0.25 * P[:, 0]           # T_0 T_2 = T_2
    R[:, 1] -= 0.25 * P[:, 1]           # T_1 T_2 = (T_3 + T_1)/2
    gram = (P * (np.pi / 2 * c)) @ R.T
    S = gram * np.outer(_norm_factors(N), _norm_factors(N))
    S = 0.5 * (S + S.T) / nu**2
    bands = np.zeros((3, N + 1))
    for k in range(3):
        bands[k, : max(N + 1 - 2 * k, 0)] = np.diagonal(S, 2 * k)
    return StiffnessMatrix(N, nu, bands)


def stiffness_closed_form(n: int, m: int) -> float:
    """Closed-form entry S_nm for nu = 1, valid for min(n, m) >= 1."""
    n, m = sorted((int(n), int(m)))

    def c(k):
        return 2.0 if k == 0 else (1.0 if k > 0 else 0.0)

    if m == n:
        return ((4 * c(n - 1) - c(n - 2)) * (n - 1) ** 2 / 16
                + (4 * c(n + 1) - c(n + 2)) * (n + 1) ** 2 / 16 - c(n) / 4) / c(n)
    if m == n + 2:
        return ((c(n) - c(n + 2)) * (n + 1) / 8 - c(n + 1) * (n + 1) ** 2 / 4) / np.sqrt(c(n) * c(n + 2))
    if m == n + 4:
        return c(n + 2) * (n + 1) * (n + 3) / 16 / np.sqrt(c(n) * c(n + 4))
    return 0.0


@dataclass(frozen=True)
class MappedRule:
    """Mapped Chebyshev-Gauss nodes x_j and weights w_j on R."""

    nodes: np.ndarray
    weights: np.ndarray
    y: np.ndarray
    nu: float


def mapped_quadrature(N: int, nu: float = 1.0) -> MappedRule:
    """Nodes x_j = map_forward(y_j) and weights w_j = nu*rho_j/(1-y_j^2).

    Exact for int u v dx whenever u*v lies in V_{2N+1}.
    """
    nu = _check_nu(nu)
    rule = chebyshev_gauss(int(N) + 1)
    y = rule.nodes
    one_m_y2 = (1.0 - y) * (1.0 + y)
    x = nu * y / np.sqrt(one_m_y2)
    w = nu * rule.weights / one_m_y2
    for arr in (x, w):
        arr.flags.writeable = False
    return MappedRule(x, w, y, nu)
