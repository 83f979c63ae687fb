"""Discrete error norms and convergence-order fitting."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .fourier_like import eigen_sum_grid
from .transforms import Expansion, GridField, _as_bases, analyze, quadrature_weights, to_fourier_like


def _values(u) -> np.ndarray:
    if isinstance(u, GridField):
        return u.values
    return np.asarray(u)


def _pair(u_num, u_exact):
    a, b = _values(u_num), _values(u_exact)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def _bases_of(*objs, bases=None):
    if bases is not None:
        return _as_bases(bases)
    for o in objs:
        if isinstance(o, (GridField, Expansion)):
            return o.bases
    raise ValueError("bases must be given when neither argument carries them")


def error_l2(u_num, u_exact, bases=None) -> float:
    """sqrt(sum_j w_j |u_num - u_exact|^2) with tensorised mapped weights."""
    a, b = _pair(u_num, u_exact)
    w = quadrature_weights(_bases_of(u_num, u_exact, bases=bases))
    if w.shape != a.shape:
        raise ValueError(f"weights of shape {w.shape} do not fit data of shape {a.shape}")
    return float(math.sqrt(np.sum(w * np.abs(a - b) ** 2)))


def error_max(u_num, u_exact) -> float:
    a, b = _pair(u_num, u_exact)
    return float(np.max(np.abs(a - b)))


def error_hs(u_num, u_exact, s: float, bases=None) -> float:
    """(sum_p (1 + |lambda_p|_1^s) |e_p|^2)^{1/2}, e = Fourier-like coeffs of I_N(u_num - u_exact).

    ``u_num`` may be an Expansion (any representation) or grid samples;
    ``u_exact`` is grid samples (array or GridField).
    """
    if not 0 <= s <= 1:
        raise ValueError(f"Sobolev order {s} outside [0, 1]")
    bases = _bases_of(u_num, u_exact, bases=bases)
    if isinstance(u_num, Expansion):
        num = to_fourier_like(u_num).coeffs
    else:
        num = analyze(_values(u_num), bases).coeffs
    ex = analyze(_values(u_exact), bases).coeffs
    lam = eigen_sum_grid([b.eigenvalues for b in bases])
    mult = 1.0 + (lam ** s if s > 0 else 1.0)
    return float(math.sqrt(np.sum(mult * np.abs(num - ex) ** 2)))


def fit_order(N, errors) -> float:
    """Least-squares slope of -log(error) against log(N)."""
    N = np.asarray(N, dtype=float)
    e = np.asarray(errors, dtype=float)
    if N.size < 2 or N.size != e.size:
        raise ValueError("need at least two (N, error) pairs of equal length")
    if np.any(e <= 0) or np.any(N <= 0):
        raise ValueError("errors and N must be positive for a log-log fit")
    slope = np.polyfit(np.log(N), np.log(e), 1)[0]
    return float(-slope)


def successive_orders(N, errors) -> np.ndarray:
    """ln(e_k/e_{k+1}) / ln(N_{k+1}/N_k) between consecutive rows."""
    N = np.asarray(N, dtype=float)
    e = np.asarray(errors, dtype=float)
    return np.log(e[:-1] / e[1:]) / np.log(N[1:] / N[:-1])


def predicted_rate(family: str, s: float, d: int, r: float | None = None) -> float:
    """Expected algebraic H^s convergence rate (without the epsilon)."""
    if family == "gaussian":
        return 2 * s + d - 0.5
    if family == "rational":
        if r is None:
            raise ValueError("rational family needs the decay exponent r")
        return min(2 * r - s, 2 * s + d) - 0.5
    raise ValueError(f"unknown solution family {family!r}")


def asymptotic_window(n: int) -> slice:
    """Default fitting window: the last half of the sequence (at least two points)."""
    return slice(min(n // 2, max(n - 2, 0)), n)


@dataclass
class ConvergenceReport:
    N: list = field(default_factory=list)
    error_max: list = field(default_factory=list)
    error_l2: list = field(default_factory=list)
    error_hs: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, N: int, emax: float, el2: float, ehs: float) -> None:
        if self.N and N <= self.N[-1]:
            raise ValueError(f"N must increase, got {N} after {self.N[-1]}")
        self.N.append(int(N))
        self.error_max.append(float(emax))
        self.error_l2.append(float(el2))
        self.error_hs.append(float(ehs))

    def slopes(self, window: slice | None = None) -> dict:
        w = window or asymptotic_window(len(self.N))
        out = {}
        for name in ("error_max", "error_l2", "error_hs"):
            e = np.asarray(getattr(self, name))[w]
            n = np.asarray(self.N)[w]
            ok = e > 0
            out[name] = fit_order(n[ok], e[ok]) if ok.sum() >= 2 else float("nan")
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# " + json.dumps(self.meta, sort_keys=True) + "\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["N", "error_max", "error_l2", "error_hs"])
        for row in zip(self.N, self.error_max, self.error_l2, self.error_hs):
            wr.writerow([row[0]] + [f"{v:.5e}" for v in row[1:]])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ConvergenceReport":
        lines = text.splitlines()
        meta = json.loads(lines[0][2:]) if lines and lines[0].startswith("# ") else {}
        rows = list(csv.reader(line for line in lines if not line.startswith("#")))
        rep = cls(meta=meta)
        for r in rows[1:]:
            rep.add(int(r[0]), float(r[1]), float(r[2]), float(r[3]))
        return rep
