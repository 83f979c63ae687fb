"""Oracle checks run by ``mcfrac validate``.

Every check returns a :class:`CheckResult`; the registry order is the run
order.  Checks are deterministic and take well under a second each, apart
from the short TS4 mass run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import analytic, special
from .basis import MCFBasis
from .fnls import W1, W2, W3, W4, FnlsConfig, run_simulation
from .fourier_like import eigendecompose
from .mcf import StiffnessMatrix, mapped_quadrature, mcf_derivative_vandermonde, mcf_vandermonde, stiffness_matrix
from .norms import error_hs, fit_order, predicted_rate
from .solver import (DtQuadratureSpec, FracOperatorSpec, apply_fraclap, dt_multiplier,
                     dt_shifted_multiplier, solve_fractional, solve_multiterm)
from .transforms import analyze, interpolate, sample, synthesize


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "value": self.value,
                "tolerance": self.tolerance, "detail": self.detail}


def _result(name, value, tol, detail=""):
    value = float(value)
    return CheckResult(name, bool(np.isfinite(value) and value < tol), value, tol, detail)


def biorthogonality_errors(N: int = 64, nu: float = 2.5, perturb: float = 0.0):
    """Max deviations of the L^2 and H^1 Gram matrices of the Fourier-like basis.

    Uses a mapped rule with 2(N+1) points.  ``perturb`` is added to S[0, 0]
    before the eigendecomposition (sensitivity hook).
    """
    S = stiffness_matrix(N, nu)
    if perturb:
        bands = S.bands.copy()
        bands[0, 0] += perturb
        S = StiffnessMatrix(S.N, S.nu, bands)
    fl = eigendecompose(S)
    rule = mapped_quadrature(2 * N + 1, nu)
    V = mcf_vandermonde(N, rule.nodes, nu) @ fl.eigenvectors
    D = mcf_derivative_vandermonde(N, rule.nodes, nu) @ fl.eigenvectors
    mass = (V * rule.weights[:, None]).T @ V
    stiff = (D * rule.weights[:, None]).T @ D
    e_mass = np.max(np.abs(mass - np.eye(N + 1)))
    e_stiff = np.max(np.abs(stiff - np.diag(fl.eigenvalues)))
    return float(e_mass), float(e_stiff)


def check_biorthogonality(perturb: float = 0.0):
    em, es = biorthogonality_errors(perturb=perturb)
    return [_result("biorthogonality_l2", em, 1e-10), _result("biorthogonality_h1", es, 1e-9)]


def check_transform_roundtrip():
    b = MCFBasis(255, 2.5)
    e = interpolate(lambda x: np.exp(-x * x) * np.cos(3 * x), [b])
    back = interpolate(synthesize(e), [b])
    return [_result("transform_roundtrip", np.max(np.abs(back.coeffs - e.coeffs)), 1e-13)]


def _dt_lambdas():
    lam = MCFBasis(64, 2.5).eigenvalues
    return np.array([lam[0], 1.0, lam[-1]])


def check_dunford_taylor():
    lam = _dt_lambdas()
    out = []
    for s in (0.3, 0.5, 0.7):
        rel = np.max(np.abs(dt_multiplier(lam, s) / lam**s - 1.0))
        out.append(_result(f"dunford_taylor_s{s}", rel, 1e-8))
    rel = np.max(np.abs(dt_shifted_multiplier(lam, 0.5, 1.0) / (1.0 + lam) ** 0.5 - 1.0))
    out.append(_result("dunford_taylor_shifted", rel, 1e-8))
    return out


def check_dunford_taylor_identity():
    """C_s int_0^inf t^{1-2s} lam^{1-s}/(1+t^2 lam) dt = 1; at s = 1/2 the integral is pi/2."""
    out = []
    for s in (0.3, 0.5, 0.7):
        lam = np.array([1e-3, 1.0, 1e3])
        vals = dt_multiplier(lam, s, DtQuadratureSpec(200)) * lam ** (-s)
        out.append(_result(f"dunford_taylor_identity_s{s}", np.max(np.abs(vals - 1)), 1e-10))
    half = dt_multiplier(np.array([1.0]), 0.5)[0] / analytic.norm_constant_cs(0.5)
    out.append(_result("dunford_taylor_identity_half", abs(half - math.pi / 2), 1e-12))
    return out


def check_special_functions():
    err = max(
        abs(special.gamma_fn(0.3) * special.gamma_fn(0.7) - math.pi / math.sin(0.3 * math.pi)),
        abs(special.hyp1f1(1.0, 2.0, -1.0) - (1 - math.exp(-1.0))),
        abs(special.hyp2f1(1.3, 0.8, 0.8, -2.0) - 3.0**-1.3),
        abs(special.hyp2f1(1.3, 0.8, 0.8, -200.0) / 201.0**-1.3 - 1),
    )
    return [_result("special_functions", err, 1e-12)]


def check_analytic_vs_fourier():
    err = 0.0
    for s in (0.3, 0.7):
        for x in (0.0, 0.8, 3.0):
            err = max(err, abs(analytic.fraclap_gaussian(x, s) - analytic.fraclap_quadrature_1d(
                None, x, s, fourier=analytic.gaussian_fourier)))
            err = max(err, abs(analytic.fraclap_rational(x, s, 2.3) - analytic.fraclap_quadrature_1d(
                None, x, s, fourier=analytic.rational_fourier(2.3))))
    return [_result("analytic_vs_fourier", err, 1e-6)]


def check_solver_diagonality():
    bases = (MCFBasis(48, 2.5), MCFBasis(40, 2.0))
    s, gamma = 0.6, 1.0
    pr = analytic.gaussian_problem(s, 2, gamma)
    u = solve_fractional(pr.rhs, s, gamma, bases)
    back = apply_fraclap(u, s).coeffs + gamma * u.coeffs
    fh = analyze(pr.rhs, bases).coeffs
    return [_result("solver_diagonality", np.max(np.abs(back - fh)) / np.max(np.abs(fh)), 1e-12)]


def check_multiterm_reduction():
    b = (MCFBasis(64, 2.5),)
    f = analytic.table_source
    single = solve_fractional(f, 0.6, 1.0, b).coeffs
    multi = solve_multiterm(f, FracOperatorSpec(((1.0, 0.6),), 1.0), b).coeffs
    return [CheckResult("multiterm_single_term", bool(np.array_equal(single, multi)),
                        float(np.max(np.abs(single - multi))), 0.0, "bitwise equality")]


def check_convergence_rate():
    s, d = 0.7, 1
    pr = analytic.gaussian_problem(s, d)
    Ns, errs = [64, 96, 128, 192, 256], []
    for N in Ns:
        b = (MCFBasis(N, 2.5),)
        errs.append(error_hs(solve_fractional(pr.rhs, s, 1.0, b), sample(pr.exact, b), s, b))
    dev = abs(fit_order(Ns, errs) - predicted_rate("gaussian", s, d))
    return [_result("hs_rate_gaussian_d1", dev, 0.3)]


def check_ts4():
    wsum = max(abs(2 * (W1 + W3) - 0.5), abs(2 * W2 + W4 - 0.5))
    cfg = FnlsConfig(s=0.7, gamma=1.0, dt=1e-3, T=0.2, N=64, nu=2.0)
    drift = run_simulation(cfg).max_mass_drift
    lin = run_simulation(replace(cfg, gamma=0.0, dt=0.05, T=0.2)).state.values
    lin_ref = run_simulation(replace(cfg, gamma=0.0, dt=0.2, T=0.2)).state.values
    return [_result("ts4_weight_sums", wsum, 1e-15),
            _result("ts4_mass_drift", drift, 1e-10),
            _result("ts4_linear_exact", np.max(np.abs(lin - lin_ref)), 1e-10)]


CHECKS = {
    "biorthogonality": check_biorthogonality,
    "transform": check_transform_roundtrip,
    "dunford_taylor": check_dunford_taylor,
    "dunford_taylor_identity": check_dunford_taylor_identity,
    "special": check_special_functions,
    "analytic": check_analytic_vs_fourier,
    "solver": check_solver_diagonality,
    "multiterm": check_multiterm_reduction,
    "convergence": check_convergence_rate,
    "ts4": check_ts4,
}


def run_checks(filter_text: str | None = None, perturb_stiffness: float = 0.0) -> list[CheckResult]:
    """Run every registered check whose group name contains ``filter_text``.

    The filter matches case-insensitively and ignores '-' versus '_', so
    ``dunford`` selects both Dunford-Taylor groups.
    """
    key = (filter_text or "").lower().replace("-", "_")
    results = []
    for name, fn in CHECKS.items():
        if key and key not in name:
            continue
        if name == "biorthogonality":
            results.extend(fn(perturb=perturb_stiffness))
        else:
            results.extend(fn())
    return results
