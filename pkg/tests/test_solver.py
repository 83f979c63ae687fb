import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mcfrac import analytic
from mcfrac.basis import MCFBasis, make_bases
from mcfrac.mcf import mapped_quadrature
from mcfrac.solver import (DtQuadratureSpec, FracOperatorSpec, SingularOperatorError, apply_fraclap,
                           dt_multiplier, dt_quadrature_apply, dt_shifted_multiplier, eigen_sums,
                           solve_fractional, solve_multiterm, solve_shifted)
from mcfrac.transforms import FOURIER_LIKE, Expansion, analyze, sample, synthesize

B1 = (MCFBasis(32, 2.5),)
B2 = make_bases(16, 2.0, 2)


def unit(bases, q):
    c = np.zeros(tuple(b.size for b in bases))
    c[q] = 1.0
    return Expansion(c, tuple(bases), FOURIER_LIKE)


def test_unit_mode_solution():
    s, gamma, q = 0.4, 0.7, (3, 5)
    u = solve_fractional(unit(B2, q), s, gamma, B2)
    lam = B2[0].eigenvalues[3] + B2[1].eigenvalues[5]
    expect = np.zeros((17, 17))
    expect[q] = 1 / (gamma + lam**s)
    assert np.allclose(u.coeffs, expect, rtol=1e-14, atol=0)


def test_residual_vanishes():
    s, gamma = 0.35, 1.0
    pr = analytic.rational_problem(s, 2.3, 2, gamma)
    u = solve_fractional(pr.rhs, s, gamma, B2)
    resid = apply_fraclap(u, s).coeffs + gamma * u.coeffs - analyze(pr.rhs, B2).coeffs
    assert np.linalg.norm(resid) < 1e-10


def test_gamma_zero_allowed_and_negative_rejected():
    u = solve_fractional(analytic.table_source, 0.5, 0.0, B1)
    assert np.all(np.isfinite(u.coeffs))
    with pytest.raises(ValueError):
        solve_fractional(analytic.table_source, 0.5, -1.0, B1)


@pytest.mark.parametrize("s", [0.0, -0.1, 1.2])
def test_order_range(s):
    with pytest.raises(ValueError):
        solve_fractional(analytic.table_source, s, 1.0, B1)


def test_s_equal_one_is_galerkin_laplacian():
    # (grad u_N, grad T_q) by quadrature equals |lambda_q| u_q
    b = MCFBasis(20, 1.5)
    f = lambda x: np.exp(-x * x) * (1 + x)
    u = solve_fractional(f, 1.0, 1.0, [b])
    rule = mapped_quadrature(2 * b.N + 1, b.nu)
    D = b.fourier_like.derivatives(rule.nodes)
    du = D @ u.coeffs
    galerkin = (D * rule.weights[:, None]).T @ du
    assert np.allclose(galerkin, apply_fraclap(u, 1.0).coeffs, atol=1e-9)


def test_apply_endpoints_and_semigroup(rng):
    u = Expansion(rng.standard_normal((17, 17)), B2, FOURIER_LIKE)
    assert np.array_equal(apply_fraclap(u, 0.0).coeffs, u.coeffs)
    a = apply_fraclap(apply_fraclap(u, 0.3), 0.45).coeffs
    b = apply_fraclap(u, 0.75).coeffs
    assert np.allclose(a, b, rtol=1e-12, atol=0)
    with pytest.raises(ValueError):
        apply_fraclap(u, 1.5)


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
def test_linearity(alpha, beta):
    f = lambda x: np.exp(-x * x)
    g = lambda x: 1 / (1 + x * x) ** 2
    lhs = solve_fractional(lambda x: alpha * f(x) + beta * g(x), 0.6, 1.0, B1).coeffs
    rhs = alpha * solve_fractional(f, 0.6, 1.0, B1).coeffs + beta * solve_fractional(g, 0.6, 1.0, B1).coeffs
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_monotone_in_order():
    lam = eigen_sums(B1)
    u = [solve_fractional(unit(B1, (p,)), s, 1.0, B1).coeffs for s, p in [(0.3, -1), (0.6, -1)]]
    assert lam[-1] > 1 and u[1][-1] < u[0][-1]
    small = [solve_fractional(unit(B1, (0,)), s, 1.0, B1).coeffs[0] for s in (0.3, 0.6)]
    assert lam[0] < 1 and small[1] > small[0]


def test_multiterm_reductions():
    f = analytic.table_source
    single = solve_fractional(f, 0.6, 1.0, B1).coeffs
    multi = solve_multiterm(f, FracOperatorSpec(((1.0, 0.6),), 1.0), B1).coeffs
    assert np.array_equal(single, multi)
    with_zero = solve_multiterm(f, FracOperatorSpec(((1.0, 0.6), (0.5, 0.0)), 0.2), B1).coeffs
    shifted = solve_multiterm(f, FracOperatorSpec(((1.0, 0.6),), 0.7), B1).coeffs
    assert np.allclose(with_zero, shifted, rtol=1e-14)


def test_multiterm_singular_mode_is_named():
    spec = FracOperatorSpec(((1.0, 0.5), (-1.0, 0.0)), 0.0)
    with pytest.raises(SingularOperatorError, match="mode"):
        solve_multiterm(analytic.table_source, spec, B1)


def test_spec_parsing_and_validation():
    spec = FracOperatorSpec.parse_terms("1:0.77, 2:0.33,1.4142:0.21,1:0", gamma=0.0)
    assert spec.terms[1] == (2.0, 0.33) and len(spec.terms) == 4
    with pytest.raises(ValueError):
        FracOperatorSpec.parse_terms("1-0.5")
    with pytest.raises(ValueError):
        FracOperatorSpec(((1.0, 1.5),))
    with pytest.raises(ValueError):
        FracOperatorSpec((), 1.0)
    with pytest.raises(ValueError):
        DtQuadratureSpec(0)


def test_multiterm_example_decays():
    terms = ((1.0, 0.77), (2.0, 0.33), (math.sqrt(2), 0.21), (1.0, 0.0))
    r = 3 * math.pi / 4
    pr = analytic.rational_problem(0.77, r, 1, 0.0, terms)
    spec = FracOperatorSpec(terms, 0.0)
    errs = []
    for N in (16, 32, 64, 128):
        B = (MCFBasis(N, 2.5),)
        u = synthesize(solve_multiterm(pr.rhs, spec, B))
        errs.append(np.max(np.abs(u.values - sample(pr.exact, B))))
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_shifted_solve():
    lam = eigen_sums(B1)
    u = solve_shifted(unit(B1, (4,)), 0.5, 1.0, B1)
    assert u.coeffs[4] == pytest.approx(1 / math.sqrt(1 + lam[4]), rel=1e-14)
    one = solve_shifted(analytic.table_source, 1.0, 0.8, B1).coeffs
    helm = solve_fractional(analytic.table_source, 1.0, 0.8, B1).coeffs
    assert np.allclose(one, helm, rtol=1e-13)
    with pytest.raises(ValueError):
        solve_shifted(analytic.table_source, 0.5, 0.0, B1)
    dt = dt_shifted_multiplier(lam, 0.4, 1.0)
    assert np.allclose(dt, (1 + lam) ** 0.4, rtol=1e-8)


@pytest.mark.parametrize("s", [0.3, 0.5, 0.7])
def test_dunford_taylor_converges_monotonically(s):
    b = MCFBasis(64, 2.5)
    lam = np.array([b.eigenvalues[0], 1.0, b.eigenvalues[-1]])
    errs = np.array([np.abs(dt_multiplier(lam, s, DtQuadratureSpec(M)) / lam**s - 1)
                     for M in (8, 16, 32, 64, 128)])
    assert np.all(errs[-1] < 1e-8)
    # strictly decreasing until the roundoff floor is reached
    for k in range(3):
        above = errs[:-1, k] > 1e-12
        assert np.all(errs[1:, k][above] < errs[:-1, k][above])


def test_dt_apply_single_mode_and_domain():
    b = (MCFBasis(24, 2.0),)
    u = unit(b, (0,))
    out = dt_quadrature_apply(u, 0.45)
    assert out.coeffs[0] == pytest.approx(b[0].eigenvalues[0] ** 0.45, rel=1e-8)
    for s in (0.0, 1.0):
        with pytest.raises(ValueError):
            dt_quadrature_apply(u, s)


def test_dt_integral_identity_half():
    val = dt_multiplier(np.array([1.0]), 0.5)[0] / analytic.norm_constant_cs(0.5)
    assert val == pytest.approx(math.pi / 2, rel=1e-13)


def test_rhs_expansion_on_other_bases_rejected():
    e = Expansion(np.zeros(17), (MCFBasis(16, 1.0),), FOURIER_LIKE)
    with pytest.raises(ValueError):
        solve_fractional(e, 0.5, 1.0, (MCFBasis(16, 2.0),))
