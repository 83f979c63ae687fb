import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mcfrac.special import ConvergenceError, gamma_fn, hyp1f1, hyp2f1, rgamma


def test_gamma_values():
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_fn(0.3) * gamma_fn(0.7) == pytest.approx(math.pi / math.sin(0.3 * math.pi), rel=1e-12)
    prod = gamma_fn(0.5) * np.prod([k + 0.5 for k in range(7)])
    assert gamma_fn(7.5) == pytest.approx(prod, rel=1e-12)


@given(st.floats(min_value=1e-3, max_value=50))
def test_gamma_against_mpmath(x):
    assert gamma_fn(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


def test_gamma_poles():
    with pytest.raises(ValueError):
        gamma_fn(0.0)
    with pytest.raises(ValueError):
        gamma_fn(-3.0)
    assert rgamma(-2.0) == 0.0
    assert rgamma(200.0) == pytest.approx(math.exp(-math.lgamma(200.0)))


def test_hyp1f1_simple_values():
    assert hyp1f1(0.7, 1.3, 0.0) == 1.0
    assert hyp1f1(1.0, 2.0, -1.0) == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert hyp1f1(1.5, 1.5, -3.0) == pytest.approx(math.exp(-3.0), rel=1e-14)
    assert hyp1f1(-2.0, 1.0, -2.0) == pytest.approx(1 + 4 + 2, rel=1e-14)   # terminates after three terms


def test_hyp1f1_asymptotic_leading_term():
    a, b, z = 1.3, 0.5, -1e4
    lead = gamma_fn(b) / gamma_fn(b - a) * (-z) ** (-a)
    assert abs(hyp1f1(a, b, z) / lead - 1) < 10 / abs(z)


@given(st.floats(min_value=0.05, max_value=4.0), st.floats(min_value=0.3, max_value=3.0),
       st.floats(min_value=-3e3, max_value=0.0))
def test_hyp1f1_against_mpmath(a, b, z):
    ref = float(mpmath.hyp1f1(a, b, z))
    assert hyp1f1(a, b, z) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_hyp1f1_domain():
    with pytest.raises(ValueError):
        hyp1f1(1.0, -2.0, -1.0)
    with pytest.raises(ValueError):
        hyp1f1(1.0, 2.0, 1.0)


def test_hyp1f1_vectorised():
    z = np.array([-0.1, -10.0, -100.0, -1e4])
    out = hyp1f1(0.8, 0.5, z)
    assert out.shape == (4,)
    assert np.allclose(out, [float(mpmath.hyp1f1(0.8, 0.5, v)) for v in z], rtol=1e-12)


def test_hyp2f1_identities():
    assert hyp2f1(1.3, 0.7, 0.7, -2.0) == pytest.approx(3.0**-1.3, rel=1e-14)
    assert hyp2f1(0.4, 1.1, 2.0, 0.0) == 1.0
    direct = sum(mpmath.rf(0.8, k) * mpmath.rf(1.5, k) / mpmath.rf(0.75, k) / mpmath.factorial(k) * (-0.5) ** k
                 for k in range(200))
    assert hyp2f1(0.8, 1.5, 0.75, -0.5) == pytest.approx(float(direct), rel=1e-12)


@given(st.floats(min_value=0.1, max_value=5.0), st.floats(min_value=0.1, max_value=4.0),
       st.floats(min_value=0.3, max_value=2.5), st.floats(min_value=-1e5, max_value=0.0))
def test_hyp2f1_against_mpmath(a, b, c, z):
    ref = float(mpmath.hyp2f1(a, b, c, z))
    assert hyp2f1(a, b, c, z) == pytest.approx(ref, rel=1e-10, abs=1e-250)


# b - a an integer (exactly or up to float rounding, e.g. 1.3 - 2.3)
@pytest.mark.parametrize("a,b,c", [(1.5, 2.5, 1.0), (2.0, 1.0, 1.5), (0.8, 1.8, 0.5),
                                   (2.3, 1.3, 0.5), (2.8, 1.8, 1.5), (1.3, 1.3, 0.5)])
@pytest.mark.parametrize("z", [-1.5, -2.5, -40.0, -1e4])
def test_hyp2f1_integer_gap(a, b, c, z):
    ref = float(mpmath.hyp2f1(a, b, c, z))
    assert hyp2f1(a, b, c, z) == pytest.approx(ref, rel=1e-10)


def test_hyp1f1_large_argument():
    for z in (-700.0, -1e4, -1e7):
        assert hyp1f1(0.8, 0.5, z) == pytest.approx(float(mpmath.hyp1f1(0.8, 0.5, z)), rel=1e-12)


def test_hyp2f1_domain():
    with pytest.raises(ValueError):
        hyp2f1(1.0, 1.0, 0.0, -1.0)
    with pytest.raises(ValueError):
        hyp2f1(1.0, 1.0, 1.0, np.nan)


def test_convergence_error_is_arithmetic():
    assert issubclass(ConvergenceError, ArithmeticError)
