import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import chebyshev as C

from mcfrac.cheb import cheb_eval, chebyshev_gauss, coeffs_to_values, values_to_coeffs


def test_gauss_rule_nodes_are_roots_and_descending():
    rule = chebyshev_gauss(9)
    assert np.all(np.diff(rule.nodes) < 0)
    assert np.allclose(np.cos(9 * np.arccos(rule.nodes)), 0, atol=1e-14)
    assert np.allclose(rule.weights, np.pi / 9)
    assert np.array_equal(rule.nodes, -rule.nodes[::-1])


def test_gauss_rule_exactness():
    # int T_k(y)/sqrt(1-y^2) dy = pi for k = 0, else 0; exact for k <= 2n-1
    rule = chebyshev_gauss(7)
    for k in range(14):
        q = np.sum(rule.weights * np.cos(k * np.arccos(rule.nodes)))
        assert q == pytest.approx(np.pi if k == 0 else 0.0, abs=1e-13)


def test_gauss_rule_rejects_empty():
    with pytest.raises(ValueError):
        chebyshev_gauss(0)


def test_clenshaw_matches_numpy(rng):
    a = rng.standard_normal(17)
    y = np.linspace(-1, 1, 33)
    assert np.allclose(cheb_eval(a, y), C.chebval(y, a), atol=1e-13)
    assert isinstance(cheb_eval(a, 0.3), float)


def test_clenshaw_rejects_outside_interval():
    with pytest.raises(ValueError):
        cheb_eval([1.0, 2.0], 1.5)


@given(st.integers(min_value=1, max_value=64), st.integers(min_value=0, max_value=2**31 - 1))
def test_roundtrip_and_direct_agree(n, seed):
    a = np.random.default_rng(seed).standard_normal(n)
    v = coeffs_to_values(a)
    assert np.allclose(values_to_coeffs(v), a, atol=1e-12)
    assert np.allclose(v, coeffs_to_values(a, method="direct"), atol=1e-12)
    assert np.allclose(values_to_coeffs(v, method="direct"), a, atol=1e-12)


def test_polynomial_reproduced_exactly(rng):
    a = rng.standard_normal(12)
    rule = chebyshev_gauss(12)
    assert np.allclose(values_to_coeffs(C.chebval(rule.nodes, a), rule), a, atol=1e-13)


def test_transform_along_axis_and_complex(rng):
    a = rng.standard_normal((5, 8)) + 1j * rng.standard_normal((5, 8))
    v = coeffs_to_values(a, axis=1)
    assert np.allclose(v[2], coeffs_to_values(a[2]))
    assert np.allclose(values_to_coeffs(v, axis=1), a, atol=1e-13)


def test_length_mismatch_and_bad_method():
    with pytest.raises(ValueError):
        values_to_coeffs(np.ones(4), chebyshev_gauss(5))
    with pytest.raises(ValueError):
        coeffs_to_values(np.ones(4), method="fft")
