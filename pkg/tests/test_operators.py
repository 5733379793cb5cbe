import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_series
from gftfrac.errors import DomainError, UsageError
from gftfrac.fracseries import hadamard, identity_series, koebe_frac
from gftfrac.operators import (
    noor_frac,
    noor_weights,
    psi_bound_coefficient,
    psi_monotone_range,
    psi_weight,
    psi_weights,
    ruscheweyh_frac,
    z_noor_derivative,
    znoor_weights,
    znoor_weights_gamma,
)


def loop_poch(x, k):
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


@pytest.mark.parametrize("op", [ruscheweyh_frac, noor_frac])
def test_beta_zero_is_identity(op, rng):
    F = random_series(rng, N=32, mu=1.5)
    assert op(F, 0.0) == F


@pytest.mark.parametrize("op", [ruscheweyh_frac, noor_frac, z_noor_derivative])
def test_identity_series_is_fixed(op):
    I = identity_series(2.0, 8)
    assert op(I, 3.0) == I


def test_ruscheweyh_koebe_example():
    G = ruscheweyh_frac(koebe_frac(1, 1, 4), 1.0)
    oracle = [loop_poch(2, n - 1) / math.factorial(n - 1) for n in range(1, 5)]
    assert np.allclose(G.coeffs, oracle, rtol=1e-15, atol=0)
    assert np.allclose(G.coeffs, [1, 2, 3, 4], rtol=1e-15, atol=0)


def test_noor_koebe_example():
    G = noor_frac(koebe_frac(1, 1, 4), 1.0)
    oracle = [math.factorial(n - 1) / loop_poch(2, n - 1) for n in range(1, 5)]
    assert np.allclose(G.coeffs, oracle, rtol=1e-15, atol=0)
    assert np.allclose(G.coeffs, [1, 1 / 2, 1 / 3, 1 / 4], rtol=1e-15, atol=0)


@pytest.mark.parametrize("op", [ruscheweyh_frac, noor_frac, z_noor_derivative])
def test_negative_beta_rejected(op):
    with pytest.raises(DomainError):
        op(koebe_frac(1, 1, 4), -0.1)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 5.0])
def test_inverse_pair_random_series(beta, rng):
    for _ in range(10):
        F = random_series(rng, N=64)
        G = noor_frac(ruscheweyh_frac(F, beta), beta)
        assert np.max(np.abs(G.coeffs - F.coeffs)) < 1e-12


@given(st.floats(0.0, 10.0), st.integers(2, 40))
def test_inverse_pair_property(beta, N):
    F = koebe_frac(2, 1.25, N)
    G = noor_frac(ruscheweyh_frac(F, beta), beta)
    assert np.allclose(G.coeffs, F.coeffs, rtol=1e-12, atol=0)


@given(st.floats(0.0, 8.0), st.floats(1.0, 3.0))
def test_convolution_consistency(beta, mu):
    F = koebe_frac(1.5, mu, 24)
    lhs = ruscheweyh_frac(F, beta).coeffs
    rhs = hadamard(koebe_frac(beta + 1.0, mu, 24), F).coeffs
    assert np.allclose(lhs, rhs, rtol=1e-13, atol=0)


def test_znoor_example():
    G = z_noor_derivative(koebe_frac(1, 1, 3), 1.0)
    oracle = [1.0] + [1.0 * math.factorial(n) / loop_poch(2, n - 1) for n in (2, 3)]
    assert np.allclose(G.coeffs, oracle, rtol=1e-15, atol=0)
    assert np.allclose(G.coeffs, [1, 1, 1], rtol=1e-15, atol=0)


def test_znoor_literal_matches_default(rng):
    F = random_series(rng, N=20, mu=1.5)
    a = z_noor_derivative(F, 2.0)
    b = z_noor_derivative(F, 2.0, literal=True)
    assert np.allclose(a.coeffs, b.coeffs, rtol=1e-14, atol=0)


def test_factorial_and_gamma_forms_agree():
    for beta in np.linspace(0.0, 10.0, 50):
        for mu in (1.0, 2.5):
            f = znoor_weights(beta, mu, 64)
            g = znoor_weights_gamma(beta, mu, 64)
            assert np.all(np.abs(f - g) <= 1e-10 * np.abs(f))


def test_noor_weights_decrease_in_beta():
    betas = np.linspace(0.0, 10.0, 41)
    W = np.array([noor_weights(b, 30) for b in betas])
    assert np.all(np.diff(W[:, 1:], axis=0) < 0)


def test_psi_weight_examples():
    # psi weight: (alpha+1)_{n-1} A / (n (beta+1)_{n-1})
    assert psi_weight(2, 2.0, 4.0, 1.0) == pytest.approx(3.0 / (2 * 5.0), rel=1e-15)
    assert psi_bound_coefficient(2.0, 4.0, 1.0) == 0.25
    for a in (1.0, 2.5, 7.0):
        assert psi_weight(2, a, a, 1.0) == 0.5
        assert psi_bound_coefficient(a, a, 1.0) == 0.5
    assert psi_weight(3, 1.0, 1.0, 1.0) == pytest.approx(loop_poch(2, 2) / (3 * loop_poch(2, 2)))
    assert psi_weight(3, 1.0, 1.0, 1.0) == pytest.approx(1 / 3, rel=1e-15)


@pytest.mark.parametrize("n", [1, 0, 2.5])
def test_psi_weight_usage(n):
    with pytest.raises(UsageError):
        psi_weight(n, 1.0, 1.0, 1.0)


def test_psi_vectorized_matches_scalar():
    w = psi_weights(1.5, 3.0, 2.0, 40)
    s = [psi_weight(n, 1.5, 3.0, 2.0) for n in range(2, 41)]
    assert np.allclose(w, s, rtol=1e-12, atol=0)


@given(st.floats(1.0, 10.0), st.floats(0.0, 10.0))
def test_psi_non_increasing_when_alpha_le_beta(alpha, extra):
    beta = alpha + extra
    w = psi_weights(alpha, beta, 1.0, 64)
    assert np.all(w <= w[0] * (1 + 1e-12))
    assert psi_monotone_range(alpha, beta) == 64


def test_psi_monotonicity_breaks_for_large_alpha():
    assert psi_monotone_range(10.0, 1.0) < 64
