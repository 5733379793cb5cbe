"""Coefficient-transform operators on fractional series.

All operators act termwise on ``a_n`` (``n >= 2``) and keep the leading
``z``.  With ``w_n(beta) = (beta+1)_{n-1} / (n-1)!`` the differential-type
operator multiplies by ``w_n`` and the integral-type operator by ``1/w_n``,
so the pair is exactly inverse.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, UsageError
from .fracseries import FracPowerSeries, TailModel, pochhammer


def _check_beta(beta: float) -> None:
    if not beta >= 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")


def ruscheweyh_weights(beta: float, N: int) -> np.ndarray:
    """``(beta+1)_{n-1} / (n-1)!`` for ``n = 1..N`` (first entry 1)."""
    _check_beta(beta)
    w = np.empty(N)
    w[0] = 1.0
    for n in range(2, N + 1):
        w[n - 1] = w[n - 2] * (beta + n - 1) / (n - 1)
    return w


def noor_weights(beta: float, N: int) -> np.ndarray:
    """``(n-1)! / (beta+1)_{n-1}`` for ``n = 1..N`` (first entry 1)."""
    _check_beta(beta)
    w = np.empty(N)
    w[0] = 1.0
    for n in range(2, N + 1):
        w[n - 1] = w[n - 2] * (n - 1) / (beta + n - 1)
    return w


def _transform(F: FracPowerSeries, weights: np.ndarray, tail: TailModel | None):
    c = F.coeffs * weights
    c[0] = 1.0
    new_tail = None if F.tail is None else F.tail.times(tail)
    return FracPowerSeries(F.mu, c, new_tail)


def ruscheweyh_frac(F: FracPowerSeries, beta: float) -> FracPowerSeries:
    """``b_n = (beta+1)_{n-1}/(n-1)! * a_n``; ``beta = 0`` is the identity."""
    w = ruscheweyh_weights(beta, F.N)
    return _transform(F, w, TailModel((beta + 1.0,), (1.0,)))


def noor_frac(F: FracPowerSeries, beta: float) -> FracPowerSeries:
    """``b_n = (n-1)!/(beta+1)_{n-1} * a_n``; ``beta = 0`` is the identity."""
    w = noor_weights(beta, F.N)
    return _transform(F, w, TailModel((1.0,), (beta + 1.0,)))


def znoor_weights(beta: float, mu: float, N: int) -> np.ndarray:
    """``mu n! / (beta+1)_{n-1}`` for ``n >= 2``, with a leading 1."""
    w = noor_weights(beta, N) * mu * np.arange(1, N + 1)
    w[0] = 1.0
    return w


def znoor_weights_gamma(beta: float, mu: float, N: int) -> np.ndarray:
    """Same weights written as ``mu Gamma(n+1) Gamma(beta+1) / Gamma(n+beta)``.

    Computed in log space so it stays finite for large ``n``.  At ``beta = 0``
    the ``n = 1`` entry would involve ``Gamma(0)``; the leading weight is 1
    by definition anyway.
    """
    _check_beta(beta)
    n = np.arange(2, N + 1, dtype=float)
    logw = gammaln(n + 1.0) + gammaln(beta + 1.0) - gammaln(n + beta)
    return np.concatenate([[1.0], mu * np.exp(logw)])


def z_noor_derivative(F: FracPowerSeries, beta: float, literal: bool = False) -> FracPowerSeries:
    """``z (I F)'``: coefficients ``mu n!/(beta+1)_{n-1} a_n``.

    The default keeps the leading coefficient 1.  ``literal=True``
    differentiates the transformed series term by term instead; because the
    leading term is ``z`` (exponent one) both forms coincide.
    """
    _check_beta(beta)
    if literal:
        G = noor_frac(F, beta)
        exps = np.concatenate([[1.0], F.mu * np.arange(2, F.N + 1)])
        c = G.coeffs * exps
        tail = None if G.tail is None else G.tail.times(TailModel((2.0,), (1.0,), F.mu))
        return FracPowerSeries(F.mu, c, tail)
    w = znoor_weights(beta, F.mu, F.N)
    return _transform(F, w, TailModel((1.0, 2.0), (1.0, beta + 1.0), F.mu))


def psi_weight(n: int, alpha: float, beta: float, A_a: float) -> float:
    """``(alpha+1)_{n-1} A_a / (n (beta+1)_{n-1})``."""
    if int(n) != n or n < 2:
        raise UsageError(f"psi weight is defined for integer n >= 2, got {n}")
    if A_a <= 0:
        raise DomainError("A(a) must be positive")
    n = int(n)
    return pochhammer(alpha + 1.0, n - 1) * A_a / (n * pochhammer(beta + 1.0, n - 1))


def psi_bound_coefficient(alpha: float, beta: float, A_a: float) -> float:
    """The closed form ``alpha A(a) / (2 beta)`` claimed as the value at ``n = 2``."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    return alpha * A_a / (2.0 * beta)


def psi_weights(alpha: float, beta: float, A_a: float, N: int) -> np.ndarray:
    """``psi(n)`` for ``n = 2..N``, evaluated in log space."""
    n = np.arange(2, N + 1, dtype=float)
    logp = (gammaln(alpha + n) - gammaln(alpha + 1.0)
            - gammaln(beta + n) + gammaln(beta + 1.0))
    return np.exp(logp) * A_a / n


def psi_monotone_range(alpha: float, beta: float, A_a: float = 1.0, N: int = 64) -> int:
    """Largest ``m <= N`` such that ``psi`` is non-increasing on ``2..m``."""
    p = psi_weights(alpha, beta, A_a, N)
    for i in range(1, p.size):
        if p[i] > p[i - 1] * (1.0 + 1e-12):
            return i + 1
    return N

