"""Real Gamma function and the Fox-Wright 2Psi1 series.

Series convention::

    2Psi1[z | (a1,A1),(a2,A2); (b1,B1)]
        = sum_{n>=0} Gamma(a1+A1 n) Gamma(a2+A2 n) / Gamma(b1+B1 n) * z^n / n!
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConvergenceError, DomainError

DEFAULT_TOL = 1e-12
TERM_BUDGET = 10_000


def gamma_real(x: float) -> float:
    if not x > 0.0:
        raise DomainError(f"gamma_real needs x > 0, got {x}")
    if x <= 100.0:
        return math.gamma(x)
    return math.exp(math.lgamma(x))


def log_gamma_real(x: float) -> float:
    if not x > 0.0:
        raise DomainError(f"log_gamma_real needs x > 0, got {x}")
    return math.lgamma(x)


@dataclass(frozen=True)
class FoxWrightParams:
    a1: float
    A1: float
    a2: float
    A2: float
    b1: float
    B1: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if min(self.A1, self.A2, self.B1) <= 0:
            raise DomainError("weights A1, A2, B1 must be positive")
        # with positive weights, a + A n > 0 for all n >= 0 iff a > 0
        if min(self.a1, self.a2, self.b1) <= 0:
            raise DomainError("a1, a2, b1 must be positive (Gamma poles on the path)")
        if not self.tol > 0:
            raise DomainError("tol must be positive")

    @property
    def excess(self) -> float:
        """``B1 - A1 - A2 + 1``: positive means entire, zero means radius one-ish."""
        return self.B1 - self.A1 - self.A2 + 1.0

    @property
    def limit_ratio_factor(self) -> float:
        return self.A1 ** self.A1 * self.A2 ** self.A2 / self.B1 ** self.B1


class FoxWrightResult(NamedTuple):
    value: float
    tail: float
    terms: int


def _log_term(p: FoxWrightParams, n: int, logz: float) -> float:
    return (math.lgamma(p.a1 + p.A1 * n) + math.lgamma(p.a2 + p.A2 * n)
            - math.lgamma(p.b1 + p.B1 * n) - math.lgamma(n + 1.0) + n * logz)


def fox_wright_2psi1(p: FoxWrightParams, z: float, budget: int = TERM_BUDGET) -> FoxWrightResult:
    """Partial sum of the 2Psi1 series at real ``0 <= z < 1`` with a tail bound.

    Summation stops once the next term and a geometric majorant of everything
    after it are both below ``tol`` times the running sum.  The majorant uses
    the larger of the current term ratio and the asymptotic ratio, which is a
    valid bound when the ratios are eventually monotone (true for the
    rational ratios of unit-weight parameters).
    """
    if not 0.0 <= z < 1.0:
        raise DomainError(f"2Psi1 argument must lie in [0, 1), got {z}")
    t0 = math.exp(_log_term(p, 0, 0.0))
    if z == 0.0:
        return FoxWrightResult(t0, 0.0, 1)
    excess = p.excess
    if excess < 0:
        raise ConvergenceError("2Psi1 diverges for B1 - A1 - A2 + 1 < 0")
    limit = z * p.limit_ratio_factor if excess == 0 else 0.0
    if limit >= 1.0:
        raise ConvergenceError(f"2Psi1 term ratio tends to {limit} >= 1")

    logz = math.log(z)
    total = t0
    log_prev = _log_term(p, 0, logz)
    for n in range(1, budget + 1):
        log_next = _log_term(p, n, logz)
        nxt = math.exp(log_next)
        rho = max(math.exp(log_next - log_prev), limit)
        if rho < 1.0:
            tail = nxt / (1.0 - rho)
            if nxt < p.tol * total and tail < p.tol * total:
                return FoxWrightResult(total, tail, n)
        total += nxt
        log_prev = log_next
    raise ConvergenceError(f"2Psi1 did not settle within {budget} terms at z={z}")


def _check_bound_args(beta: float, mu: float, r: float) -> None:
    if not beta >= 1.0:
        raise DomainError(f"beta must be >= 1, got {beta}")
    if not mu >= 1.0:
        raise DomainError(f"mu must be >= 1, got {mu}")
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")


def _bound(a1: float, beta: float, mu: float, r: float, tol: float) -> float:
    _check_bound_args(beta, mu, r)
    p = FoxWrightParams(a1, 1.0, 1.0, 1.0, beta + 2.0, 1.0, tol)
    s = fox_wright_2psi1(p, r ** mu).value
    return gamma_real(beta + 1.0) * r ** (2.0 * mu) * s


def theorem2_bound(beta: float, mu: float, r: float, tol: float = DEFAULT_TOL) -> float:
    """``Gamma(beta+1) r^(2mu) 2Psi1[r^mu | (3,1),(1,1); (beta+2,1)]``."""
    return _bound(3.0, beta, mu, r, tol)


def theorem3_bound(beta: float, mu: float, r: float, tol: float = DEFAULT_TOL) -> float:
    """``Gamma(beta+1) r^(2mu) 2Psi1[r^mu | (2,1),(1,1); (beta+2,1)]``."""
    return _bound(2.0, beta, mu, r, tol)
