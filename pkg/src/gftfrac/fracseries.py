"""Truncated fractional power series on the unit disk.

A series is ``F(z) = z + sum_{n=2}^{N} a_n z^(mu*n)`` with the powers taken on
the principal branch, ``z^s = exp(s * Log z)`` with ``arg z`` in ``(-pi, pi]``.
The leading term is always ``z`` itself (exponent one, not ``mu``).

Series produced by :func:`koebe_frac` and by the coefficient operators also
carry a :class:`TailModel`: a majorant for the omitted coefficients
``|a_n| <= bound(n)`` for ``n > N``.  Checkers use it to decide where on the
disk the truncation is faithful.  A series without a tail model is an exact
polynomial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, UsageError

DEFAULT_ORDER = 64
COEFF_SLACK = 1e-12

# grid-point budget per vectorized evaluation chunk (points x terms)
_CHUNK_ELEMS = 1 << 21


def pochhammer(x: float, k: int) -> float:
    """Rising factorial ``x (x+1) ... (x+k-1)``; equals 1 for ``k = 0``."""
    if isinstance(k, bool) or int(k) != k:
        raise UsageError(f"pochhammer order must be an integer, got {k!r}")
    k = int(k)
    if k < 0:
        raise UsageError(f"pochhammer order must be >= 0, got {k}")
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


def _log_poch(x: float, k: np.ndarray) -> np.ndarray:
    return gammaln(x + k) - gammaln(x)


@dataclass(frozen=True)
class TailModel:
    """Coefficient majorant ``scale * prod (num_i)_{n-1} / prod (den_j)_{n-1}``.

    ``cutoff`` (if set) means every coefficient with ``n > cutoff`` is zero.
    """

    num: tuple = ()
    den: tuple = ()
    scale: float = 1.0
    cutoff: int | None = None

    def __post_init__(self):
        num = list(self.num)
        den = list(self.den)
        # cancel identical parameters so equivalent models compare equal
        for x in list(num):
            if x in den:
                num.remove(x)
                den.remove(x)
        object.__setattr__(self, "num", tuple(sorted(float(x) for x in num)))
        object.__setattr__(self, "den", tuple(sorted(float(x) for x in den)))
        object.__setattr__(self, "scale", float(self.scale))
        if any(x <= 0 for x in self.num + self.den):
            raise DomainError("tail model parameters must be positive")

    def log_bound(self, n) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        k = n - 1.0
        out = np.full(n.shape, math.log(self.scale) if self.scale > 0 else -np.inf)
        for x in self.num:
            out = out + _log_poch(x, k)
        for y in self.den:
            out = out - _log_poch(y, k)
        if self.cutoff is not None:
            out = np.where(n > self.cutoff, -np.inf, out)
        return out

    def bound(self, n) -> np.ndarray:
        return np.exp(self.log_bound(n))

    def times(self, other: "TailModel") -> "TailModel":
        cut = [c for c in (self.cutoff, other.cutoff) if c is not None]
        return TailModel(
            self.num + other.num,
            self.den + other.den,
            self.scale * other.scale,
            min(cut) if cut else None,
        )

    def tail_sums(self, N: int, mu: float, radii, cap: int = 2_000_000):
        """Majorants of the omitted parts of ``F``, ``F'`` and ``F''``.

        Returns an array of shape ``(3, len(radii))``: for each radius ``r``
        the sums over ``n > N`` of ``bound(n) * r^(mu n - k) * D_k(n)`` with
        ``D_0 = 1``, ``D_1 = mu n``, ``D_2 = mu n (mu n - 1)``.  Once the term
        ratio is below one and the terms are negligible the remainder is
        closed with a geometric majorant.  ``inf`` marks a divergent or
        unsettled tail.
        """
        radii = np.atleast_1d(np.asarray(radii, dtype=float))
        out = np.zeros((3, radii.size))
        if self.scale == 0.0 or (self.cutoff is not None and self.cutoff <= N):
            return out
        chunk = 4096
        for i, r in enumerate(radii):
            if r <= 0.0:
                continue
            logr = math.log(r)
            total = np.zeros(3)
            start = N + 1
            while True:
                stop = start + chunk
                if self.cutoff is not None:
                    stop = min(stop, self.cutoff + 1)
                if stop <= start:
                    break
                n = np.arange(start, stop, dtype=float)
                e = mu * n
                t0 = np.exp(self.log_bound(n) + e * logr)
                t1 = t0 * e / r
                t2 = t1 * (e - 1.0) / r
                terms = np.vstack([t0, t1, t2])
                total += terms.sum(axis=1)
                if self.cutoff is not None and stop > self.cutoff:
                    break
                if n.size >= 2:
                    last = terms[:, -1]
                    with np.errstate(divide="ignore", invalid="ignore"):
                        ratio = np.where(terms[:, -2] > 0, last / terms[:, -2], 0.0)
                    if np.all(ratio < 1.0) and np.all(last <= 1e-17 * np.maximum(total, 1e-300)):
                        total += last * ratio / (1.0 - ratio)
                        break
                start = stop
                if start - N > cap or not np.all(np.isfinite(total)):
                    total[:] = np.inf
                    break
            out[:, i] = total
        return out

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den),
                "scale": self.scale, "cutoff": self.cutoff}

    @classmethod
    def from_json(cls, doc: dict) -> "TailModel":
        return cls(tuple(doc.get("num", ())), tuple(doc.get("den", ())),
                   doc.get("scale", 1.0), doc.get("cutoff"))


@dataclass(frozen=True, eq=False)
class FracPowerSeries:
    """``z + sum_{n=2}^{N} a_n z^(mu n)``; ``coeffs[0]`` is ``a_1 = 1``."""

    mu: float
    coeffs: np.ndarray
    tail: TailModel | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise DomainError("a series needs at least the leading coefficient")
        if c[0] != 1:
            raise DomainError(f"leading coefficient must be exactly 1, got {c[0]}")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        if not (self.mu >= 1.0):
            raise DomainError(f"mu must be >= 1, got {self.mu}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "mu", float(self.mu))

    @property
    def N(self) -> int:
        return int(self.coeffs.size)

    def __eq__(self, other):
        if not isinstance(other, FracPowerSeries):
            return NotImplemented
        return (self.mu == other.mu and self.N == other.N
                and bool(np.array_equal(self.coeffs, other.coeffs))
                and self.tail == other.tail)

    __hash__ = None

    def with_coeffs(self, coeffs, tail=None) -> "FracPowerSeries":
        return FracPowerSeries(self.mu, coeffs, tail)

    def tail_sums(self, radii) -> np.ndarray:
        radii = np.atleast_1d(np.asarray(radii, dtype=float))
        if self.tail is None:
            return np.zeros((3, radii.size))
        return self.tail.tail_sums(self.N, self.mu, radii)

    # -- interchange -------------------------------------------------------
    def to_json(self) -> dict:
        doc = {"mu": self.mu, "N": self.N,
               "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}
        if self.tail is not None:
            doc["tail"] = self.tail.to_json()
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "FracPowerSeries":
        try:
            mu = doc["mu"]
            coeffs = [complex(re, im) for re, im in doc["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed series document: {exc}") from exc
        if "N" in doc and int(doc["N"]) != len(coeffs):
            raise UsageError(f"N={doc['N']} disagrees with {len(coeffs)} coefficients")
        tail = TailModel.from_json(doc["tail"]) if doc.get("tail") else None
        return cls(mu, coeffs, tail)

    @classmethod
    def loads(cls, text: str) -> "FracPowerSeries":
        return cls.from_json(json.loads(text))


def identity_series(mu: float = 1.0, N: int = 1) -> FracPowerSeries:
    """The series ``z`` (all higher coefficients zero)."""
    c = np.zeros(N, dtype=complex)
    c[0] = 1.0
    return FracPowerSeries(mu, c)


def series(mu: float, higher: Sequence[complex]) -> FracPowerSeries:
    """Polynomial series with ``a_2, a_3, ...`` given by ``higher``."""
    return FracPowerSeries(mu, [1.0, *higher])


def generator_coeffs(alpha: float, N: int) -> np.ndarray:
    """``(alpha)_{n-1} / (n-1)!`` for ``n = 1..N`` by the term recurrence."""
    out = np.empty(N)
    out[0] = 1.0
    for n in range(2, N + 1):
        out[n - 1] = out[n - 2] * (alpha + n - 2) / (n - 1)
    return out


def koebe_frac(alpha: float, mu: float, N: int = DEFAULT_ORDER) -> FracPowerSeries:
    """Normalized generator ``z + sum (alpha)_{n-1}/(n-1)! z^(mu n)``."""
    if not alpha >= 1.0:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    if not mu >= 1.0:
        raise DomainError(f"mu must be >= 1, got {mu}")
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    N = int(N)
    return FracPowerSeries(mu, generator_coeffs(alpha, N), TailModel((alpha,), (1.0,)))


# -- evaluation ------------------------------------------------------------

def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _check_disk(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1.0):
        bad = z[np.abs(z) >= 1.0].flat[0]
        raise DomainError(f"|z| must be < 1, got z={bad}")


def evaluate_parts(F: FracPowerSeries, z, orders: Iterable[int] = (0, 1, 2)):
    """Values and absolute term sums of ``F``, ``F'``, ``F''`` at points ``z``.

    Returns ``{k: (value, abs_sum)}`` for each requested derivative order.
    The absolute sums measure the cancellation scale of each value.
    """
    orders = tuple(orders)
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    _check_disk(z)
    zero = z == 0
    if np.any(zero) and any(k > 0 for k in orders) and not _is_integer(F.mu):
        raise DomainError("derivatives at z = 0 need an integer mu")

    mu = F.mu
    a = F.coeffs[1:]
    e = mu * np.arange(2, F.N + 1, dtype=float)
    absa = np.abs(a)
    res = {k: [np.empty(z.size, complex), np.empty(z.size)] for k in orders}

    nz = np.flatnonzero(~zero)
    step = max(1, _CHUNK_ELEMS // max(1, a.size))
    for s in range(0, nz.size, step):
        idx = nz[s:s + step]
        zz = z[idx]
        logz = np.log(zz)
        if a.size:
            P = np.exp(np.outer(logz, e))
            absP = np.exp(np.outer(logz.real, e))
        for k in orders:
            if a.size:
                w = np.ones_like(e) if k == 0 else (e if k == 1 else e * (e - 1.0))
                tv = P @ (a * w)
                ta = absP @ (absa * np.abs(w))
                if k:
                    tv = tv / zz**k
                    ta = ta / np.abs(zz) ** k
            else:
                tv = np.zeros(zz.size, complex)
                ta = np.zeros(zz.size)
            lead = zz if k == 0 else (np.ones_like(zz) if k == 1 else np.zeros_like(zz))
            res[k][0][idx] = lead + tv
            res[k][1][idx] = np.abs(lead) + ta

    if np.any(zero):
        iz = np.flatnonzero(zero)
        for k in orders:
            val = 0.0 if k == 0 else (1.0 if k == 1 else 0.0)
            if k == 2:
                # only terms with mu n == 2 survive at the origin
                hit = np.isclose(e, 2.0, rtol=0, atol=1e-15)
                val = complex(np.sum(a[hit] * 2.0))
            res[k][0][iz] = val
            res[k][1][iz] = abs(val)
    return {k: (v.reshape(shape), s.reshape(shape)) for k, (v, s) in res.items()}


def _scalar_or_array(x, z):
    return complex(x) if np.ndim(z) == 0 else x


def evaluate(F: FracPowerSeries, z):
    """``F(z)`` on the principal branch; ``F(0) = 0``."""
    return _scalar_or_array(evaluate_parts(F, z, (0,))[0][0], z)


def evaluate_d1(F: FracPowerSeries, z):
    """Termwise first derivative ``1 + sum a_n mu n z^(mu n - 1)``."""
    return _scalar_or_array(evaluate_parts(F, z, (1,))[1][0], z)


def evaluate_d2(F: FracPowerSeries, z):
    """Termwise second derivative ``sum a_n mu n (mu n - 1) z^(mu n - 2)``."""
    return _scalar_or_array(evaluate_parts(F, z, (2,))[2][0], z)


# -- coefficient algebra ---------------------------------------------------

def _check_mu(F: FracPowerSeries, G: FracPowerSeries) -> None:
    if F.mu != G.mu:
        raise UsageError(f"mu mismatch: {F.mu} vs {G.mu}")


def _as_tail(F: FracPowerSeries, beyond: int) -> TailModel:
    """Tail model of ``F`` valid for indices ``n > beyond``."""
    if beyond >= F.N:
        return F.tail if F.tail is not None else TailModel(scale=0.0)
    known = np.abs(F.coeffs[beyond:])
    flat = TailModel(scale=float(known.max()) if known.size else 0.0,
                     cutoff=None if F.tail is not None else F.N)
    if F.tail is None:
        return flat
    # past N the own majorant applies; cover both with the larger envelope
    n = np.arange(beyond + 1, F.N + 1)
    ratio = float(np.max(known / np.maximum(F.tail.bound(n), 1e-300))) if n.size else 1.0
    return TailModel(F.tail.num, F.tail.den, F.tail.scale * max(1.0, ratio), F.tail.cutoff)


def hadamard(F: FracPowerSeries, G: FracPowerSeries) -> FracPowerSeries:
    """Coefficient-wise (convolution) product, truncated at ``min(N_F, N_G)``."""
    _check_mu(F, G)
    N = min(F.N, G.N)
    c = F.coeffs[:N] * G.coeffs[:N]
    c[0] = 1.0
    if F.tail is None and F.N <= N or G.tail is None and G.N <= N:
        tail = None
    else:
        tail = _as_tail(F, N).times(_as_tail(G, N))
        if tail.scale == 0.0:
            tail = None
    return FracPowerSeries(F.mu, c, tail)


def class_bound(alpha: float, N: int) -> np.ndarray:
    return generator_coeffs(alpha, N)


def _within(values: np.ndarray, bound: np.ndarray) -> np.ndarray:
    return values <= bound + COEFF_SLACK * np.maximum(1.0, bound)


def in_class_A_mu(F: FracPowerSeries, alpha: float) -> bool:
    """``|a_n| <= (alpha)_{n-1}/(n-1)!`` for every stored ``n >= 2``."""
    if not alpha >= 1.0:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    b = class_bound(alpha, F.N)[1:]
    return bool(np.all(_within(np.abs(F.coeffs[1:]), b)))


def in_class_X_mu(F: FracPowerSeries, alpha: float) -> bool:
    """Class A_mu test plus real, non-positive ``a_n`` for ``n >= 2``."""
    if not in_class_A_mu(F, alpha):
        return False
    a = F.coeffs[1:]
    scale = np.maximum(1.0, np.abs(a))
    return bool(np.all(np.abs(a.imag) <= COEFF_SLACK * scale)
                and np.all(a.real <= COEFF_SLACK))


# -- sampling grid ---------------------------------------------------------

DEFAULT_RADII = tuple([round(0.05 * k, 10) for k in range(1, 20)] + [0.99])
DEFAULT_ANGLES = 128


@dataclass(frozen=True)
class DiskGrid:
    """Polar sample set ``r exp(2 pi i k / angles)``; the origin is never sampled."""

    radii: tuple = DEFAULT_RADII
    angles_per_radius: int = DEFAULT_ANGLES
    r_max: float | None = field(default=None)

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        r_max = radii[-1] if self.r_max is None and radii else self.r_max
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "r_max", None if r_max is None else float(r_max))
        if not radii:
            raise DomainError("grid needs at least one radius")
        if int(self.angles_per_radius) != self.angles_per_radius or self.angles_per_radius < 8:
            raise DomainError("angles_per_radius must be an integer >= 8")
        if not self.r_max < 1.0:
            raise DomainError(f"r_max must be < 1, got {self.r_max}")
        if radii[0] <= 0.0 or any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("radii must be positive and strictly increasing")
        if radii[-1] > self.r_max:
            raise DomainError("radii exceed r_max")

    @classmethod
    def with_rmax(cls, r_max: float, step: float = 0.05,
                  angles: int = DEFAULT_ANGLES) -> "DiskGrid":
        """Radii ``step, 2 step, ...`` below ``r_max`` followed by ``r_max``."""
        k = int(math.floor(r_max / step + 1e-9))
        radii = [round(step * j, 10) for j in range(1, k + 1) if round(step * j, 10) < r_max]
        return cls(tuple(radii) + (float(r_max),), angles, r_max)

    @property
    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angles_per_radius) / self.angles_per_radius

    def points(self) -> np.ndarray:
        """Sample points in lexicographic ``(r, theta)`` order."""
        return (np.asarray(self.radii)[:, None] * np.exp(1j * self.thetas)[None, :]).ravel()

    def polar_index(self, flat: int) -> tuple:
        i, k = divmod(int(flat), self.angles_per_radius)
        return self.radii[i], float(self.thetas[k])

    def to_json(self) -> dict:
        return {"radii": list(self.radii), "angles": self.angles_per_radius, "r_max": self.r_max}
