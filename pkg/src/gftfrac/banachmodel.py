"""Finite-dimensional slice model of holomorphic functions on a Banach ball.

A model is ``F(w) = A(w) + sum_{n>=2} P_n(w)`` on ``C^d`` with a linear
functional ``A(w) = sum c_i w_i`` and homogeneous polynomials ``P_n``.  Along
a unit direction ``a`` with ``A(a) != 0`` the slice is the one-variable series
``F_a(z) = z + sum P_n(a)/A(a) z^(mu n)``; every class statement about ``F``
is tested through its slices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .diskcheck import (
    FAIL,
    PASS,
    PREMISE,
    RESOLVE_TOL,
    TOL,
    CheckReport,
    _q_sample,
    is_ucv,
)
from .errors import DegenerateSampleError, DomainError, KernelDirectionError, UsageError
from .fracseries import DiskGrid, FracPowerSeries, evaluate, evaluate_parts
from .operators import noor_frac, psi_bound_coefficient, psi_weight

MAX_DIM = 8
KERNEL_EPS = 1e-9
NORMS = ("euclidean", "max")
KINDS = ("diagonal", "a-power")


def _vec(x) -> np.ndarray:
    return np.asarray(x, dtype=complex).ravel()


def vector_norm(w, norm: str = "euclidean") -> float:
    w = _vec(w)
    if norm == "euclidean":
        return float(np.linalg.norm(w))
    if norm == "max":
        return float(np.max(np.abs(w)))
    raise UsageError(f"unknown norm {norm!r}")


@dataclass(frozen=True, eq=False)
class BanachModel:
    """``A`` as a coefficient vector and ``P_n`` (``n = 2, 3, ...``) as evaluators.

    Built-in families keep ``kind`` and ``p`` so the model serializes;
    custom evaluators are checked for homogeneity on construction.
    """

    d: int
    A: np.ndarray
    polys: tuple
    mu: float = 1.0
    norm: str = "euclidean"
    kind: str | None = None
    p: tuple = ()
    homogeneous: bool = False

    def __post_init__(self):
        c = _vec(self.A)
        c.flags.writeable = False
        object.__setattr__(self, "A", c)
        object.__setattr__(self, "polys", tuple(self.polys))
        if not 1 <= self.d <= MAX_DIM:
            raise DomainError(f"dimension must be in 1..{MAX_DIM}, got {self.d}")
        if c.size != self.d:
            raise UsageError(f"A has {c.size} entries for dimension {self.d}")
        if not np.any(c != 0):
            raise DomainError("the linear functional A must be nonzero")
        if self.norm not in NORMS:
            raise UsageError(f"norm must be one of {NORMS}")
        if not self.mu >= 1.0:
            raise DomainError(f"mu must be >= 1, got {self.mu}")
        if self.kind is None:
            check_homogeneity(self)

    # -- constructors -------------------------------------------------------
    @classmethod
    def diagonal(cls, A, p: Sequence[complex], mu: float = 1.0, norm: str = "euclidean",
                 homogeneous: bool = False) -> "BanachModel":
        """``P_n(w) = p_n w_1^n`` with ``p[0]`` the ``n = 2`` coefficient."""
        p = tuple(complex(x) for x in p)
        polys = tuple(_diag_poly(pn, n) for n, pn in enumerate(p, start=2))
        A = _vec(A)
        return cls(A.size, A, polys, mu, norm, "diagonal", p, homogeneous)

    @classmethod
    def a_power(cls, A, p: Sequence[complex], mu: float = 1.0, norm: str = "euclidean",
                homogeneous: bool = False) -> "BanachModel":
        """``P_n(w) = p_n A(w)^n``; vanishes wherever ``A`` does."""
        p = tuple(complex(x) for x in p)
        A = _vec(A)
        polys = tuple(_apower_poly(A, pn, n) for n, pn in enumerate(p, start=2))
        return cls(A.size, A, polys, mu, norm, "a-power", p, homogeneous)

    @classmethod
    def custom(cls, A, polys: Sequence[Callable], mu: float = 1.0, norm: str = "euclidean",
               homogeneous: bool = False) -> "BanachModel":
        A = _vec(A)
        return cls(A.size, A, tuple(polys), mu, norm, None, (), homogeneous)

    def scaled(self, eps: complex) -> "BanachModel":
        """Same ``A`` with every ``P_n`` multiplied by ``eps``."""
        if self.kind == "diagonal":
            return BanachModel.diagonal(self.A, [eps * x for x in self.p], self.mu,
                                        self.norm, self.homogeneous)
        if self.kind == "a-power":
            return BanachModel.a_power(self.A, [eps * x for x in self.p], self.mu,
                                       self.norm, self.homogeneous)
        polys = tuple((lambda P: (lambda w: eps * P(w)))(P) for P in self.polys)
        return BanachModel.custom(self.A, polys, self.mu, self.norm, self.homogeneous)

    def rescaled(self, lam: complex) -> "BanachModel":
        """``A`` and every ``P_n`` multiplied by the same scalar ``lam``."""
        if self.kind == "diagonal":
            return BanachModel.diagonal(lam * self.A, [lam * x for x in self.p], self.mu,
                                        self.norm, self.homogeneous)
        if self.kind == "a-power":
            # P_n = p_n A^n must become lam p_n A^n with A -> lam A
            return BanachModel.a_power(lam * self.A, [x * lam ** (1 - n)
                                                      for n, x in enumerate(self.p, start=2)],
                                       self.mu, self.norm, self.homogeneous)
        polys = tuple((lambda P: (lambda w: lam * P(w)))(P) for P in self.polys)
        return BanachModel.custom(lam * self.A, polys, self.mu, self.norm, self.homogeneous)

    # -- evaluation ---------------------------------------------------------
    @property
    def top_degree(self) -> int:
        return len(self.polys) + 1

    def A_of(self, w) -> complex:
        return complex(np.dot(self.A, _vec(w)))

    def poly_values(self, w) -> np.ndarray:
        """``P_n(w)`` for ``n = 2..top_degree``."""
        w = _vec(w)
        return np.array([complex(P(w)) for P in self.polys], dtype=complex)

    def value(self, w) -> complex:
        return self.A_of(w) + complex(np.sum(self.poly_values(w)))

    def norm_of(self, w) -> float:
        return vector_norm(w, self.norm)

    # -- interchange --------------------------------------------------------
    def to_json(self) -> dict:
        if self.kind is None:
            raise UsageError("custom-evaluator models have no JSON form")
        return {
            "d": self.d,
            "A": [[float(x.real), float(x.imag)] for x in self.A],
            "mu": self.mu,
            "norm": self.norm,
            "polys": {"kind": self.kind, "p": [_num_out(x) for x in self.p]},
            "homogeneous": self.homogeneous,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "BanachModel":
        try:
            A = [complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in doc["A"]]
            polys = doc["polys"]
            kind = polys["kind"]
            p = [complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in polys["p"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed model document: {exc}") from exc
        if "d" in doc and int(doc["d"]) != len(A):
            raise UsageError(f"d={doc['d']} disagrees with {len(A)} functional coefficients")
        args = (A, p, doc.get("mu", 1.0), doc.get("norm", "euclidean"),
                bool(doc.get("homogeneous", False)))
        if kind == "diagonal":
            return cls.diagonal(*args)
        if kind == "a-power":
            return cls.a_power(*args)
        raise UsageError(f"unknown polynomial family {kind!r}; expected one of {KINDS}")


def _num_out(x: complex):
    return float(x.real) if x.imag == 0 else [float(x.real), float(x.imag)]


def _diag_poly(pn: complex, n: int):
    return lambda w: pn * w[0] ** n


def _apower_poly(A: np.ndarray, pn: complex, n: int):
    return lambda w: pn * complex(np.dot(A, w)) ** n


def check_homogeneity(model: BanachModel, samples: int = 8, seed: int = 0,
                      rtol: float = 1e-10) -> None:
    """Raise unless ``P_n(lam w) = lam^n P_n(w)`` on random samples."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        w = rng.normal(size=model.d) + 1j * rng.normal(size=model.d)
        lam = complex(rng.normal(), rng.normal())
        for n, P in enumerate(model.polys, start=2):
            lhs = complex(P(lam * w))
            rhs = lam ** n * complex(P(w))
            if abs(lhs - rhs) > rtol * max(1.0, abs(rhs)):
                raise DomainError(f"P_{n} is not homogeneous of degree {n}")


# -- directions ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SliceFamily:
    model: BanachModel
    directions: tuple = field(default=())

    def __post_init__(self):
        dirs = tuple(_vec(a) for a in self.directions)
        for a in dirs:
            if a.size != self.model.d:
                raise UsageError("direction dimension does not match the model")
            if abs(self.model.norm_of(a) - 1.0) > 1e-12:
                raise DomainError("directions must be unit vectors")
            if abs(self.model.A_of(a)) <= KERNEL_EPS:
                raise KernelDirectionError("slice directions must avoid the kernel of A")
        object.__setattr__(self, "directions", dirs)

    def __len__(self):
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)


def _normalize(w, norm: str) -> np.ndarray:
    return w / vector_norm(w, norm)


def sample_directions(model: BanachModel, count: int = 64, seed: int = 0,
                      include_axes: bool = True) -> SliceFamily:
    """Coordinate axes off the kernel, then seeded uniform sphere samples."""
    dirs = []
    if include_axes:
        for i in range(model.d):
            e = np.zeros(model.d, complex)
            e[i] = 1.0
            if abs(model.A_of(e)) > KERNEL_EPS:
                dirs.append(e)
    rng = np.random.default_rng(seed)
    while len(dirs) < count:
        w = rng.normal(size=model.d) + 1j * rng.normal(size=model.d)
        a = _normalize(w, model.norm)
        if abs(model.A_of(a)) > KERNEL_EPS:
            dirs.append(a)
    return SliceFamily(model, tuple(dirs[:count]))


def kernel_directions(model: BanachModel, count: int = 16, seed: int = 0) -> list:
    """Unit vectors with ``A(a) = 0`` up to rounding (needs ``d >= 2``)."""
    if model.d < 2:
        return []
    c = model.A
    cc = np.vdot(c, c).real
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        v = rng.normal(size=model.d) + 1j * rng.normal(size=model.d)
        w = v - (np.dot(c, v) / cc) * np.conj(c)
        out.append(_normalize(w, model.norm))
    return out


def slice_series(model: BanachModel, a, homogeneous: bool | None = None) -> FracPowerSeries:
    """``z + sum P_n(a)/A(a) z^(mu n)``; ``homogeneous`` switches to ``z^n``."""
    a = _vec(a)
    if abs(model.norm_of(a) - 1.0) > 1e-12:
        raise DomainError("slice direction must be a unit vector")
    Aa = model.A_of(a)
    if abs(Aa) <= KERNEL_EPS:
        raise KernelDirectionError(f"A(a) = {Aa} vanishes; direction lies in the kernel")
    hom = model.homogeneous if homogeneous is None else homogeneous
    coeffs = np.concatenate([[1.0], model.poly_values(a) / Aa])
    return FracPowerSeries(1.0 if hom else model.mu, coeffs)


# the public name used throughout
slice = slice_series  # noqa: A001


def _direction_report(check: str, reports: list, dirs: Sequence[np.ndarray],
                      params: dict) -> CheckReport:
    k = int(np.argmin([r.worst_margin for r in reports]))
    worst = reports[k]
    params = dict(params)
    params.update({
        "directions": len(reports),
        "failed_directions": sum(r.verdict != PASS for r in reports),
        "witness_direction_index": k,
        "witness_direction": [complex(x) for x in dirs[k]],
        "witness_report": worst.to_json(),
    })
    verdict = PASS if all(r.verdict == PASS for r in reports) else FAIL
    return CheckReport(check, verdict, worst.worst_margin, worst.witness, params,
                       max(r.tail_note for r in reports))


def ucv_membership(model: BanachModel, directions: SliceFamily | None = None,
                   grid: DiskGrid | None = None, tol: float = TOL) -> CheckReport:
    """Every slice must pass :func:`is_ucv`; the worst direction is the witness."""
    directions = directions or sample_directions(model)
    grid = grid or DiskGrid()
    reports = [is_ucv(slice_series(model, a), grid, tol) for a in directions]
    return _direction_report("ucv_membership", reports, directions.directions,
                             {"d": model.d, "mu": model.mu})


def coefficient_margins(model: BanachModel, a) -> np.ndarray:
    """``|A(a)|/n - |P_n(a)|`` for ``n = 2..top_degree``."""
    n = np.arange(2, model.top_degree + 1)
    return abs(model.A_of(a)) / n - np.abs(model.poly_values(a))


def theorem4_check(model: BanachModel, directions: SliceFamily | None = None,
                   grid: DiskGrid | None = None, tol: float = TOL,
                   membership: CheckReport | None = None) -> CheckReport:
    """``|P_n(a)| <= |A(a)|/n`` over directions and degrees.

    A coefficient failure is reported as ``fail`` whatever the membership
    outcome; a coefficient pass without membership is ``premise-not-met``.
    """
    directions = directions or sample_directions(model)
    if membership is None:
        membership = ucv_membership(model, directions, grid, tol)
    worst, where = np.inf, (0, 2)
    for i, a in enumerate(directions):
        m = coefficient_margins(model, a)
        if m.size and m.min() < worst:
            worst, where = float(m.min()), (i, int(np.argmin(m)) + 2)
    ok = worst >= -tol
    if not ok:
        verdict = FAIL
    elif membership.verdict != PASS:
        verdict = PREMISE
    else:
        verdict = PASS
    params = {"d": model.d, "ucv_premise": membership.verdict,
              "witness_direction_index": where[0], "witness_n": where[1],
              "consistent": not (membership.verdict == PASS and not ok)}
    return CheckReport("theorem4", verdict, worst, None, params, 0.0)


def kernel_vanishing_check(model: BanachModel, kernel_dirs: Sequence, tol: float = 1e-12,
                           nearby_delta: float = 1e-3) -> CheckReport:
    """``P_n(a) = 0`` (within ``tol``) on unit directions with ``A(a) = 0``."""
    worst, wi, wn = 0.0, None, None
    nearby = []
    cc = np.conj(model.A) / np.linalg.norm(model.A)
    for i, a in enumerate(kernel_dirs):
        a = _vec(a)
        if abs(model.A_of(a)) > tol:
            raise UsageError(f"direction {i} is not in the kernel: A(a) = {model.A_of(a)}")
        vals = np.abs(model.poly_values(a))
        if vals.size and -vals.max() < worst:
            worst, wi, wn = -float(vals.max()), i, int(np.argmax(vals)) + 2
        b = _normalize(a + nearby_delta * cc, model.norm)
        nearby.append(float(coefficient_margins(model, b).min()) if vals.size else 0.0)
    params = {"d": model.d, "kernel_directions": len(kernel_dirs),
              "witness_direction_index": wi, "witness_n": wn,
              "nearby_theorem4_margin": min(nearby) if nearby else None,
              "nearby_delta": nearby_delta}
    return CheckReport("kernel_vanishing", PASS if worst >= -tol else FAIL, worst, None,
                       params, 0.0)


def random_w_samples(model: BanachModel, count: int = 100, r_max: float = 0.9,
                     seed: int = 0) -> list:
    """Seeded points with ``0 < ||w|| <= r_max`` off the kernel of ``A``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        v = rng.normal(size=model.d) + 1j * rng.normal(size=model.d)
        a = _normalize(v, model.norm)
        if abs(model.A_of(a)) <= KERNEL_EPS:
            continue
        out.append(a * rng.uniform(0.05, r_max))
    return out


def derivative_ratio(model: BanachModel, w) -> complex:
    """``F''(w)(w,w) / F'(w)(w)`` through the slice along ``w/||w||`` at ``z = ||w||``."""
    w = _vec(w)
    z = model.norm_of(w)
    if z == 0:
        raise DomainError("w must be nonzero")
    if z >= 1:
        raise DomainError("w must lie in the open unit ball")
    Fa = slice_series(model, w / z)
    parts = evaluate_parts(Fa, np.array([z + 0j]), (1, 2))
    d1, d1_abs = parts[1][0][0], parts[1][1][0]
    if abs(d1) <= 64 * np.finfo(float).eps * d1_abs:
        raise DegenerateSampleError(f"F'(w)(w) vanishes at w={w}", point=complex(z))
    return complex(z * parts[2][0][0] / d1)


def sufficient_condition_check(model: BanachModel, w_samples: Sequence,
                               tol: float = TOL) -> CheckReport:
    """``Re(1 + R) >= |R|`` with ``R = F''(w)(w,w)/F'(w)(w)`` at each sample."""
    margins = []
    for w in w_samples:
        R = derivative_ratio(model, w)
        margins.append(1.0 + R.real - abs(R))
    if not margins:
        return CheckReport("sufficient_condition", PASS, float("inf"), None, {"samples": 0})
    k = int(np.argmin(margins))
    w = _vec(w_samples[k])
    params = {"d": model.d, "samples": len(margins), "witness_w": [complex(x) for x in w]}
    return CheckReport("sufficient_condition", PASS if margins[k] >= -tol else FAIL,
                       float(margins[k]), complex(model.norm_of(w)), params, 0.0)


# -- quasi-Hadamard products -----------------------------------------------------

def quasi_hadamard(p_families: Sequence[Sequence[float]],
                   phi_families: Sequence[Sequence[float]] = ()) -> np.ndarray:
    """Termwise product ``H_n = prod_j P_{n,j} * prod_i Phi_{n,i}`` for ``n >= 2``.

    Each family lists its values for ``n = 2, 3, ...``; the leading term of
    the product is ``A`` itself and is not part of the returned array.
    """
    fams = [np.asarray(f, dtype=float) for f in list(p_families) + list(phi_families)]
    if not fams:
        raise UsageError("need at least one family")
    lengths = {f.size for f in fams}
    if len(lengths) != 1:
        raise UsageError(f"families have different lengths: {sorted(lengths)}")
    return np.prod(np.vstack(fams), axis=0)


def quasi_premise_margin(family: Sequence[float], A_value: float) -> float:
    """``|A| - sum n |P_n|`` for one family."""
    f = np.abs(np.asarray(family, dtype=float))
    n = np.arange(2, f.size + 2)
    return float(abs(A_value) - np.sum(n * f))


def quasi_class_check(H: Sequence[float], l: int, s: int, A_values: Sequence[float],
                      families: Sequence[Sequence[float]] | None = None,
                      tol: float = 1e-12) -> CheckReport:
    """``sum n^(l+s) |H_n| <= prod |A|``; margin is the right side minus the left.

    ``families`` (P's then Phi's, aligned with ``A_values``) are checked for
    ``sum n |P_n| <= |A|`` first.  With a single family the product itself is
    that family.
    """
    H = np.asarray(H, dtype=float)
    k = l + s
    if l < 0 or s < 0 or k < 1:
        raise UsageError("need l, s >= 0 with l + s >= 1")
    if len(A_values) != k:
        raise UsageError(f"expected {k} A-values, got {len(A_values)}")
    if families is None and k == 1:
        families = [H]
    premise = None
    if families is not None:
        if len(families) != k:
            raise UsageError(f"expected {k} families, got {len(families)}")
        premise = [quasi_premise_margin(f, A) for f, A in zip(families, A_values)]
    n = np.arange(2, H.size + 2, dtype=float)
    lhs = float(np.sum(n ** k * np.abs(H)))
    rhs = float(np.prod(np.abs(np.asarray(A_values, dtype=float))))
    margin = rhs - lhs
    params = {"l": l, "s": s, "lhs": lhs, "rhs": rhs, "premise_margins": premise}
    if premise is not None and min(premise) < -tol:
        verdict = PREMISE
    else:
        verdict = PASS if margin >= -tol else FAIL
    return CheckReport("quasi_class", verdict, margin, None, params, 0.0)


# -- pre-Schwarzian norm ---------------------------------------------------------

@dataclass
class NormEstimate:
    value: float
    witness: complex
    resolved_points: int
    max_resolved_radius: float | None


def _t_values(F: FracPowerSeries, z: np.ndarray, resolve_tol: float):
    s = _q_sample(F, z)
    r = np.abs(z)
    with np.errstate(invalid="ignore"):
        vals = (1.0 - r ** 2) * np.abs(s.inner)
        err = (1.0 - r ** 2) * s.err / r
    ok = err <= resolve_tol
    return np.where(ok, vals, -np.inf), ok


def pre_schwarzian_estimate(F: FracPowerSeries, grid: DiskGrid | None = None,
                            resolve_tol: float = RESOLVE_TOL,
                            refine_samples: int = 64) -> NormEstimate:
    """Grid maximum of ``(1-|z|^2)|F''/F'|`` plus one radial refinement.

    The result is a lower estimate of the supremum over the disk.
    """
    grid = grid or DiskGrid()
    z = grid.points()
    vals, ok = _t_values(F, z, resolve_tol)
    if not np.any(ok):
        raise DomainError("no grid point is resolved at this truncation")
    i = int(np.argmax(vals))
    best, witness = float(vals[i]), complex(z[i])

    radii = grid.radii
    ri = int(np.argmin(np.abs(np.asarray(radii) - abs(z[i]))))
    lo = radii[ri - 1] if ri > 0 else radii[ri] / 2.0
    hi = radii[ri + 1] if ri + 1 < len(radii) else grid.r_max
    theta = np.angle(z[i])
    rr = np.linspace(lo, hi, refine_samples)
    zz = rr * np.exp(1j * theta)
    rv, rok = _t_values(F, zz, resolve_tol)
    if np.any(rok):
        j = int(np.argmax(rv))
        if rv[j] > best:
            best, witness = float(rv[j]), complex(zz[j])

    rad = np.abs(z)
    full = [r for r in radii if np.all(ok[np.isclose(rad, r, rtol=0, atol=1e-15)])]
    return NormEstimate(best, witness, int(ok.sum()), max(full) if full else None)


def pre_schwarzian_norm(F: FracPowerSeries, grid: DiskGrid | None = None,
                        resolve_tol: float = RESOLVE_TOL) -> float:
    return pre_schwarzian_estimate(F, grid, resolve_tol).value


# -- operator theorems -------------------------------------------------------------

def _axis_directions(model: BanachModel) -> SliceFamily:
    return sample_directions(model, count=sum(
        abs(model.A_of(np.eye(model.d)[i])) > KERNEL_EPS for i in range(model.d)))


def theorem_boundedness_check(model: BanachModel, directions: SliceFamily | None,
                              beta: float, grid: DiskGrid | None = None,
                              tol: float = TOL) -> CheckReport:
    """``|z (I F_a)''/(I F_a)'| <= 1 + ||F_a||_T / (1-|z|^2)`` on the grid.

    The alternative form with ``|I F_a(z)|`` on the left is also
    evaluated and recorded in ``params``.
    """
    directions = directions or sample_directions(model)
    grid = grid or DiskGrid()
    z = grid.points()
    r2 = np.abs(z) ** 2
    worst, witness, widx = np.inf, None, None
    literal_worst = np.inf
    for k, a in enumerate(directions):
        Fa = slice_series(model, a)
        tnorm = pre_schwarzian_norm(Fa, grid)
        G = noor_frac(Fa, beta)
        s = _q_sample(G, z)
        rhs = 1.0 + tnorm / (1.0 - r2)
        m = rhs - np.abs(s.ratio)
        i = int(np.argmin(m))
        if m[i] < worst:
            worst, witness, widx = float(m[i]), complex(z[i]), k
        lit = rhs - np.abs(evaluate(G, z))
        literal_worst = min(literal_worst, float(lit.min()))
    params = {"beta": beta, "directions": len(directions), "witness_direction_index": widx,
              "literal_form_margin": literal_worst,
              "literal_form": PASS if literal_worst >= -tol else FAIL,
              "grid": grid.to_json()}
    return CheckReport("boundedness", PASS if worst >= -tol else FAIL, worst, witness,
                       params, 0.0)


def compactness_decay_check(models: Sequence[BanachModel], beta: float,
                            grid: DiskGrid | None = None,
                            directions: Sequence | None = None,
                            jitter: float = 1e-6, ratio: float = 1e-3) -> CheckReport:
    """T-norms of the transformed slices along a model sequence must decay.

    ``t_m`` is the largest pre-Schwarzian norm of ``I F_a`` over the
    directions.  Passes when the sequence is non-increasing within ``jitter``
    and ``t_last < ratio * t_first`` (or ``t_first = 0``).
    """
    if not models:
        raise UsageError("need at least one model")
    grid = grid or DiskGrid()
    if directions is None:
        directions = _axis_directions(models[0]).directions
    t = []
    for M in models:
        t.append(max(pre_schwarzian_norm(noor_frac(slice_series(M, a), beta), grid)
                     for a in directions))
    monotone = all(t[i + 1] <= t[i] + jitter for i in range(len(t) - 1))
    decayed = t[0] == 0.0 or t[-1] < ratio * t[0]
    params = {"beta": beta, "t": t, "monotone": monotone, "decayed": decayed,
              "ratio": ratio, "jitter": jitter}
    return CheckReport("compactness_decay", PASS if monotone and decayed else FAIL,
                       ratio * t[0] - t[-1], None, params, 0.0)


def theorem8_check(model: BanachModel, a, alpha: float, beta: float,
                   grid: DiskGrid | None = None, tol: float = TOL) -> CheckReport:
    """``| |I F_a(z)| - |z| | <= alpha |A(a)| / (2 beta) |z|^(2 mu)`` on the grid.

    Two transforms are evaluated: the psi-weighted one,
    ``z + sum psi(n) P_n(a) z^(mu n)``, which decides the verdict, and the
    plain integral operator applied to the slice, reported in ``params``.
    """
    grid = grid or DiskGrid()
    a = _vec(a)
    Aa = abs(model.A_of(a))
    params = {"alpha": alpha, "beta": beta, "mu": model.mu, "A_a": Aa}
    if not (alpha >= 1.0 and beta >= 1.0):
        params["reason"] = "alpha >= 1 and beta >= 1 required"
        return CheckReport("theorem8", PREMISE, float("nan"), None, params, 0.0)
    Fa = slice_series(model, a)
    P = model.poly_values(a)
    n = np.arange(2, P.size + 2)
    premise = bool(np.all(np.abs(P) <= Aa / n + tol))
    params["premise"] = premise
    if not premise:
        params["reason"] = "|P_n(a)| <= |A(a)|/n violated"
        return CheckReport("theorem8", PREMISE, float("nan"), None, params, 0.0)

    psi = np.array([psi_weight(int(k), alpha, beta, Aa) for k in n])
    mu = Fa.mu
    psi_series = FracPowerSeries(mu, np.concatenate([[1.0], psi * P]))
    noor_series = noor_frac(Fa, beta)
    coef = psi_bound_coefficient(alpha, beta, Aa)
    z = grid.points()
    rhs = coef * np.abs(z) ** (2.0 * mu)

    def margins(S):
        return rhs - np.abs(np.abs(evaluate(S, z)) - np.abs(z))

    m_psi = margins(psi_series)
    m_noor = margins(noor_series)
    i = int(np.argmin(m_psi))
    params.update({
        "bound_coefficient": coef,
        "psi2": float(psi[0]) if psi.size else None,
        "noor_form_margin": float(m_noor.min()),
        "noor_form": PASS if m_noor.min() >= -tol else FAIL,
        "grid": grid.to_json(),
    })
    return CheckReport("theorem8", PASS if m_psi[i] >= -tol else FAIL, float(m_psi[i]),
                       complex(z[i]), params, 0.0)


def random_admissible_family(rng: np.random.Generator, A_value: float, length: int,
                             fill: float | None = None) -> np.ndarray:
    """Nonnegative values for ``n = 2..length+1`` with ``sum n P_n = fill * A``.

    ``fill`` defaults to a uniform draw in ``[0, 1)``.
    """
    x = rng.exponential(size=length) * rng.integers(0, 2, size=length)
    if not np.any(x):
        x[0] = 1.0
    n = np.arange(2, length + 2)
    fill = rng.uniform(0.0, 1.0) if fill is None else fill
    return x * (fill * abs(A_value) / np.sum(n * x))
