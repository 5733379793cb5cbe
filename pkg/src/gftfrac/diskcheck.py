"""Grid-based geometric class checks and coefficient lemmas.

Pointwise criteria are sampled on a :class:`DiskGrid`.  When a series carries
a tail model, the omitted terms perturb every tested quantity; that error is
propagated to first order and sample points where it exceeds ``resolve_tol``
are left out of the verdict (they are counted in ``params``).  For exact
polynomials every point is resolved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateSampleError, DomainError
from .fracseries import (
    DiskGrid,
    FracPowerSeries,
    evaluate_parts,
    koebe_frac,
    pochhammer,
)
from .operators import noor_frac
from .specialfn import theorem2_bound, theorem3_bound

PASS = "pass"
FAIL = "fail"
PREMISE = "premise-not-met"

TOL = 1e-9
RESOLVE_TOL = 1e-6
_EPS = np.finfo(float).eps


@dataclass
class CheckReport:
    check: str
    verdict: str
    worst_margin: float
    witness: complex | None = None
    params: dict = field(default_factory=dict)
    tail_note: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        w = None if self.witness is None else [float(self.witness.real), float(self.witness.imag)]
        return {
            "check": self.check,
            "verdict": self.verdict,
            "worst_margin": _num(self.worst_margin),
            "witness": w,
            "params": _jsonable(self.params),
            "tail_note": _num(self.tail_note),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _num(x):
    x = float(x)
    return x if np.isfinite(x) else (None if np.isnan(x) else ("inf" if x > 0 else "-inf"))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def series_params(F: FracPowerSeries) -> dict:
    return {"mu": F.mu, "N": F.N, "has_tail": F.tail is not None}


# -- sampled ratio machinery -------------------------------------------------

@dataclass
class _Sample:
    z: np.ndarray
    ratio: np.ndarray       # z * num / den
    err: np.ndarray         # first-order truncation error bound of ratio
    inner: np.ndarray       # num / den (without the z factor)


def _ratio_sample(F: FracPowerSeries, z: np.ndarray, num_order: int, den_order: int) -> _Sample:
    parts = evaluate_parts(F, z, (num_order, den_order))
    num, _ = parts[num_order]
    den, den_abs = parts[den_order]
    r = np.abs(z)
    radii, inv = np.unique(r, return_inverse=True)
    tails = F.tail_sums(radii)[:, inv]
    t_num, t_den = tails[num_order], tails[den_order]

    unresolvable = (t_den > 0) & (np.abs(den) <= t_den)
    degenerate = ~unresolvable & (np.abs(den) <= 64 * _EPS * den_abs)
    if np.any(degenerate):
        i = int(np.flatnonzero(degenerate)[0])
        raise DegenerateSampleError(
            f"denominator vanishes at sample z={z[i]:.6g}", point=complex(z[i]))
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = np.where(unresolvable, np.nan, num / den)
        ratio = z * inner
        err = np.where(unresolvable, np.inf,
                       (r * t_num + np.abs(ratio) * t_den) / (np.abs(den) - t_den))
    err = np.where((t_num == 0) & (t_den == 0), 0.0, err)
    return _Sample(z, ratio, err, inner)


def _reduce(check: str, margins: np.ndarray, err: np.ndarray, grid: DiskGrid,
            points: np.ndarray, tol: float, strict: bool, resolve_tol: float,
            params: dict) -> CheckReport:
    resolved = err <= resolve_tol
    if not np.any(resolved):
        raise DomainError(f"{check}: no grid point is resolved at this truncation")
    masked = np.where(resolved, margins, np.inf)
    i = int(np.argmin(masked))       # first minimum = lexicographic (r, theta)
    worst = float(masked[i])
    ok = worst >= tol if strict else worst >= -tol
    radii = np.abs(points)
    full = [r for r in grid.radii if np.all(resolved[np.isclose(radii, r, rtol=0, atol=1e-15)])]
    params = dict(params)
    params.update({
        "grid": grid.to_json(),
        "tol": tol,
        "strict": strict,
        "resolve_tol": resolve_tol,
        "resolved_points": int(resolved.sum()),
        "total_points": int(resolved.size),
        "max_resolved_radius": max(full) if full else None,
        "witness_polar": list(grid.polar_index(i)),
    })
    return CheckReport(check, PASS if ok else FAIL, worst, complex(points[i]), params,
                       float(np.max(err[resolved])))


def is_starlike(F: FracPowerSeries, grid: DiskGrid | None = None, tol: float = TOL,
                resolve_tol: float = RESOLVE_TOL) -> CheckReport:
    """Minimum of ``Re(z F'/F)`` over the grid; strict positivity required."""
    grid = grid or DiskGrid()
    z = grid.points()
    s = _ratio_sample(F, z, 1, 0)
    return _reduce("starlike", s.ratio.real, s.err, grid, z, tol, True, resolve_tol,
                   series_params(F))


def _q_sample(F: FracPowerSeries, z: np.ndarray) -> _Sample:
    return _ratio_sample(F, z, 2, 1)


def is_convex(F: FracPowerSeries, grid: DiskGrid | None = None, tol: float = TOL,
              resolve_tol: float = RESOLVE_TOL) -> CheckReport:
    """Minimum of ``Re(1 + z F''/F')``; strict positivity required."""
    grid = grid or DiskGrid()
    z = grid.points()
    s = _q_sample(F, z)
    return _reduce("convex", 1.0 + s.ratio.real, s.err, grid, z, tol, True, resolve_tol,
                   series_params(F))


def is_ucv(F: FracPowerSeries, grid: DiskGrid | None = None, tol: float = TOL,
           resolve_tol: float = RESOLVE_TOL) -> CheckReport:
    """Minimum of ``Re(1 + Q) - |Q|`` with ``Q = z F''/F'``."""
    grid = grid or DiskGrid()
    z = grid.points()
    s = _q_sample(F, z)
    margin = 1.0 + s.ratio.real - np.abs(s.ratio)
    return _reduce("ucv", margin, 2.0 * s.err, grid, z, tol, False, resolve_tol,
                   series_params(F))


def ucv_two_point(F: FracPowerSeries, grid: DiskGrid | None = None, zeta_samples: int = 32,
                  tol: float = TOL, resolve_tol: float = RESOLVE_TOL) -> CheckReport:
    """Minimum over ``(z, zeta)`` of ``Re(1 + (z - zeta) F''(z)/F'(z))``.

    ``zeta`` runs over the grid radii with ``zeta_samples`` angles each.
    """
    grid = grid or DiskGrid()
    if zeta_samples < 1:
        raise DomainError("zeta_samples must be positive")
    z = grid.points()
    s = _q_sample(F, z)
    T = s.inner
    phi = 2.0 * np.pi * np.arange(zeta_samples) / zeta_samples
    zeta = (np.asarray(grid.radii)[:, None] * np.exp(1j * phi)[None, :]).ravel()
    # Re(1 + (z - zeta) T) minimized over zeta = Re(1 + zT) - max Re(zeta T)
    prod = np.real(np.outer(T, zeta))
    j = np.argmax(prod, axis=1)
    margin = 1.0 + np.real(z * T) - prod[np.arange(z.size), j]
    with np.errstate(invalid="ignore"):
        err = s.err / np.abs(z) * (np.abs(z) + grid.r_max)
    rep = _reduce("ucv_two_point", margin, err, grid, z, tol, False, resolve_tol,
                  series_params(F) | {"zeta_samples": zeta_samples})
    i = int(np.flatnonzero(z == rep.witness)[0])
    rep.params["zeta_witness"] = complex(zeta[j[i]])
    return rep


# -- coefficient lemmas --------------------------------------------------------

def _coeff_check(check: str, F: FracPowerSeries, bound: np.ndarray, params: dict,
                 tol: float = TOL) -> CheckReport:
    a = np.abs(F.coeffs[1:])
    params = series_params(F) | params
    if a.size == 0:
        return CheckReport(check, PASS, float("inf"), None, params, 0.0)
    margins = bound - a
    i = int(np.argmin(margins))
    worst = float(margins[i])
    params["witness_n"] = i + 2
    tail_note = 0.0
    if F.tail is not None:
        # omitted coefficients obey the tail majorant; report its worst excess
        n = np.arange(F.N + 1, F.N + 257)
        b_tail = F.tail.bound(n)
        lim = bound_fn_for(check)(n)
        tail_note = float(max(0.0, np.max(b_tail - lim)))
    return CheckReport(check, PASS if worst >= -tol else FAIL, worst, None, params, tail_note)


def bound_fn_for(check: str):
    return {
        "duren_starlike": lambda n: np.asarray(n, float),
        "duren_convex": lambda n: np.ones(np.shape(n)),
        "goodman": lambda n: 1.0 / np.asarray(n, float),
    }[check]


def duren_bound_check(F: FracPowerSeries, kind: str = "starlike", tol: float = TOL) -> CheckReport:
    """Starlike: ``|a_n| <= n``; convex: ``|a_n| <= 1``."""
    if kind not in ("starlike", "convex"):
        raise DomainError(f"kind must be 'starlike' or 'convex', got {kind!r}")
    check = f"duren_{kind}"
    n = np.arange(2, F.N + 1)
    return _coeff_check(check, F, bound_fn_for(check)(n), {"kind": kind}, tol)


def goodman_bound_check(F: FracPowerSeries, tol: float = TOL) -> CheckReport:
    """``|a_n| <= 1/n`` for ``n >= 2``."""
    n = np.arange(2, F.N + 1)
    return _coeff_check("goodman", F, bound_fn_for("goodman")(n), {}, tol)


# -- Theorems on the integral operator -----------------------------------------

def theorem2_premise(alpha: float, N: int, strict: bool = True) -> np.ndarray:
    """Per ``n = 2..N``: ``(alpha)_{n-1} < n!`` (``<=`` when not strict)."""
    return _premise(alpha, N, 1, strict)


def theorem3_premise(alpha: float, N: int, strict: bool = True) -> np.ndarray:
    """Per ``n = 2..N``: ``(alpha)_{n-1} < (n-1)!`` (``<=`` when not strict)."""
    return _premise(alpha, N, 0, strict)


def _premise(alpha: float, N: int, shift: int, strict: bool) -> np.ndarray:
    out = []
    for n in range(2, N + 1):
        lhs = pochhammer(alpha, n - 1)
        rhs = pochhammer(1.0, n - 1 + shift)
        out.append(lhs < rhs if strict else lhs <= rhs * (1 + 1e-12))
    return np.array(out, dtype=bool)


def _verify(which: int, alpha: float, beta: float, mu: float, radii: Sequence[float],
            N: int, tol: float, conclusion_grid: DiskGrid | None) -> CheckReport:
    radii = [float(r) for r in radii]
    premise_fn, bound_fn, concl_fn = (
        (theorem2_premise, theorem2_bound, is_starlike) if which == 2
        else (theorem3_premise, theorem3_bound, is_convex))
    strict = bool(np.all(premise_fn(alpha, N, True)))
    nonstrict = bool(np.all(premise_fn(alpha, N, False)))

    F = koebe_frac(alpha, mu, N)
    G = noor_frac(F, beta)
    b = np.abs(G.coeffs[1:])
    e = mu * np.arange(2, N + 1)
    rows = []
    for r in radii:
        S = float(np.sum(b * r ** e))
        tail = float(G.tail_sums([r])[0, 0])
        B = bound_fn(beta, mu, r)
        rows.append({"r": r, "tail_sum": S, "tail_estimate": tail, "bound": B,
                     "margin": B - S, "literal_margin": B - (r + S),
                     "tail_form": PASS if B - S >= -tol else FAIL,
                     "with_tail": PASS if B - S - tail >= -tol else FAIL,
                     "literal_form": PASS if B - (r + S) >= -tol else FAIL})
    if rows:
        k = int(np.argmin([row["margin"] for row in rows]))
        worst, witness = rows[k]["margin"], complex(radii[k])
    else:
        worst, witness = float("inf"), None
    tail_ok = all(row["tail_form"] == PASS for row in rows)
    passes = [row["tail_form"] == PASS for row in sorted(rows, key=lambda x: x["r"])]
    monotone = all(not (passes[i + 1] and not passes[i]) for i in range(len(passes) - 1))

    try:
        concl = concl_fn(F, conclusion_grid or DiskGrid())
        concl_verdict = concl.verdict
    except (DomainError, DegenerateSampleError) as exc:
        concl_verdict = f"error: {exc}"

    params = {
        "alpha": alpha, "beta": beta, "mu": mu, "N": N,
        "premise_strict": strict, "premise_nonstrict": nonstrict,
        "tail_form": PASS if tail_ok else FAIL,
        "literal_form": PASS if all(r["literal_form"] == PASS for r in rows) else FAIL,
        "monotone_in_r": monotone,
        "conclusion": concl_verdict,
        "conclusion_disagrees": strict and concl_verdict != PASS,
        "rows": rows,
    }
    verdict = PREMISE if not strict else (PASS if tail_ok else FAIL)
    tail_note = max((row["tail_estimate"] for row in rows), default=0.0)
    return CheckReport(f"theorem{which}", verdict, worst, witness, params, tail_note)


def verify_theorem2(alpha: float, beta: float, mu: float, radii: Sequence[float],
                    N: int = 64, tol: float = TOL,
                    conclusion_grid: DiskGrid | None = None) -> CheckReport:
    """Tail sum of ``|I F|`` against the Fox-Wright bound with ``(3,1)``.

    The verdict reflects the strict premise and the tail-form comparison;
    the literal comparison (leading ``r`` included) is reported per radius.
    """
    return _verify(2, alpha, beta, mu, radii, N, tol, conclusion_grid)


def verify_theorem3(alpha: float, beta: float, mu: float, radii: Sequence[float],
                    N: int = 64, tol: float = TOL,
                    conclusion_grid: DiskGrid | None = None) -> CheckReport:
    """As :func:`verify_theorem2` with premise ``< (n-1)!`` and the ``(2,1)`` bound."""
    return _verify(3, alpha, beta, mu, radii, N, tol, conclusion_grid)
