"""Acceptance criteria 1-10, one test each.

Every test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (outside pytest's
capture) with the measured quantities, then asserts the criterion at its
stated tolerance and runtime.
"""

import json
import math
import time

import numpy as np
import pytest

from gftfrac import banachmodel as bm
from gftfrac.cli import main
from gftfrac.diskcheck import FAIL, PASS, is_convex, is_starlike, is_ucv, verify_theorem2, verify_theorem3
from gftfrac.fracseries import DiskGrid, FracPowerSeries, koebe_frac
from gftfrac.operators import noor_frac, ruscheweyh_frac, znoor_weights, znoor_weights_gamma
from gftfrac.specialfn import theorem2_bound, theorem3_bound


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def class_member(rng, N=64, mu=1.0):
    """Random series with ``|a_n| <= (alpha)_{n-1}/(n-1)!`` for a random ``alpha``."""
    alpha = rng.uniform(1.0, 2.0)
    bound = koebe_frac(alpha, mu, N).coeffs.real
    c = bound * rng.uniform(0, 1, N) * np.exp(2j * np.pi * rng.uniform(0, 1, N))
    c[0] = 1.0
    return FracPowerSeries(mu, c)


def test_criterion_1_operator_inverse(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        F = class_member(rng, 64, float(rng.choice([1.0, 1.5, 2.0])))
        for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
            G = noor_frac(ruscheweyh_frac(F, beta), beta)
            worst = max(worst, float(np.max(np.abs(G.coeffs - F.coeffs))))
    dt = time.perf_counter() - t0
    ok = worst < 1e-12 and dt < 1.0
    report(1, ok, f"max coefficient error {worst:.3e} (< 1e-12), {dt:.3f} s (< 1 s)")
    assert worst < 1e-12
    assert dt < 1.0


def test_criterion_2_factorial_vs_gamma_weights(report):
    t0 = time.perf_counter()
    worst = 0.0
    for beta in np.linspace(0.0, 10.0, 50):
        f = znoor_weights(beta, 1.0, 64)
        g = znoor_weights_gamma(beta, 1.0, 64)
        worst = max(worst, float(np.max(np.abs(f - g) / np.abs(f))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 1.0
    report(2, ok, f"max relative weight gap {worst:.3e} (<= 1e-10), {dt:.3f} s (< 1 s)")
    assert worst <= 1e-10
    assert dt < 1.0


def test_criterion_3_foxwright_closed_forms(report):
    t0 = time.perf_counter()
    e2 = abs(theorem2_bound(1, 1, 0.5) - 0.5)
    e3 = abs(theorem3_bound(1, 1, 0.5) - (-math.log(0.5) - 0.5))
    dt = time.perf_counter() - t0
    ok = e2 < 1e-10 and e3 < 1e-10 and dt < 0.1
    report(3, ok, f"errors {e2:.2e}, {e3:.2e} (< 1e-10), {dt:.4f} s (< 0.1 s)")
    assert e2 < 1e-10 and e3 < 1e-10
    assert dt < 0.1


def test_criterion_4_theorem2_3_tail_form(report):
    t0 = time.perf_counter()
    radii = [k / 10 for k in range(1, 10)]
    tail_failures, literal_failures, runs = [], 0, 0
    for verify in (verify_theorem2, verify_theorem3):
        for beta in (1, 2, 3):
            for mu in (1, 1.5, 2):
                rep = verify(1, beta, mu, radii)
                runs += 1
                for row in rep.params["rows"]:
                    if row["tail_form"] != PASS:
                        tail_failures.append((rep.check, beta, mu, row["r"]))
                    literal_failures += row["literal_form"] != PASS
    dt = time.perf_counter() - t0
    ok = not tail_failures and dt < 5.0
    report(4, ok, f"{runs} runs x 9 radii, tail-form failures {len(tail_failures)}, "
                  f"literal-form failures logged {literal_failures}, {dt:.2f} s (< 5 s)")
    assert not tail_failures
    assert dt < 5.0


def test_criterion_5_classical_geometry(report):
    t0 = time.perf_counter()
    K2, K1 = koebe_frac(2, 1, 128), koebe_frac(1, 1, 128)

    def run():
        return (is_starlike(K2), is_convex(K2), is_ucv(K2), is_convex(K1))

    first = run()
    second = run()
    dt = (time.perf_counter() - t0) / 2
    verdicts = [r.verdict for r in first]
    expected = [PASS, FAIL, FAIL, PASS]
    same = all(a.dumps() == b.dumps() and a.worst_margin == b.worst_margin
               for a, b in zip(first, second))
    ok = verdicts == expected and same and dt < 5.0
    margins = ", ".join(f"{r.check}={r.worst_margin:.4g}" for r in first)
    report(5, ok, f"verdicts {verdicts} (expected {expected}), {margins}, "
                  f"bit-identical rerun {same}, {dt:.2f} s (< 5 s)")
    assert verdicts == expected
    assert same
    assert dt < 5.0


def test_criterion_6_pre_schwarzian_norms(report):
    t0 = time.perf_counter()
    grid = DiskGrid.with_rmax(0.999)
    e2 = bm.pre_schwarzian_estimate(koebe_frac(2, 1, 128), grid)
    e1 = bm.pre_schwarzian_estimate(koebe_frac(1, 1, 128), grid)
    dt = time.perf_counter() - t0
    in2 = 5.9 <= e2.value <= 6.0
    in1 = 3.9 <= e1.value <= 4.0
    ok = in2 and in1 and dt < 5.0
    report(6, ok, f"alpha=2 estimate {e2.value:.4f} in [5.9, 6.0]: {in2}; "
                  f"alpha=1 estimate {e1.value:.4f} in [3.9, 4.0]: {in1}; "
                  f"resolved up to r={e2.max_resolved_radius}, {e1.max_resolved_radius}; "
                  f"{dt:.2f} s (< 5 s)")
    assert in2 and in1
    assert dt < 5.0


def test_criterion_7_theorem4_and_kernel(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    n = np.arange(2, 9)
    margins, tried = [], 0
    while len(margins) < 30 and tried < 500:
        tried += 1
        d = int(rng.integers(1, 4))
        A = rng.normal(size=d) + 1j * rng.normal(size=d)
        p = (rng.uniform(0, 1, 7) * np.exp(2j * np.pi * rng.uniform(size=7))
             * abs(A[0]) * rng.uniform(0.05, 0.6) / n ** 2)
        M = bm.BanachModel.diagonal(A, p)
        dirs = bm.sample_directions(M, 64, seed=tried)
        mem = bm.ucv_membership(M, dirs, DiskGrid())
        if mem.passed:
            margins.append(bm.theorem4_check(M, dirs, DiskGrid(), membership=mem).worst_margin)
    kernel = []
    for k in range(10):
        d = int(rng.integers(2, 9))
        A = rng.normal(size=d) + 1j * rng.normal(size=d)
        M = bm.BanachModel.a_power(A, rng.normal(size=6) / n[:6] ** 2)
        kernel.append(bm.kernel_vanishing_check(M, bm.kernel_directions(M, 16, seed=k)))
    dt = time.perf_counter() - t0
    worst = min(margins) if margins else float("nan")
    kernel_ok = all(r.verdict == PASS for r in kernel)
    kernel_worst = min(r.worst_margin for r in kernel)
    ok = len(margins) == 30 and worst >= -1e-6 and kernel_ok and dt < 30.0
    report(7, ok, f"{len(margins)} UCV models of {tried} tried, worst Theorem 4 margin "
                  f"{worst:.4g} (>= -1e-6); kernel worst |P_n| {-kernel_worst:.2e}; "
                  f"{dt:.2f} s (< 30 s)")
    assert len(margins) == 30 and worst >= -1e-6
    assert kernel_ok
    assert dt < 30.0


def test_criterion_8_quasi_hadamard_closure(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    worst = np.inf
    verdicts = set()
    for _ in range(100):
        k = int(rng.integers(1, 5))
        l = int(rng.integers(0, k + 1))
        s = k - l
        A = rng.uniform(0.2, 3.0, size=k)
        fams = [bm.random_admissible_family(rng, a, 16) for a in A]
        rep = bm.quasi_class_check(bm.quasi_hadamard(fams[:l], fams[l:]), l, s, A, fams)
        worst = min(worst, rep.worst_margin)
        verdicts.add(rep.verdict)
    A = 1.3
    boundary = bm.quasi_class_check([A / 2], 1, 0, [A])
    dt = time.perf_counter() - t0
    ok = verdicts == {PASS} and worst >= -1e-12 and boundary.worst_margin == 0.0 and dt < 2.0
    report(8, ok, f"100 tuples, worst margin {worst:.3e} (>= -1e-12), boundary margin "
                  f"{boundary.worst_margin!r} (exactly 0), {dt:.3f} s (< 2 s)")
    assert verdicts == {PASS} and worst >= -1e-12
    assert boundary.worst_margin == 0.0
    assert dt < 2.0


def test_criterion_9_compactness_decay(report):
    t0 = time.perf_counter()
    M = bm.BanachModel.diagonal([1.0, 0.0], [-1.0 / n ** 4 for n in range(2, 9)])
    seq = [M.scaled(2.0 ** -m) for m in range(11)]
    rep = bm.compactness_decay_check(seq, 1.0, DiskGrid())
    t = rep.params["t"]
    dt = time.perf_counter() - t0
    ratio = t[-1] / t[0]
    strictly = all(b < a for a, b in zip(t, t[1:]))
    ok = rep.verdict == PASS and strictly and ratio < 1e-3 and dt < 10.0
    report(9, ok, f"t_0={t[0]:.5g}, t_10={t[-1]:.5g}, ratio {ratio:.4e} (< 1e-3), "
                  f"decreasing {strictly}, {dt:.2f} s (< 10 s)")
    assert rep.verdict == PASS and strictly and ratio < 1e-3
    assert dt < 10.0


def test_criterion_10_determinism_and_round_trip(report, tmp_path, capsys):
    model = bm.BanachModel.diagonal([1.0, 0.5j], [1.0 / n ** 3 for n in range(2, 9)])
    mpath = tmp_path / "model.json"
    mpath.write_text(model.dumps())
    outs = []
    for k in range(2):
        out = tmp_path / f"report{k}.json"
        main(["banach", "--in", str(mpath), "--check", "theorem4", "--seed", "11",
              "--directions", "16", "--out", str(out)])
        outs.append(out.read_bytes())
    swept = []
    for _ in range(2):
        main(["sweep", "--check", "theorem6", "--l", "1,2", "--s", "0,1", "--seed", "3"])
        swept.append(capsys.readouterr().out)
    spath = tmp_path / "series.json"
    main(["gen", "--alpha", "2.3", "--mu", "1.7", "--order", "64", "--out", str(spath)])
    back = FracPowerSeries.loads(spath.read_text())
    ref = koebe_frac(2.3, 1.7, 64)
    exact = back == ref and json.loads(spath.read_text())["coeffs"] == ref.to_json()["coeffs"]
    same = outs[0] == outs[1] and swept[0] == swept[1]
    report(10, same and exact, f"byte-identical reports {same}, bit-exact round trip {exact}")
    assert same
    assert exact
