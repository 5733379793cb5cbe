"""Command-line verification harness.

Usage examples::

    gftfrac gen --alpha 2 --mu 1 --order 64 --out koebe.json
    gftfrac check --in koebe.json --check starlike
    gftfrac bound --theorem 2 --alpha 1 --beta 1,2 --mu 1 --radii 0.3,0.6,0.9
    gftfrac sweep --check theorem2 --alpha 1 --beta 1,2 --mu 1,2 --radii 0.3,0.6,0.9
    gftfrac plotdata --in koebe.json --radii 0.9 --samples 256

Exit codes: 0 pass, 1 fail, 2 usage error, 3 premise not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import banachmodel as bm
from .diskcheck import (
    FAIL,
    PASS,
    PREMISE,
    TOL,
    duren_bound_check,
    goodman_bound_check,
    is_convex,
    is_starlike,
    is_ucv,
    ucv_two_point,
    verify_theorem2,
    verify_theorem3,
)
from .errors import ConvergenceError, DegenerateSampleError, DomainError, UsageError
from .fracseries import DEFAULT_ANGLES, DEFAULT_ORDER, DiskGrid, FracPowerSeries, evaluate_parts, koebe_frac
from .operators import noor_frac, ruscheweyh_frac, z_noor_derivative
from .specialfn import DEFAULT_TOL, FoxWrightParams, fox_wright_2psi1

EXIT = {PASS: 0, FAIL: 1, PREMISE: 3}
THREADS_ENV = "GFT_FRAC_THREADS"

SERIES_CHECKS = {
    "starlike": lambda F, g, a: is_starlike(F, g, a.tol),
    "convex": lambda F, g, a: is_convex(F, g, a.tol),
    "ucv": lambda F, g, a: is_ucv(F, g, a.tol),
    "ucv2": lambda F, g, a: ucv_two_point(F, g, a.zeta, a.tol),
    "duren-starlike": lambda F, g, a: duren_bound_check(F, "starlike", a.tol),
    "duren-convex": lambda F, g, a: duren_bound_check(F, "convex", a.tol),
    "goodman": lambda F, g, a: goodman_bound_check(F, a.tol),
}
SWEEP_HEADER = ["check", "alpha", "beta", "mu", "r", "l", "s", "verdict", "margin", "detail"]


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    return n if n > 0 else (os.cpu_count() or 1)


# -- argument helpers ----------------------------------------------------------

def float_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def int_list(text: str) -> list:
    return [int(x) for x in float_list(text)]


def complex_list(text: str) -> list:
    try:
        return [complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}")


def grid_from(args) -> DiskGrid:
    if args.radii:
        return DiskGrid(tuple(args.radii), args.angles)
    if args.rmax is None:
        return DiskGrid(angles_per_radius=args.angles)
    return DiskGrid.with_rmax(args.rmax, angles=args.angles)


def read_json(path: str) -> dict:
    if path is None:
        raise UsageError("--in is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def read_series(args) -> FracPowerSeries:
    return FracPowerSeries.from_json(read_json(args.input))


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit_report(rep, args) -> int:
    emit(dump(rep.to_json()), args.out)
    return EXIT[rep.verdict]


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return "" if x is None else x


# -- commands --------------------------------------------------------------------

def cmd_gen(args) -> int:
    F = koebe_frac(args.alpha, args.mu, args.order)
    text = F.dumps() + "\n"
    emit(text, args.out)
    if args.echo and args.out:
        rows = [(n, c.real, c.imag) for n, c in enumerate(F.coeffs, start=1)]
        sys.stdout.write(csv_text(["n", "re", "im"], rows))
    return 0


def cmd_apply(args) -> int:
    F = read_series(args)
    op = {"ruscheweyh": ruscheweyh_frac, "noor": noor_frac,
          "znoor": z_noor_derivative}[args.op]
    emit(op(F, args.beta).dumps() + "\n", args.out)
    return 0


def cmd_eval(args) -> int:
    F = read_series(args)
    z = np.array(args.z, dtype=complex)
    orders = (0, 1, 2) if _nonzero_or_integer(F, z) else (0,)
    parts = evaluate_parts(F, z, orders)
    rows = []
    for i, zi in enumerate(z):
        row = [float(zi.real), float(zi.imag)]
        for k in (0, 1, 2):
            v = parts[k][0][i] if k in parts else complex("nan")
            row += [float(v.real), float(v.imag)]
        rows.append(row)
    header = ["z_re", "z_im", "f_re", "f_im", "d1_re", "d1_im", "d2_re", "d2_im"]
    if args.format == "csv":
        emit(csv_text(header, rows), args.out)
    else:
        emit(dump([dict(zip(header, r)) for r in rows]), args.out)
    return 0


def _nonzero_or_integer(F, z) -> bool:
    return not np.any(z == 0) or float(F.mu).is_integer()


def cmd_check(args) -> int:
    F = read_series(args)
    rep = SERIES_CHECKS[args.check](F, grid_from(args), args)
    return emit_report(rep, args)


def cmd_bound(args) -> int:
    fn = verify_theorem2 if args.theorem == 2 else verify_theorem3
    rep = fn(args.alpha, args.beta, args.mu, args.radii or [0.5], args.order, args.tol)
    return emit_report(rep, args)


def cmd_foxwright(args) -> int:
    if len(args.params) != 6:
        raise UsageError("--params needs a1,A1,a2,A2,b1,B1")
    p = FoxWrightParams(*args.params, tol=args.tol)
    res = fox_wright_2psi1(p, args.z)
    emit(dump({"value": res.value, "tail": res.tail, "terms": res.terms,
               "params": list(args.params), "z": args.z}), args.out)
    return 0


def cmd_norm(args) -> int:
    F = read_series(args)
    est = bm.pre_schwarzian_estimate(F, grid_from(args))
    emit(dump({"value": est.value, "witness": [est.witness.real, est.witness.imag],
               "resolved_points": est.resolved_points,
               "max_resolved_radius": est.max_resolved_radius, "lower_estimate": True}),
         args.out)
    return 0


def cmd_banach(args) -> int:
    model = bm.BanachModel.from_json(read_json(args.input))
    grid = grid_from(args)
    dirs = bm.sample_directions(model, args.directions, args.seed)
    check = args.check
    if check == "ucv":
        rep = bm.ucv_membership(model, dirs, grid, args.tol)
    elif check == "theorem4":
        rep = bm.theorem4_check(model, dirs, grid, args.tol)
    elif check == "kernel":
        rep = bm.kernel_vanishing_check(model, bm.kernel_directions(model, args.directions,
                                                                    args.seed))
    elif check == "sufficient":
        rep = bm.sufficient_condition_check(
            model, bm.random_w_samples(model, args.directions, 0.9, args.seed), args.tol)
    elif check == "boundedness":
        rep = bm.theorem_boundedness_check(model, dirs, args.beta, grid, args.tol)
    elif check == "theorem8":
        rep = bm.theorem8_check(model, dirs.directions[0], args.alpha, args.beta, grid,
                                args.tol)
    else:
        models = [model.scaled(2.0 ** -m) for m in range(args.steps + 1)]
        rep = bm.compactness_decay_check(models, args.beta, grid)
    return emit_report(rep, args)


def _sweep_theorem23(which, alpha, beta, mu, radii, args):
    fn = verify_theorem2 if which == 2 else verify_theorem3
    try:
        rep = fn(alpha, beta, mu, radii, args.order, args.tol)
    except DomainError as exc:
        return [[f"theorem{which}", alpha, beta, mu, r, None, None, PREMISE, None, str(exc)]
                for r in radii]
    rows = []
    for row in rep.params["rows"]:
        verdict = PREMISE if not rep.params["premise_strict"] else row["tail_form"]
        detail = f"tail_form={row['tail_form']};literal_form={row['literal_form']}"
        rows.append([f"theorem{which}", alpha, beta, mu, row["r"], None, None, verdict,
                     row["margin"], detail])
    return rows


def _default_t8_model(mu):
    return bm.BanachModel.diagonal([1.0, 0.0], [1.0 / n ** 4 for n in range(2, 9)], mu)


def _sweep_theorem8(alpha, beta, mu, radii, args, model_doc):
    model = (bm.BanachModel.from_json({**model_doc, "mu": mu}) if model_doc
             else _default_t8_model(mu))
    a = bm.sample_directions(model, 1, args.seed).directions[0]
    rows = []
    for r in radii:
        rep = bm.theorem8_check(model, a, alpha, beta, DiskGrid((r,), args.angles), args.tol)
        detail = (f"noor_form={rep.params['noor_form']}" if "noor_form" in rep.params
                  else rep.params.get("reason", ""))
        margin = None if np.isnan(rep.worst_margin) else rep.worst_margin
        rows.append(["theorem8", alpha, beta, mu, r, None, None, rep.verdict, margin, detail])
    return rows


def _sweep_theorem6(l, s, args):
    rng = np.random.default_rng([args.seed, l, s])
    A = [float(x) for x in rng.uniform(0.5, 2.0, size=l + s)]
    fams = [bm.random_admissible_family(rng, Ai, args.order) for Ai in A]
    H = bm.quasi_hadamard(fams[:l], fams[l:])
    rep = bm.quasi_class_check(H, l, s, A, fams)
    return [["theorem6", None, None, None, None, l, s, rep.verdict, rep.worst_margin,
             f"lhs={rep.params['lhs']!r};rhs={rep.params['rhs']!r}"]]


def cmd_sweep(args) -> int:
    jobs = []
    if args.check in ("theorem2", "theorem3", "theorem8"):
        model_doc = read_json(args.input) if (args.check == "theorem8" and args.input) else None
        radii = args.radii or []
        for alpha, beta, mu in itertools.product(args.alpha, args.beta, args.mu):
            if not radii:
                continue
            if args.check == "theorem8":
                jobs.append(lambda a=alpha, b=beta, m=mu: _sweep_theorem8(a, b, m, radii, args,
                                                                          model_doc))
            else:
                which = int(args.check[-1])
                jobs.append(lambda a=alpha, b=beta, m=mu, w=which:
                            _sweep_theorem23(w, a, b, m, radii, args))
    else:
        for l, s in itertools.product(args.l, args.s):
            if l + s >= 1:
                jobs.append(lambda l=l, s=s: _sweep_theorem6(l, s, args))
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        chunks = list(pool.map(lambda job: job(), jobs))
    rows = [row for chunk in chunks for row in chunk]
    emit(csv_text(SWEEP_HEADER, rows), args.out)
    verdicts = {row[7] for row in rows}
    return 1 if FAIL in verdicts else (3 if PREMISE in verdicts else 0)


def cmd_plotdata(args) -> int:
    F = read_series(args)
    if args.transform == "ruscheweyh":
        F = ruscheweyh_frac(F, args.beta)
    elif args.transform == "noor":
        F = noor_frac(F, args.beta)
    theta = 2.0 * np.pi * np.arange(args.samples) / args.samples
    rows = []
    for r in args.radii or [0.5]:
        z = r * np.exp(1j * theta)
        f = evaluate_parts(F, z, (0,))[0][0]
        rows += [[float(t), r, float(v.real), float(v.imag)] for t, v in zip(theta, f)]
    emit(csv_text(["theta", "r", "re", "im"], rows), args.out)
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="input JSON document")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=TOL)
    common.add_argument("--seed", type=int, default=0)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--rmax", type=float, default=None)
    grid.add_argument("--radii", type=float_list, default=None)
    grid.add_argument("--angles", type=int, default=DEFAULT_ANGLES)

    p = argparse.ArgumentParser(prog="gftfrac", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a generator series")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--mu", type=float, default=1.0)
    s.add_argument("--order", type=int, default=DEFAULT_ORDER)
    s.add_argument("--echo", action="store_true", help="print the coefficient table")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("apply", parents=[common], help="apply a coefficient operator")
    s.add_argument("--op", choices=("ruscheweyh", "noor", "znoor"), required=True)
    s.add_argument("--beta", type=float, required=True)
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("eval", parents=[common], help="evaluate F, F', F''")
    s.add_argument("--z", type=complex_list, required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", parents=[common, grid], help="run a class check")
    s.add_argument("--check", choices=sorted(SERIES_CHECKS), required=True)
    s.add_argument("--zeta", type=int, default=32, help="zeta angles for ucv2")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bound", parents=[common], help="integral-operator bound theorems")
    s.add_argument("--theorem", type=int, choices=(2, 3), required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--mu", type=float, default=1.0)
    s.add_argument("--radii", type=float_list, default=None)
    s.add_argument("--order", type=int, default=DEFAULT_ORDER)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("foxwright", parents=[common], help="evaluate 2Psi1")
    s.add_argument("--params", type=float_list, required=True, help="a1,A1,a2,A2,b1,B1")
    s.add_argument("--z", type=float, required=True)
    s.set_defaults(func=cmd_foxwright, tol=DEFAULT_TOL)

    s = sub.add_parser("norm", parents=[common, grid], help="pre-Schwarzian norm estimate")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("banach", parents=[common, grid], help="checks on a slice model")
    s.add_argument("--check", required=True, choices=(
        "ucv", "theorem4", "kernel", "sufficient", "boundedness", "theorem8", "compactness"))
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--beta", type=float, default=1.0)
    s.add_argument("--directions", type=int, default=64)
    s.add_argument("--steps", type=int, default=10, help="halvings for compactness")
    s.set_defaults(func=cmd_banach)

    s = sub.add_parser("sweep", parents=[common], help="CSV sweep over parameter grids")
    s.add_argument("--check", choices=("theorem2", "theorem3", "theorem6", "theorem8"),
                   required=True)
    s.add_argument("--alpha", type=float_list, default=[1.0])
    s.add_argument("--beta", type=float_list, default=[1.0])
    s.add_argument("--mu", type=float_list, default=[1.0])
    s.add_argument("--radii", type=float_list, default=None)
    s.add_argument("--l", type=int_list, default=[1])
    s.add_argument("--s", type=int_list, default=[0])
    s.add_argument("--order", type=int, default=DEFAULT_ORDER)
    s.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("plotdata", parents=[common], help="boundary image points as CSV")
    s.add_argument("--transform", choices=("none", "ruscheweyh", "noor"), default="none")
    s.add_argument("--beta", type=float, default=1.0)
    s.add_argument("--radii", type=float_list, default=None)
    s.add_argument("--samples", type=int, default=256)
    s.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, ConvergenceError, DegenerateSampleError) as exc:
        print(f"gftfrac {args.command}: {exc}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
