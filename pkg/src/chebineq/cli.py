"""Command-line front end.

Exit status: 0 when every check passed, 1 when a mathematical check failed,
2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import hermite, inequalities as ineq, ultraspherical as ultra
from .core import node_system

SCHEMA = 1
EQUALITY_MATCH = 1e-6
THREADS_ENV = "CHEB_SHARP_THREADS"

TARGETS = {
    # target: (kind, interval, minimum n)
    "theorem1": (ineq.Kind.G, (-1.0, 1.0), 2),
    "theorem2": (ineq.Kind.PHI, (0.0, 1.0), 3),
    "askey-gasper": (ineq.Kind.F2, (-1.0, 1.0), 2),
    "robertson": (ineq.Kind.F1, (-1.0, 1.0), 2),
}


class UsageError(Exception):
    pass


def parse_n(text: str) -> list[int]:
    """``"12"`` or an inclusive range ``"4..16"``."""
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad degree {text!r}; use N or A..B") from None


def _workers(tasks: int) -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, tasks))


def pmap(func, items: list) -> list:
    """Order-preserving map, in worker processes for longer runs."""
    workers = _workers(len(items))
    if workers == 1 or len(items) < 4:
        return [func(i) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def predicted_points(target: str, n: int) -> list[float] | None:
    if target == "theorem1":
        return ineq.predicted_equality_points(n) if n >= 4 else None
    if target == "theorem2":
        return [0.0, 1.0] if n % 4 == 2 else [1.0]
    # Askey-Gasper and Robertson: x = 1, plus x = -1 for odd n
    return [-1.0, 1.0] if n % 2 else [1.0]


def classify(found: list[float], predicted: list[float] | None) -> dict:
    if predicted is None:
        return {"predicted": None, "classification": [], "missing": [], "matched": None}
    rows = []
    for x in found:
        hit = any(abs(x - p) <= EQUALITY_MATCH for p in predicted)
        rows.append({"x": x, "status": "predicted" if hit else "unexpected"})
    missing = [p for p in predicted if not any(abs(x - p) <= EQUALITY_MATCH for x in found)]
    matched = not missing and all(r["status"] == "predicted" for r in rows)
    return {"predicted": predicted, "classification": rows, "missing": missing, "matched": matched}


def run_verify(job: tuple) -> dict:
    target, n, a, grid, tol = job
    kind, (lo, hi), _ = TARGETS[target]
    if kind is ineq.Kind.G:
        param = ineq.sharp_constant_closed(n).value if a is None else a
        fn = ineq.InequalityFn(kind, n, param)
    else:
        fn = ineq.InequalityFn(kind, n)
    report = ineq.verify_nonneg(fn, lo, hi, grid, tol)
    out = {"target": target, "n": n, "report": report.to_dict()}
    out.update(classify(report.equality_points, predicted_points(target, n) if a is None else None))
    if kind is ineq.Kind.G and a is not None and n >= 4:
        sharp = ineq.sharp_constant_closed(n).value
        xw = float(node_system(n).nodes[ineq.witness_index(n)])
        out["witness"] = {"x": xw, "value": float(fn(xw)), "sharp_constant": sharp}
    out["passed"] = report.passed and out["matched"] is not False
    return out


def run_sharp(job: tuple) -> dict:
    n, numeric, grid = job
    closed = ineq.sharp_constant_closed(n)
    row = {"n": n, "a_closed": closed.value, "branch": closed.branch,
           "a_numeric": None, "diff": None, "argmin": None}
    if numeric:
        value, x = ineq.ratio_minimum(n, grid)
        row.update(a_numeric=value, diff=value - closed.value, argmin=x)
    return row


def _emit(args, payload: dict, human: list[str], header: list[str], rows: list[list]):
    if args.format == "json":
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(header)
        for r in rows:
            w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in r])
        text = buf.getvalue()
    else:
        text = "\n".join(human) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    kind, _, minimum = TARGETS[args.target]
    ns = parse_n(args.n)
    if min(ns) < minimum:
        raise UsageError(f"{args.target} needs n >= {minimum}")
    if args.a is not None and kind is not ineq.Kind.G:
        raise UsageError("--a only applies to theorem1")
    results = pmap(run_verify, [(args.target, n, args.a, args.grid, args.tol) for n in ns])
    human, rows = [], []
    for r in results:
        rep = r["report"]
        human.append(f"{r['target']} n={r['n']}: {'PASS' if r['passed'] else 'FAIL'} "
                     f"min={rep['min_value']:.3e} at x={rep['argmin']:.12g}")
        for c in r["classification"]:
            human.append(f"  equality x={c['x']:.12g} ({c['status']})")
        if not r["classification"]:
            human += [f"  equality x={x:.12g}" for x in rep["equality_points"]]
        human += [f"  missing predicted equality x={x:.12g}" for x in r["missing"]]
        human += [f"  violation x={x:.12g} value={v:.3e}" for x, v in rep["violations"]]
        if "witness" in r:
            w = r["witness"]
            human.append(f"  witness x={w['x']:.12g} value={w['value']:.3e} (a(n)={w['sharp_constant']:.12g})")
        human += [f"  note: {s}" for s in rep["notes"]]
        rows.append([r["target"], r["n"], rep["min_value"], rep["argmin"],
                     ";".join(repr(x) for x in rep["equality_points"]),
                     len(rep["violations"]), r["passed"]])
    header = ["target", "n", "min_value", "argmin", "equality_points", "violations", "passed"]
    _emit(args, {"command": "verify", "results": results}, human, header, rows)
    return 0 if all(r["passed"] for r in results) else 1


def cmd_sharp_constant(args) -> int:
    ns = parse_n(args.n)
    if min(ns) < 2:
        raise UsageError("sharp-constant needs n >= 2")
    rows = pmap(run_sharp, [(n, args.numeric, args.grid) for n in ns])
    human = []
    for r in rows:
        line = f"n={r['n']}: a={r['a_closed']!r}"
        if r["a_numeric"] is not None:
            line += f" numeric={r['a_numeric']!r} diff={r['diff']:.3e}"
        human.append(line)
    header = ["n", "a_closed", "a_numeric", "diff"]
    _emit(args, {"command": "sharp-constant", "results": rows}, human, header,
          [[r["n"], r["a_closed"], r["a_numeric"], r["diff"]] for r in rows])
    return 0


def cmd_certificate(args) -> int:
    ns = parse_n(args.n)
    if len(ns) != 1 or ns[0] < 4:
        raise UsageError("certificate needs a single n >= 4")
    cert = hermite.build_certificate(ns[0], args.a)
    try:
        report = hermite.verify_certificate(cert, args.grid or 10_001)
    except hermite.CertificateError as exc:
        print(f"certificate reconstruction failed: {exc}", file=sys.stderr)
        return 1
    human = [
        f"certificate n={cert.n} a={cert.a!r}: {'PASS' if report.passed else 'FAIL'}",
        f"  boundary coefficient {cert.boundary_coeff!r}",
        f"  reconstruction error {report.reconstruction_error:.3e} (worst x={report.worst_x:.12g})",
        f"  vanishing terms: {report.vanishing or 'none'}",
        f"  witness x_{ineq.witness_index(cert.n)}={report.witness_x:.12g}: "
        f"FA={report.witness_value:.6e}, a + x_w={report.witness_expected:.6e}",
    ]
    failed_terms = sorted({k for k, _, _ in report.sign_failures})
    for k in failed_terms:
        worst = min((v, x) for kk, x, v in report.sign_failures if kk == k)
        human.append(f"  sign check failed for k={k}: L_k={worst[0]:.3e} at x={worst[1]:.6g}")
    human += [f"  note: {s}" for s in report.notes]
    header = ["k", "parity", "x_k", "c0", "c1", "vanishing", "sign_region", "empirical_region"]
    rows = [[t["k"], t["parity"], t["x_k"], *t["coefficients"], t["vanishing"],
             t["sign_region"], t["empirical_region"]] for t in cert.to_dict()["terms"]]
    _emit(args, {"command": "certificate", "certificate": cert.to_dict(),
                 "verification": report.to_dict()}, human, header, rows)
    return 0 if report.passed else 1


def figure_data(n: int, points: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(-1.0, 1.0, points)
    g = ineq.InequalityFn(ineq.Kind.G, n, ineq.sharp_constant_closed(n).value)
    return xs, g(xs)


def cmd_figure(args) -> int:
    ns = parse_n(args.n)
    if len(ns) != 1 or ns[0] < 4:
        raise UsageError("figure needs a single n >= 4")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    xs, vals = figure_data(ns[0], args.points)
    rows = [[float(x), float(v)] for x, v in zip(xs, vals)]
    human = [f"{x!r} {v!r}" for x, v in rows]
    _emit(args, {"command": "figure", "n": ns[0], "x": [r[0] for r in rows],
                 "value": [r[1] for r in rows]}, human, ["x", "value"], rows)
    return 0


def cmd_ultra(args) -> int:
    lam = ultra.CHEBYSHEV_T if args.chebyshev_t else args.lam
    if lam is None:
        raise UsageError("give --lambda or --chebyshev-t")
    try:
        lam = ultra.check_lambda(lam)
    except ultra.ParameterError as exc:
        raise UsageError(str(exc)) from None
    if args.n is None and args.n_max is None:
        raise UsageError("give --n or --n-max")
    if lam >= 1:
        ns = parse_n(args.n) if args.n is not None else list(range(0, args.n_max + 1))
        if min(ns) < 0:
            raise UsageError("n must be non-negative")
        reports = [ultra.corollary1_check(lam, n, args.grid or 10_001) for n in ns]
        human = [f"{r.label}: {'PASS' if r.passed else 'FAIL'} min={r.min_value:.3e} "
                 f"at x={r.argmin:.12g}" for r in reports]
        rows = [[lam, n, r.min_value, r.argmin, r.passed] for n, r in zip(ns, reports)]
        _emit(args, {"command": "ultra", "lambda": lam, "mode": "check",
                     "results": [r.to_dict() for r in reports]},
              human, ["lambda", "n", "min_value", "argmin", "passed"], rows)
        return 0 if all(r.passed for r in reports) else 1
    n_max = args.n_max if args.n_max is not None else max(parse_n(args.n))
    if n_max < 2:
        raise UsageError("counterexample search needs n_max >= 2")
    hit = ultra.find_counterexample(lam, n_max)
    name = "T" if lam == ultra.CHEBYSHEV_T else f"C^{lam:g}"
    if hit is None:
        human = [f"{name}: no counterexample for n = 2..{n_max} on [0, 1]"]
        rows = []
    else:
        human = [f"{name}: counterexample n={hit.n} x={hit.x:.12g} D={hit.value!r} "
                 f"(scanned n = 2..{n_max})"]
        rows = [[lam, hit.n, hit.x, hit.value]]
    payload = {"command": "ultra", "lambda": lam, "mode": "search", "n_max": n_max,
               "counterexample": None if hit is None else
               {"n": hit.n, "x": hit.x, "value": hit.value}}
    _emit(args, payload, human, ["lambda", "n", "x", "value"], rows)
    return 1 if hit is not None else 0


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _grid(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("grid must be at least 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default=None,
                        help="output format (default: csv for figure, human otherwise)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--grid", type=_grid, default=None,
                        help="points per parametrisation (default 20n+1)")
    common.add_argument("--tol", type=_positive_float, default=ineq.TOL_VERIFY)

    parser = argparse.ArgumentParser(prog="chebineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="grid-verify one of the inequalities")
    p.add_argument("target", choices=sorted(TARGETS))
    p.add_argument("--n", required=True, help="degree N or range A..B")
    p.add_argument("--a", type=float, default=None, help="override a(n) (theorem1 only)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharp-constant", parents=[common], help="closed-form and numeric a(n)")
    p.add_argument("--n", required=True)
    p.add_argument("--numeric", action="store_true", help="also minimise F1/F3 numerically")
    p.set_defaults(func=cmd_sharp_constant)

    p = sub.add_parser("certificate", parents=[common], help="emit and check the Hermite certificate")
    p.add_argument("--n", required=True)
    p.add_argument("--a", type=float, default=None)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("figure", parents=[common], help="curve data of G(a(n); x) on [-1, 1]")
    p.add_argument("--n", required=True)
    p.add_argument("--points", type=int, default=2001)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("ultra", parents=[common], help="finite-increment inequality for C_n^lambda")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--chebyshev-t", action="store_true", help="use T_n (the lambda = 0 case)")
    p.add_argument("--n", default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=cmd_ultra)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad arguments and 0 after --help
        return int(exc.code or 0)
    if args.format is None:
        args.format = "csv" if args.command == "figure" else "human"
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
