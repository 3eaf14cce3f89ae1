"""Command-line front end.

Subcommands: ``analyze`` (full invariant + inequality report for one graph
file), ``batch`` (generate a corpus and emit per-graph CSV), ``subshift``
(topological-Markov-chain report for a matrix file), ``optimize``
(systolic-constant LP).  Exit codes: 0 pass, 1 usage/input error, 2
mathematical violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import entropy as entropy_mod
from . import graph as graph_mod
from . import optimize as optimize_mod
from . import stable as stable_mod
from . import subshift as subshift_mod
from .cycles import systole
from .errors import GraphisoError, NoCycle, ParseError

CSV_SCHEMA = "# schema=1"
BATCH_CHECKS = [
    "thm1", "prop1", "lemma2", "prop2.lower", "prop2.upper", "prop3",
    "prop4.lower", "prop4.upper.literal", "prop5.literal",
    "thm2.lower", "thm2.upper", "thm3", "regular.lower",
]
BATCH_COLUMNS = (["index", "seed", "b", "num_vertices", "num_edges",
                  "volume", "systole", "h_vol", "h_sys"]
                 + [name.replace(".", "_") + "_slack" for name in BATCH_CHECKS]
                 + ["violations"])


def _sig(x):
    """Round a float to 12 significant digits for stable regression diffs."""
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _sigall(obj):
    if isinstance(obj, dict):
        return {k: _sigall(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sigall(v) for v in obj]
    return _sig(obj)


def _emit_json(obj):
    print(json.dumps(_sigall(obj), indent=2, sort_keys=False))


def _worker_count():
    try:
        return max(1, int(os.environ.get("GRAPHISO_THREADS", "1")))
    except ValueError:
        return 1


def _analyze_graph(g, args):
    b = g.betti_number()
    report = {
        "betti": b,
        "volume": g.volume(),
        "num_vertices": g.num_vertices,
        "num_edges": g.num_edges,
    }
    try:
        sys_val, wit = systole(g)
        report["systole"] = {"value": sys_val, "witness": list(wit.steps)}
    except NoCycle:
        report["systole"] = {"value": None, "witness": [],
                             "note": "tree: infinite systole"}
    h = entropy_mod.volume_entropy(g)
    report["h_vol"] = h
    w_min = float(g.weights.min())
    r_max = args.rmax if args.rmax is not None else 25.0 / min(1.0, w_min)
    if b >= 2:
        est = entropy_mod.entropy_estimate(g, r_max=r_max)
        report["h_vol_estimate"] = est.value
        report["residual"] = est.residual
    else:
        report["h_vol_estimate"] = None
        report["residual"] = None
    report["c_min_literal"] = graph_mod.c_min_literal(g)
    report["c_min_maximal"] = graph_mod.c_min_maximal(g)
    report["c_max"] = graph_mod.c_max(g)

    checks = entropy_mod.check_entropy_inequalities(g, tol=args.tolerance)
    if b >= 1:
        try:
            ball = stable_mod.stable_ball_volume_exact(g)
        except stable_mod.SizeLimitExceeded:
            if args.exact_only:
                ball = None
            else:
                ball = stable_mod.stable_ball_volume_mc(
                    g, samples=args.samples, seed=args.seed)
        if ball is not None:
            report["stable_ball_volume"] = {
                "value": ball.value, "method": ball.method, "ci99": ball.ci99}
        checks += stable_mod.check_stable_inequalities(
            g, tol=args.tolerance, samples=args.samples, seed=args.seed,
            exact_only=args.exact_only)
    report["checks"] = [c.to_dict() for c in checks]
    report["violations"] = sorted(
        c.name for c in checks if not c.holds(args.tolerance))
    return report


def cmd_analyze(args):
    with open(args.graph_file) as fh:
        g = graph_mod.from_json(fh.read())
    if not g.is_connected():
        raise ParseError("analysis requires a connected graph")
    report = _analyze_graph(g, args)
    if args.format == "json":
        _emit_json(report)
    elif args.format == "table":
        _print_table(report)
    else:
        _print_checks_csv(report)
    return 2 if report["violations"] else 0


def _print_table(report):
    def row(k, v):
        print(f"{k:<22} {v}")

    for key in ("betti", "num_vertices", "num_edges", "volume", "h_vol",
                "h_vol_estimate", "residual", "c_min_literal",
                "c_min_maximal", "c_max"):
        v = report.get(key)
        row(key, f"{v:.12g}" if isinstance(v, float) else v)
    sysv = report["systole"]["value"]
    row("systole", f"{sysv:.12g}" if sysv is not None else "inf")
    if "stable_ball_volume" in report:
        sb = report["stable_ball_volume"]
        row("stable_ball_volume",
            f"{sb['value']:.12g} ({sb['method']}, ci99={sb['ci99']:.3g})")
    print()
    print(f"{'check':<22} {'ok':<4} {'left':>16} {'right':>16} {'slack':>12}")
    for c in report["checks"]:
        if not c["applicable"]:
            print(f"{c['name']:<22} n/a  ({c['reason']})")
            continue
        eq = " =" if c["equality"] else ""
        ok = "no" if c["name"] in report["violations"] else "yes"
        print(f"{c['name']:<22} {ok:<4} {c['left']:>16.9g} "
              f"{c['right']:>16.9g} {c['slack']:>12.3g}{eq}")


def _print_checks_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "applicable", "left", "right", "slack",
                     "equality", "provenance"])
    for c in report["checks"]:
        writer.writerow([
            c["name"], int(c["applicable"]),
            "" if c["left"] is None else f"{c['left']:.12g}",
            "" if c["right"] is None else f"{c['right']:.12g}",
            "" if c["slack"] is None else f"{c['slack']:.12g}",
            int(c["equality"]), c["provenance"]])
    print(CSV_SCHEMA)
    print(buf.getvalue(), end="")


def _batch_instance(args, i):
    seed = args.seed + i
    if args.kind == "random_weighted":
        g = graph_mod.random_weighted(
            b_range=(args.b_min, args.b_max),
            weight_range=(args.w_min, args.w_max), seed=seed)
    else:
        g = graph_mod.random_regular(args.n, args.valence, seed=seed)
    b = g.betti_number()
    sys_val = systole(g)[0] if b >= 1 else math.inf
    h = entropy_mod.volume_entropy(g)
    checks = entropy_mod.check_entropy_inequalities(
        g, tol=args.tolerance, basis_cap=10 ** 4)
    if (b >= 1 and b <= stable_mod.EXACT_MAX_BETTI
            and g.num_edges <= stable_mod.EXACT_MAX_EDGES):
        checks += stable_mod.check_stable_inequalities(g, tol=args.tolerance)
    by_name = {c.name: c for c in checks}
    row = [i, seed, b, g.num_vertices, g.num_edges,
           f"{g.volume():.12g}", f"{sys_val:.12g}", f"{h:.12g}",
           f"{h * sys_val:.12g}"]
    violations = []
    for name in BATCH_CHECKS:
        c = by_name.get(name)
        if c is None or not c.applicable:
            row.append("")
            continue
        row.append(f"{c.slack:.12g}")
        if not c.holds(args.tolerance):
            violations.append(name)
    row.append(";".join(violations))
    return row, violations


def cmd_batch(args):
    rows = []
    any_violation = False
    workers = _worker_count()
    indices = range(args.count)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _batch_instance(args, i),
                                    indices))
    else:
        results = [_batch_instance(args, i) for i in indices]
    for row, violations in results:
        rows.append(row)
        any_violation = any_violation or bool(violations)
    print(CSV_SCHEMA)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BATCH_COLUMNS)
    writer.writerows(rows)
    print(buf.getvalue(), end="")
    return 2 if any_violation else 0


def cmd_subshift(args):
    with open(args.matrix_file) as fh:
        A = subshift_mod.from_json(fh.read())
    rep = subshift_mod.check_prop6(A, tol=args.tolerance)
    out = rep.to_dict()
    out["h_top"] = subshift_mod.topological_entropy(A)
    out["T_min"] = subshift_mod.minimal_period(A)
    out["b_A"] = subshift_mod.betti_bA(A)
    _emit_json(out)
    return 2 if not rep.holds(args.tolerance) else 0


def cmd_optimize(args):
    with open(args.graph_file) as fh:
        g = graph_mod.from_json(fh.read())
    opt = optimize_mod.optimize_systolic_volume(g, tolerance=args.tolerance)
    b = g.betti_number()
    out = {
        "sigma": opt.sigma,
        "weights": opt.weights,
        "active_cycles": [list(w.steps) for w in opt.active_cycles],
        "bs_lower_bound": (optimize_mod.bs_lower_bound(b) if b >= 3 else None),
        "iterations": opt.iterations,
    }
    _emit_json(out)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=1e-9,
                        help="inequality verdict tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10 ** 6,
                        help="Monte-Carlo sample count")
    common.add_argument("--rmax", type=float, default=None,
                        help="max radius for the ball-growth entropy estimator")
    common.add_argument("--format", choices=("json", "csv", "table"),
                        default="json")
    common.add_argument("--exact-only", action="store_true",
                        help="never fall back to Monte-Carlo ball volumes")

    p = argparse.ArgumentParser(prog="graphiso")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common],
                        help="full report for one graph file")
    pa.add_argument("graph_file")
    pa.set_defaults(func=cmd_analyze)

    pb = sub.add_parser("batch", parents=[common],
                        help="generate a corpus, emit CSV")
    pb.add_argument("kind", choices=("random_weighted", "random_regular"))
    pb.add_argument("--count", type=int, default=10)
    pb.add_argument("--b-min", type=int, default=2)
    pb.add_argument("--b-max", type=int, default=8)
    pb.add_argument("--w-min", type=float, default=0.1)
    pb.add_argument("--w-max", type=float, default=10.0)
    pb.add_argument("--n", type=int, default=8)
    pb.add_argument("--valence", type=int, default=3)
    pb.set_defaults(func=cmd_batch)

    ps = sub.add_parser("subshift", parents=[common],
                        help="Markov-chain entropy/period report")
    ps.add_argument("matrix_file")
    ps.set_defaults(func=cmd_subshift)

    po = sub.add_parser("optimize", parents=[common],
                        help="systolic constant by cutting planes")
    po.add_argument("graph_file")
    po.set_defaults(func=cmd_optimize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tolerance <= 0:
        parser.error("--tolerance must be positive")
    try:
        return args.func(args)
    except (OSError, GraphisoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
