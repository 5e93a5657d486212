"""Command-line driver: ``hcstab <command> [options]``.

Every command prints (or writes to ``--out``) a JSON document whose
``config`` entry holds the fully resolved options, so a run can be repeated
from its own output. Exit codes: 0 success, 2 invalid input, 3 experiment
precondition failure, 4 budget exhausted where an exact answer was required.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as hio
from .dendrogram import eta
from .errors import HCError, MetricError, NoBehaviorFlip
from .gromov_hausdorff import DEFAULT_GH_BUDGET, gh_exact, gh_greedy_upper, gh_lower_bound, gh_upper_from
from .linkage import BUILTIN_LINKAGES, CL, axiom_harness, get_linkage, run_standard
from .methods import METHOD_NAMES, get_method
from .metric import is_ultrametric
from .stability import (
    bridge_spec,
    cl_counterexample,
    cl_counterexample_value,
    gamma_spec,
    instability_scan,
    ordinary_check,
    prop_bridge_space,
    random_ultrametric,
    semistability_probe,
)

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4

PROBE_CSV_HEADER = ["level", "trial", "attempt", "gh", "lower", "upper", "exact", "input_gap_upper"]
PROBE_LEVEL_HEADER = ["level", "max_gh", "mean_gh", "all_exact", "monotone_trend"]
COUNTEREXAMPLE_HEADER = ["k", "n", "gh_upper_input", "delta_k", "u_cl_a2_b2", "closed_form", "gh_output", "gh_output_exact"]


class BudgetExhausted(Exception):
    pass


def _add_method_flags(p):
    p.add_argument("--method", choices=METHOD_NAMES, default="sl")
    p.add_argument("--alpha", type=float, default=None, help="alpha for sl-alpha")
    p.add_argument("--linkage", choices=sorted(BUILTIN_LINKAGES), default="sl", help="linkage for almost-standard")
    p.add_argument("--condition", default="always", help="'always' or 'p-alpha:<alpha>' for almost-standard")


def _method_from(args):
    return get_method(args.method, alpha=args.alpha, linkage=args.linkage, condition=args.condition)


def _read(path, args):
    return hio.read_matrix(path, tol=getattr(args, "tol", 0.0) or 0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcstab", description="Hierarchical clustering and GH stability experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a distance matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--out")

    p = sub.add_parser("cluster", help="cluster a distance matrix")
    p.add_argument("--input", required=True)
    _add_method_flags(p)
    p.add_argument("--format", choices=hio.DENDROGRAM_FORMATS, default="json")
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--out")

    p = sub.add_parser("gh", help="Gromov-Hausdorff distance between two matrices")
    p.add_argument("--input", required=True)
    p.add_argument("--input2", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_GH_BUDGET)
    p.add_argument("--bounds-only", action="store_true")
    p.add_argument("--require-exact", action="store_true", help="exit 4 if the budget runs out")
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--out")

    p = sub.add_parser("path-scan", help="search a path for an instability witness")
    p.add_argument("--input", help="base space; default is the built-in bridge space")
    p.add_argument("--block", help="comma-separated labels of B1 (B2 is the rest)")
    p.add_argument("--bridge-alpha", type=int, default=1, help="size parameter of the built-in bridge space")
    p.add_argument("--gap", type=float, default=1.0, help="extra cross distance of the built-in bridge space")
    p.add_argument("--path", choices=("bridge", "gamma"), default="bridge")
    p.add_argument("--R", type=float, default=None, help="target level for gamma paths")
    _add_method_flags(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--budget", type=int, default=DEFAULT_GH_BUDGET)
    p.add_argument("--out")

    p = sub.add_parser("counterexample", help="complete-linkage counterexample family")
    p.add_argument("--k-min", type=int, default=0)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--budget", type=int, default=DEFAULT_GH_BUDGET)
    p.add_argument("--exact-limit", type=int, default=10, help="largest size for exact output GH")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("probe", help="semi-stability probe around an ultrametric")
    p.add_argument("--input", help="reference ultrametric; default is a random one")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--depth", type=int, default=3)
    _add_method_flags(p)
    p.add_argument("--levels", default="0.1,0.05,0.025,0.0125")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_GH_BUDGET)
    p.add_argument("--format", choices=("json", "csv", "trials-csv"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("harness", help="randomized linkage axiom checks")
    p.add_argument("--linkage", choices=sorted(BUILTIN_LINKAGES), default="sl")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=None, help="also run the ordinary-method check for sl-alpha")
    p.add_argument("--out")
    return parser


# -- commands -----------------------------------------------------------------

def cmd_validate(args):
    M = _read(args.input, args)
    return {
        "valid": True,
        "n": len(M),
        "labels": list(M.labels),
        "diameter": M.diameter,
        "is_ultrametric": is_ultrametric(M),
    }


def cmd_cluster(args):
    M = _read(args.input, args)
    method = _method_from(args)
    theta, trace = method.run(M)
    body = hio.render_dendrogram(theta, args.format)
    if isinstance(body, str):
        return body
    rounds = [
        {
            "R": r.R,
            "case": r.case,
            "edges": [[sorted(a, key=M.index), sorted(b, key=M.index)] for a, b in r.edges],
            "partition": [sorted(b, key=M.index) for b in r.partition],
        }
        for r in trace.rounds
    ]
    return {"method": method.label, "dendrogram": body, "trace": rounds}


def cmd_gh(args):
    X, Y = _read(args.input, args), _read(args.input2, args)
    lower = gh_lower_bound(X, Y)
    if args.bounds_only:
        upper = gh_greedy_upper(X, Y)
        return {"value": None, "exact": False, "lower": lower, "upper": upper, "witness": None}
    res = gh_exact(X, Y, budget=args.budget)
    if args.require_exact and not res.exact:
        raise BudgetExhausted(f"GH search used its budget of {args.budget} nodes")
    return res.to_dict(X, Y)


def cmd_path_scan(args):
    if args.input:
        M = hio.read_matrix(args.input)  # --tol here is the bisection tolerance
        if not args.block:
            raise MetricError("--block is required with --input")
        B1 = frozenset(s.strip() for s in args.block.split(","))
        B2 = frozenset(M.labels) - B1
    else:
        M, B1, B2 = prop_bridge_space(args.bridge_alpha, args.gap)
    if args.path == "bridge":
        spec = bridge_spec(M, B1, B2)
    else:
        R = args.R if args.R is not None else get_linkage("sl")(B1, B2, M)
        spec = gamma_spec(M, B1, B2, R)
    w = instability_scan(_method_from(args), spec, tol=args.tol, gh_budget=args.budget)
    out = w.to_dict()
    out["path"] = spec.kind
    out["blocks"] = [sorted(b, key=M.index) for b in spec.blocks]
    out["bridge"] = list(spec.bridge) if spec.bridge else None
    return out


def cmd_counterexample(args):
    if args.k_min < 0 or args.k_max < args.k_min:
        raise MetricError("need 0 <= k-min <= k-max")
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        X, U, tau = cl_counterexample(k)
        u = eta(run_standard(X, CL)[0])
        if len(X) <= args.exact_limit:
            res = gh_exact(u, U, budget=args.budget)
            gh_out, exact = res.lower, res.exact
        else:
            gh_out, exact = gh_lower_bound(u, U), False
        rows.append({
            "k": k,
            "n": len(X),
            "gh_upper_input": gh_upper_from(tau, X, U),
            "delta_k": 1 / (k + 1),
            "u_cl_a2_b2": u.d("a_-2", "b_-2"),
            "closed_form": cl_counterexample_value(k),
            "gh_output": gh_out,
            "gh_output_exact": exact,
        })
    if args.format == "csv":
        return hio.rows_to_csv(COUNTEREXAMPLE_HEADER, rows)
    return {"rows": rows}


def cmd_probe(args):
    if args.input:
        U = _read(args.input, args)
    else:
        U = random_ultrametric(args.n, args.depth, args.seed)
    levels = [float(v) for v in args.levels.split(",") if v.strip()]
    method = _method_from(args)
    rep = semistability_probe(U, method, levels, trials=args.trials, seed=args.seed, gh_budget=args.budget)
    trend = [True] + [b <= a for a, b in zip(rep.max_gh, rep.max_gh[1:])]
    summary = [
        {"level": lv, "max_gh": mx, "mean_gh": mn, "all_exact": ex, "monotone_trend": tr}
        for lv, mx, mn, ex, tr in zip(rep.levels, rep.max_gh, rep.mean_gh, rep.all_exact, trend)
    ]
    if args.format == "csv":
        return hio.rows_to_csv(PROBE_LEVEL_HEADER, summary)
    if args.format == "trials-csv":
        return hio.rows_to_csv(PROBE_CSV_HEADER, rep.rows)
    out = rep.to_dict()
    out["summary"] = summary
    out["reference"] = hio.matrix_to_json_obj(U)
    return out


def cmd_harness(args):
    report = axiom_harness(get_linkage(args.linkage), trials=args.trials, seed=args.seed)
    out = report.to_dict()
    if args.alpha is not None:
        method = get_method("sl-alpha", alpha=args.alpha)
        out["ordinary"] = {f"delta={d},R={R}": ordinary_check(method, d, R) for d, R in ((0.5, 1.0), (1.0, 2.0), (0.25, 3.0))}
    return out


COMMANDS = {
    "validate": cmd_validate,
    "cluster": cmd_cluster,
    "gh": cmd_gh,
    "path-scan": cmd_path_scan,
    "counterexample": cmd_counterexample,
    "probe": cmd_probe,
    "harness": cmd_harness,
}


def _resolved_config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())}


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except NoBehaviorFlip as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExhausted as exc:
        print(f"BudgetExhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (HCError, ValueError, KeyError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if isinstance(result, str):
        _emit(result, args.out)
    else:
        _emit(hio.dumps({"config": _resolved_config(args), "result": result}), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
