"""Command-line interface: bounds, thresholds, oracle, gale, simulate, verify.

Exit codes: 0 success, 1 usage error, 2 computation error.  Every subcommand
prints its resolved configuration (seeds included) before computing, so a
printed run is a reproducible run.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction

from . import bounds as bm
from . import thresholds as th
from . import verify as verify_mod
from .bounds import BoundQuery, UnverifiedParityWarning, evaluate_query
from .convex_oracle import (contains_point, facets_bruteforce, gale_transform,
                            is_face, is_k_neighborly, read_cloud_csv,
                            write_cloud_csv)
from .experiments import (SUITE_COLUMNS, ExperimentConfig, run_experiment_suite,
                          suite_csv_text)
from .sampling import DistributionSpec
from .svgplot import line_plot


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors (argparse defaults to 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="randpoly",
                description="verification toolkit for the neighborliness of "
                            "random polytopes")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="evaluate an exact bound or count")
    b.add_argument("batch", nargs="?", default=None,
                   help="CSV of queries (formula_id,n,d,k,l,a_num,a_den,N)")
    b.add_argument("--formula", choices=bm.FORMULAS + ("entropy",))
    b.add_argument("--n", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--l", type=int)
    b.add_argument("--a", type=_fraction, help="depth in [0,1/2], e.g. 1/4 or 0.25")
    b.add_argument("--N", type=int, dest="count",
                   help="larger sample size for cyclic/limit formulas")
    b.add_argument("--out", default=None)

    t = sub.add_parser("thresholds", help="solve the threshold curves")
    t.add_argument("--alpha", type=float, help="single-point query")
    t.add_argument("--alpha-min", type=float, default=1.05)
    t.add_argument("--alpha-max", type=float, default=1.95)
    t.add_argument("--steps", type=int, default=90)
    t.add_argument("--tol", type=float, default=1e-12)
    t.add_argument("--delta", action="store_true",
                   help="append the delta-parameterized columns")
    t.add_argument("--out", default=None)
    t.add_argument("--plot", default=None, help="write an SVG of both curves")

    o = sub.add_parser("oracle", help="convex-position queries on a cloud CSV")
    o.add_argument("op", choices=("contains", "face", "facets", "neighborly"))
    o.add_argument("cloud", help="point-cloud CSV (header d=..,n=..,exact=..)")
    o.add_argument("payload", nargs="?", default=None,
                   help="point coords for contains, index list for face")
    o.add_argument("--k", type=int, help="neighborliness order")
    o.add_argument("--tol", type=float, default=1e-9)
    o.add_argument("--out", default=None)

    g = sub.add_parser("gale", help="Gale transform of an exact cloud CSV")
    g.add_argument("cloud")
    g.add_argument("--out", default=None)

    s = sub.add_parser("simulate", help="seeded Monte Carlo estimate vs exact bound")
    s.add_argument("--spec", required=True,
                   help="gaussian | ball:<radius> | mixture | cube")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, help="estimate P(k-neighborly)")
    s.add_argument("--l", type=int, help="estimate the l-face density")
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="run the shipped invariant suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100_000,
                   help="Monte Carlo trials for the large checks (full suite "
                        "uses 100000)")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--group", action="append", choices=verify_mod.GROUPS,
                   help="restrict to one or more groups")
    return p


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_value(value, note: str = "") -> str:
    if isinstance(value, Fraction):
        body = f"{value} ({float(value):.12f})"
    elif isinstance(value, int):
        body = str(value)
    else:
        body = f"{value:.12g}"
    return body + (f" [{note}]" if note else "")


def _cmd_bounds(args) -> int:
    if args.batch:
        print(f"config: command=bounds batch={args.batch} out={args.out}")
        lines = ["formula_id,n,d,k,l,a_num,a_den,N,value,value_decimal,note"]
        with open(args.batch, "r", encoding="utf-8") as fh:
            rows = [ln.strip() for ln in fh if ln.strip()]
        header = rows[0].lower().replace(" ", "")
        if header != "formula_id,n,d,k,l,a_num,a_den,n":
            raise ValueError(
                "batch header must be formula_id,n,d,k,l,a_num,a_den,N")
        for ln in rows[1:]:
            toks = [t.strip() for t in ln.split(",")]
            fid = toks[0]
            n, d = int(toks[1]), int(toks[2])
            k = int(toks[3]) if toks[3] else None
            ell = int(toks[4]) if toks[4] else None
            a = Fraction(int(toks[5]), int(toks[6])) if toks[5] and toks[6] else None
            count = int(toks[7]) if len(toks) > 7 and toks[7] else None
            query = BoundQuery(n=n, d=d, k=k, ell=ell, a=a, count=count)
            bv = evaluate_query(fid, query)
            dec = f"{float(bv.value):.12g}"
            lines.append(f"{ln},{bv.value},{dec},{bv.note}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    if not args.formula:
        raise SystemExit(_usage_error("bounds needs --formula or a batch CSV"))
    if args.formula == "entropy":
        if args.a is None:
            raise SystemExit(_usage_error("entropy needs --a"))
        print(f"config: command=bounds formula=entropy a={args.a}")
        print(f"{bm.binary_entropy(float(args.a)):.12f}")
        return 0
    if args.n is None or args.d is None:
        raise SystemExit(_usage_error(f"formula {args.formula} needs --n and --d"))
    query = BoundQuery(n=args.n, d=args.d, k=args.k, ell=args.l, a=args.a,
                       count=args.count)
    print(f"config: command=bounds formula={args.formula} n={args.n} d={args.d} "
          f"k={args.k} l={args.l} a={args.a} N={args.count}")
    bv = evaluate_query(args.formula, query)
    _emit(_format_value(bv.value, bv.note) + "\n", args.out)
    return 0


def _usage_error(msg: str) -> int:
    print(f"randpoly: error: {msg}", file=sys.stderr)
    return 1


def _cmd_thresholds(args) -> int:
    if args.alpha is not None:
        print(f"config: command=thresholds alpha={args.alpha} tol={args.tol}")
        pn = th.rho_N_prime(args.alpha, tol=args.tol)
        pd = th.rho_D_prime(args.alpha)
        print(f"rho_N_prime({args.alpha}) = {pn.beta:.12g}  "
              f"(residual {pn.residual:.2e})")
        print(f"rho_D_prime({args.alpha}) = {pd.beta:.12g}")
        return 0
    print(f"config: command=thresholds alpha_min={args.alpha_min} "
          f"alpha_max={args.alpha_max} steps={args.steps} tol={args.tol} "
          f"delta={args.delta} out={args.out} plot={args.plot}")
    pairs = th.threshold_curve(args.alpha_min, args.alpha_max, args.steps,
                               tol=args.tol)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            th.write_threshold_csv(pairs, fh, include_delta=args.delta)
        print(f"wrote {len(pairs)} rows to {args.out}")
    else:
        th.write_threshold_csv(pairs, sys.stdout, include_delta=args.delta)
    if args.plot:
        alphas = [pn.alpha for pn, _ in pairs]
        line_plot([("rho_N_prime", alphas, [pn.beta for pn, _ in pairs]),
                   ("rho_D_prime = 2 - alpha", alphas, [pd.beta for _, pd in pairs])],
                  args.plot, title="neighborliness and face-density thresholds",
                  xlabel="alpha (vertices per dimension)", ylabel="beta")
        print(f"wrote plot to {args.plot}")
    return 0


def _parse_indices(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",") if t.strip() != "")


def _cmd_oracle(args) -> int:
    cloud = read_cloud_csv(args.cloud)
    mode = "exact" if cloud.exact else "float"
    print(f"config: command=oracle op={args.op} cloud={args.cloud} "
          f"(d={cloud.dim}, n={cloud.n}, mode={mode}) tol={args.tol} k={args.k}")
    if args.op == "contains":
        if not args.payload:
            raise SystemExit(_usage_error("contains needs a point payload x,y,..."))
        if cloud.exact:
            point = tuple(Fraction(t) for t in args.payload.split(","))
        else:
            point = tuple(float(t) for t in args.payload.split(","))
        print(contains_point(cloud, point, tol=args.tol))
        return 0
    if args.op == "face":
        if not args.payload:
            raise SystemExit(_usage_error("face needs an index payload i,j,..."))
        subset = _parse_indices(args.payload)
        res = is_face(cloud, subset, tol=args.tol)
        if res.degenerate:
            print("degenerate (margin below tolerance)")
        else:
            print("face" if res.is_face else "not_face")
        if res.witness is not None:
            aff = {i: str(v) for i, v in sorted(res.witness.affine.items())}
            conv = {i: str(v) for i, v in sorted(res.witness.convex.items())}
            print(f"witness: affine={aff} convex={conv} "
                  f"point=({', '.join(str(c) for c in res.witness.point)})")
        return 0
    if args.op == "facets":
        facets = facets_bruteforce(cloud)
        for f in sorted(tuple(sorted(fs)) for fs in facets):
            print(",".join(str(i) for i in f))
        print(f"{len(facets)} facets")
        return 0
    if args.k is None:
        raise SystemExit(_usage_error("neighborly needs --k"))
    verdict = is_k_neighborly(cloud, args.k, tol=args.tol)
    print(f"{args.k}-neighborly: {verdict}")
    return 0


def _cmd_gale(args) -> int:
    cloud = read_cloud_csv(args.cloud)
    print(f"config: command=gale cloud={args.cloud} (d={cloud.dim}, n={cloud.n})")
    dual = gale_transform(cloud)
    if args.out:
        write_cloud_csv(dual, args.out)
        print(f"wrote dual cloud (d={dual.dim}, n={dual.n}) to {args.out}")
    else:
        write_cloud_csv(dual, sys.stdout)
    return 0


def _cmd_simulate(args) -> int:
    spec = DistributionSpec.parse(args.spec, args.d)
    if args.k is not None and args.l is not None:
        raise SystemExit(_usage_error("give at most one of --k and --l"))
    if args.k is not None:
        target, param = "neighborliness", args.k
    elif args.l is not None:
        target, param = "face_density", args.l
    else:
        target, param = "containment", None
    config = ExperimentConfig(spec=spec, n=args.n, d=args.d, target=target,
                              param=param, trials=args.trials, seed=args.seed,
                              tol=args.tol)
    print(f"config: command=simulate spec={spec.describe()} d={args.d} n={args.n} "
          f"target={target} param={param} trials={args.trials} seed={args.seed} "
          f"workers={args.workers} tol={args.tol}")
    rows = run_experiment_suite([config], workers=args.workers)
    text = suite_csv_text(rows)
    _emit(text, args.out)
    if args.out:
        print(f"wrote results to {args.out}")
    err = rows[0][SUITE_COLUMNS.index("error")]
    if err:
        print(f"computation error: {err}", file=sys.stderr)
        return 2
    return 0


def _cmd_verify(args) -> int:
    scale = args.trials / 100_000
    print(f"config: command=verify seed={args.seed} trials={args.trials} "
          f"(scale {scale:g}) workers={args.workers} "
          f"groups={args.group or 'all'}")
    results = verify_mod.run_all(seed=args.seed, trials_scale=scale,
                                 workers=args.workers, groups=args.group)
    failures = 0
    for group in verify_mod.GROUPS:
        group_results = [r for r in results if r.group == group]
        if not group_results:
            continue
        ok = all(r.passed for r in group_results)
        print(f"[{'PASS' if ok else 'FAIL'}] {group}")
        for r in group_results:
            mark = "ok" if r.passed else "FAIL"
            detail = f"  ({r.detail})" if r.detail else ""
            print(f"    {mark:4s} {r.name}{detail}")
        if not ok:
            failures += 1
    print(f"{len(results)} checks, "
          f"{sum(1 for r in results if not r.passed)} failures")
    return 0 if failures == 0 else 2


_HANDLERS = {
    "bounds": _cmd_bounds,
    "thresholds": _cmd_thresholds,
    "oracle": _cmd_oracle,
    "gale": _cmd_gale,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", UnverifiedParityWarning)
            return _HANDLERS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - map any computation failure to exit 2
        print(f"randpoly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
