"""Command line interface: ``gausscub <command> ...``."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import bench
from .digital_net import MAX_DEPTH, interlace, load_direction_numbers, net_points
from .fooling import (
    fit_loglog_slope,
    fooling_function,
    fooling_integral,
    fooling_norm,
    sparse_grid_fooling,
)
from .gauss_hermite import gauss_hermite_rule
from .integrands import CatalogError, catalog, get_integrand
from .lattice import KorobovParams, cached_cbc, cbc_construct, is_prime
from .sparse_grid import SCHEDULES, isotropic_index_set, level_size, smolyak_quadrature, total_points

log = logging.getLogger("gausscub")


def _cmd_nodes(args):
    rule = gauss_hermite_rule(args.n)
    for x, w in zip(rule.nodes, rule.weights):
        print(f"{x:.17g},{w:.17g}")


def _cmd_sg_integrate(args):
    schedule = SCHEDULES[args.schedule]
    d, L = args.d, args.L
    if L >= d and level_size(L - d + 1, schedule) < math.exp(d - 1):
        log.warning(
            "n_(L-d+1) = %d < e^(d-1); the isotropic lower bound assumes otherwise",
            level_size(L - d + 1, schedule),
        )
    f = get_integrand(args.integrand, d, args.a)
    if L < d:
        value, n = 0.0, 0
    else:
        index_set = isotropic_index_set(d, L)
        value = smolyak_quadrature(f, index_set, schedule)
        n = total_points(index_set, schedule)
    print(f"{n},{value:.17g},{abs(value - f.exact_value):.17g}")


def _cmd_cbc(args):
    if not is_prime(args.N):
        raise SystemExit(f"error: N={args.N} is not prime")
    if args.no_cache:
        vec, wce = cbc_construct(args.N, args.d, KorobovParams(alpha=args.alpha))
    else:
        vec, wce = cached_cbc(args.N, args.d, args.alpha, directory=args.cache_dir)
    print(",".join(map(str, vec.z)))
    print(f"{wce:.17g}")


def _cmd_net(args):
    if args.order * args.m > MAX_DEPTH and not args.truncate:
        raise SystemExit(f"error: order*m = {args.order * args.m} exceeds {MAX_DEPTH} digits")
    base = load_direction_numbers(args.table, m=args.m, d=args.order * args.d)
    G = interlace(base, args.order, max_depth=MAX_DEPTH if args.truncate else None)
    out = sys.stdout
    for row in net_points(G):
        out.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _qmc_size(args):
    if args.N is not None:
        return args.N
    if args.method.endswith("net"):
        return 1 << args.m
    # largest prime below 2^m
    n = (1 << args.m) - 1
    while not is_prime(n):
        n -= 1
    return n


def _cmd_qmc_integrate(args):
    f = get_integrand(args.integrand, args.d, args.a)
    n, value = bench.method_value(
        args.method, f, args.d, args.alpha, _qmc_size(args), cache_dir=args.cache_dir
    )
    print(f"{n},{value:.17g},{abs(value - f.exact_value):.17g}")


def _cmd_foolcheck(args):
    if args.verify_annihilation:
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for n in (2, 3, 8, 33, 128):
            rule = gauss_hermite_rule(n)
            values = fooling_function(n, args.alpha)(rule.nodes)
            for _ in range(100):
                w = rng.standard_normal(n)
                worst = max(worst, abs(float(w @ values)))
        ok = worst == 0.0
        print(f"max |Q(p_n)| over random weights = {worst:.3g}: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1

    print("n,integral,norm,ratio")
    ns, ratios = [], []
    n = 2
    while n <= args.nmax:
        F = fooling_function(n, args.alpha)
        integral, norm = fooling_integral(F), fooling_norm(F).total
        print(f"{n},{integral:.17g},{norm:.17g},{integral / norm:.17g}")
        ns.append(n)
        ratios.append(integral / norm)
        n *= 2
    tail = [(n, r) for n, r in zip(ns, ratios) if n >= 16]
    if len(tail) >= 2:
        print(f"# slope={fit_loglog_slope(*zip(*tail)):.6f} (n >= 16)")
    elif len(ns) >= 2:
        print(f"# slope={fit_loglog_slope(ns, ratios):.6f}")
    if args.d > 1:
        worst = 0.0
        for k in range(1, int(math.log2(min(args.nmax, 256))) + 1):
            index_set = isotropic_index_set(args.d, k + args.d)
            h, _ = sparse_grid_fooling(index_set, args.alpha)
            worst = max(worst, abs(smolyak_quadrature(h, index_set)))
        print(f"# d={args.d} max |S_Lambda(h_Lambda)| = {worst:.3g}")
    return 0


def _cmd_integrands(args):
    for item in catalog(args.d, args.a):
        print(f"{item.name}\t{item.d}\t{item.exact_value:.17g}\t{item.smoothness}")


def _read_config(path):
    values = {}
    for no, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SystemExit(f"error: {path}:{no}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


_BENCH_DEFAULTS = {
    "methods": ",".join(bench.METHODS),
    "d": "2",
    "alpha": "2",
    "integrand": "spline(2)",
    "out": "bench_out",
    "a": "1.0",
    "cache_dir": None,
    "record_time": "false",
}


def _cmd_bench(args):
    merged = dict(_BENCH_DEFAULTS)
    if args.config:
        config = _read_config(args.config)
        unknown = set(config) - set(merged)
        if unknown:
            raise SystemExit(f"error: unknown config keys {sorted(unknown)}")
        merged.update(config)
    for key in merged:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    d, alpha = int(merged["d"]), int(merged["alpha"])
    record_time = str(merged["record_time"]).lower() in ("1", "true", "yes")
    f = get_integrand(merged["integrand"], d, float(merged["a"]))
    methods = [m.strip() for m in str(merged["methods"]).split(",") if m.strip()]
    records, fits = [], {}
    for method in methods:
        sweep = bench.converge_sweep(
            method, f, d, alpha, cache_dir=merged["cache_dir"], record_time=record_time
        )
        records.extend(sweep)
        try:
            fits[method] = bench.fit_rate(sweep)
        except bench.FitError as exc:
            log.warning("%s: %s", method, exc)
    for path in bench.emit_outputs(records, fits, merged["out"]):
        print(path)
    for method in sorted(fits):
        print(f"# {method} slope={fits[method].slope:.4f} r2={fits[method].r_squared:.3f}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="gausscub", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nodes", help="print Gauss-Hermite nodes and weights")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_nodes)

    p = sub.add_parser("sg-integrate", help="sparse-grid Gauss-Hermite integration")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--integrand", required=True)
    p.add_argument("--schedule", choices=sorted(SCHEDULES), default="pow2")
    p.add_argument("--a", type=float, default=1.0)
    p.set_defaults(func=_cmd_sg_integrate)

    p = sub.add_parser("cbc", help="CBC generating vector for a prime N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=int, choices=(1, 2), required=True)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=_cmd_cbc)

    p = sub.add_parser("net", help="stream interlaced Sobol' net points as CSV")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--table", default=None, help="direction-number file (default: bundled)")
    p.add_argument("--truncate", action="store_true", help="keep 64 digits when order*m > 64")
    p.set_defaults(func=_cmd_net)

    p = sub.add_parser("qmc-integrate", help="QMC integration with affine or cotangent map")
    p.add_argument("--method", choices=bench.METHODS[1:], required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, default=None, help="explicit point count")
    p.add_argument("--integrand", required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_qmc_integrate)

    p = sub.add_parser("foolcheck", help="fooling-function ratio study")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--nmax", type=int, default=2048)
    p.add_argument("--verify-annihilation", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_foolcheck)

    p = sub.add_parser("integrands", help="integrand catalog")
    p.add_argument("action", choices=("list",))
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--a", type=float, default=1.0)
    p.set_defaults(func=_cmd_integrands)

    p = sub.add_parser("bench", help="convergence sweeps, fits, CSV and plot script")
    p.add_argument("--config", default=None, help="file of 'key = value' lines")
    p.add_argument("--methods", default=None)
    p.add_argument("--d", default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--integrand", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--record-time", action="store_const", const="true", default=None)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args) or 0
    except (CatalogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
