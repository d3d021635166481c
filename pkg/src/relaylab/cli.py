"""Command-line front end.

Subcommands: ``rate`` (single-point achievable rates and bounds), ``sweep``
(curve families to CSV), ``ebit`` (energy-per-bit bounds), ``figure``
(preset data sets for the six reference figures), ``verify`` (consistency
checks on an emitted CSV).  Exit codes: 0 success, 2 usage error, 3
infeasible, 4 convergence failure, 1 failed verification.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .errors import ConvergenceError, DomainError, InfeasibleError, OptimizerError
from .network import NetworkConfig, normalize
from . import bounds, energy, schemes, sweep

_CONFIG_KEYS = ("seed", "points", "x_min", "x_max", "threads", "out")


def _parse_gains(text: str):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise DomainError(f"expected comma-separated reals, got {text!r}") from None


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"config line is not key=value: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise DomainError(f"unknown config key {key!r}")
            out[key] = value
    return out


def _apply_config(args) -> None:
    if not getattr(args, "config", None):
        return
    cfg = _load_config(args.config)
    casts = {"seed": int, "points": int, "x_min": float, "x_max": float,
             "threads": int, "out": str}
    for key, raw in cfg.items():
        if key == "threads":
            os.environ.setdefault("RELAYLAB_THREADS", raw)
            continue
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, casts[key](raw))


def _build_net(args):
    g = _parse_gains(args.g)
    h = _parse_gains(args.h)
    pr = _parse_gains(args.pr) if args.pr else 1.0
    config = NetworkConfig(g, h, p_source=args.ps, p_relay=pr, n0=args.n0)
    return normalize(config)


def cmd_rate(args) -> int:
    net = _build_net(args)
    seed = args.seed if args.seed is not None else 0
    scheme = args.scheme
    if scheme == "cutset":
        res = bounds.cutset_diamond(net)
        print(f"{res.bound_bits:.6f} bits")
        print(f"rho_star: {res.rho_star:.9f}")
        print(f"active_cut: {res.active_cut}")
        return 0
    dispatch = {
        "df": lambda: schemes.rate_df(net),
        "af": lambda: schemes.rate_af(net, seed=seed),
        "baf": lambda: schemes.rate_baf(net, seed=seed),
        "bspdf": lambda: schemes.rate_bspdf_opt(net, seed=seed),
        "tspdf": lambda: schemes.rate_tspdf_opt(net, seed=seed),
    }
    if scheme not in dispatch:
        raise DomainError(f"unknown scheme {scheme!r}")
    res = dispatch[scheme]()
    print(f"{res.rate_bits:.6f} bits")
    if res.rate_split is not None:
        print(f"rate_split: R1={res.rate_split[0]:.6f} R2={res.rate_split[1]:.6f}")
    if res.params:
        print(f"params: {res.params}")
    if res.active_constraints:
        print(f"active_constraints: {', '.join(res.active_constraints)}")
    if res.boundary:
        print("supremum_on_boundary: true")
    return 0


def _sweep_job_from_args(args) -> sweep.SweepJob:
    return sweep.SweepJob(
        family=args.family,
        schemes=tuple(args.schemes.split(",")),
        x_min=args.x_min if args.x_min is not None else 1e-2,
        x_max=args.x_max if args.x_max is not None else 1e2,
        points=args.points if args.points is not None else 81,
        log=not args.linear,
        n_relays=tuple(int(v) for v in args.n.split(",")) if args.n else (2,),
        seed=args.seed if args.seed is not None else 0,
    )


def cmd_sweep(args) -> int:
    job = _sweep_job_from_args(args)
    points = sweep.run_sweep(job)
    out = args.out or "sweep.csv"
    sweep.write_csv(points, out)
    print(f"wrote {len(points)} rows to {out}")
    return 0


def cmd_figure(args) -> int:
    job = sweep.figure_job(
        args.figure,
        seed=args.seed if args.seed is not None else 0,
        points=args.points if args.points is not None else 81,
        x_min=args.x_min if args.x_min is not None else 1e-2,
        x_max=args.x_max if args.x_max is not None else 1e2,
    )
    points = sweep.run_sweep(job)
    out = args.out or f"{args.figure}.csv"
    sweep.write_csv(points, out)
    print(f"wrote {len(points)} rows to {out}")
    return 0


def cmd_ebit(args) -> int:
    g = float(args.g)
    h = float(args.h)
    seed = args.seed if args.seed is not None else 0
    report = energy.ebit_report(g, h, n0=args.n0, seed=seed)
    print(f"lower: {report.lower:.9f} J/bit")
    for name in ("df", "baf", "bspdf"):
        upper = getattr(report, f"upper_{name}")
        print(
            f"{name}: upper={upper:.9f} J/bit ratio={report.ratios[name]:.6f} "
            f"gamma_star={report.gamma_star[name]:.6g}"
        )
    if args.out:
        rows = [
            sweep.CurvePoint(h / g, report.ratios[name], name,
                             {"gamma_star": report.gamma_star[name]})
            for name in ("df", "baf", "bspdf")
        ]
        sweep.write_csv(rows, args.out)
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_verify(args) -> int:
    points = sweep.read_csv(args.csv)
    if not points:
        print("verify: empty CSV", file=sys.stderr)
        return 1
    by_x: dict[tuple, dict[str, float]] = {}
    for p in points:
        group = "n2"
        if "_n" in p.scheme:
            group = p.scheme.rsplit("_n", 1)[1]
        by_x.setdefault((p.x, group), {})[p.scheme] = p.y
    schemes_seen = {p.scheme for p in points}
    has_cutset = any(s.startswith("cutset") for s in schemes_seen)
    failures = []
    if has_cutset:
        for (x, group), rows in sorted(by_x.items()):
            cut = None
            for name, y in rows.items():
                if name.startswith("cutset"):
                    cut = y
            if cut is None:
                continue
            for name, y in rows.items():
                if not name.startswith("cutset") and y > cut + 1e-6:
                    failures.append(f"x={x:g} {name}={y!r} exceeds cutset={cut!r}")
        kind = "cutset domination"
    elif schemes_seen <= {"df", "baf", "bspdf"}:
        for p in points:
            if p.y < 1.0 - 1e-9:
                failures.append(f"x={p.x:g} {p.scheme} ratio {p.y!r} < 1")
        kind = "energy ratio >= 1"
    else:
        print("verify: no cutset rows and not an energy-ratio CSV", file=sys.stderr)
        return 1
    if failures:
        for line in failures:
            print(f"FAIL {line}", file=sys.stderr)
        return 1
    print(f"verify: {kind} holds for {len(points)} rows")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaylab",
        description="Achievable rates, cut-set bounds and energy-per-bit "
        "limits for Gaussian parallel relay networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--config", help="key=value file overriding defaults")

    p_rate = sub.add_parser("rate", help="single-point rate or bound")
    p_rate.add_argument("--scheme", required=True,
                        help="df|af|baf|bspdf|tspdf|cutset")
    p_rate.add_argument("--g", required=True, help="comma-separated power gains")
    p_rate.add_argument("--h", required=True, help="comma-separated power gains")
    p_rate.add_argument("--ps", type=float, default=1.0, help="source power bound")
    p_rate.add_argument("--pr", default=None, help="relay power bound(s)")
    p_rate.add_argument("--n0", type=float, default=1.0, help="noise variance")
    common(p_rate)
    p_rate.set_defaults(func=cmd_rate)

    p_sweep = sub.add_parser("sweep", help="curve sweep to CSV")
    p_sweep.add_argument("--family", required=True, help="sym2|symN|asym2|energy")
    p_sweep.add_argument("--schemes", required=True, help="comma-separated labels")
    p_sweep.add_argument("--x-min", dest="x_min", type=float, default=None)
    p_sweep.add_argument("--x-max", dest="x_max", type=float, default=None)
    p_sweep.add_argument("--points", type=int, default=None)
    spacing = p_sweep.add_mutually_exclusive_group()
    spacing.add_argument("--log", action="store_true",
                         help="log-spaced x grid (the default)")
    spacing.add_argument("--linear", action="store_true",
                         help="linear x grid")
    p_sweep.add_argument("--n", default=None, help="relay counts for symN, e.g. 2,4,8")
    p_sweep.add_argument("--out", default=None)
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_fig = sub.add_parser("figure", help="preset figure data to CSV")
    p_fig.add_argument("figure", help="fig3|fig4|fig5|fig6|fig7|fig8")
    p_fig.add_argument("--x-min", dest="x_min", type=float, default=None)
    p_fig.add_argument("--x-max", dest="x_max", type=float, default=None)
    p_fig.add_argument("--points", type=int, default=None)
    p_fig.add_argument("--out", default=None)
    common(p_fig)
    p_fig.set_defaults(func=cmd_figure)

    p_ebit = sub.add_parser("ebit", help="energy-per-bit bounds")
    p_ebit.add_argument("--g", required=True, type=float)
    p_ebit.add_argument("--h", required=True, type=float)
    p_ebit.add_argument("--n0", type=float, default=1.0)
    p_ebit.add_argument("--out", default=None)
    common(p_ebit)
    p_ebit.set_defaults(func=cmd_ebit)

    p_verify = sub.add_parser("verify", help="check an emitted CSV")
    p_verify.add_argument("csv")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (ConvergenceError, OptimizerError) as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
