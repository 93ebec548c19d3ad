"""Command-line entry point.

Subcommands:

* ``knn-selftest``      -- randomized index-vs-linear-scan comparison
* ``bench-roadmap-length`` -- empty-box roadmap growth, paired seeds
* ``bench-planning``    -- planning tasks in named scenes, paired seeds
* ``verify-theory``     -- sphere constants, scaling exponents, dominance
* ``heatmap``           -- distance-field grid of a saved roadmap

Exit codes: 0 success, 2 a verification/acceptance-style check failed,
1 usage or runtime error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .cspace import SpaceSignature, geodesic, normalize
from .experiments import (
    ExperimentConfig,
    heatmap_grid,
    run_planning,
    run_roadmap_length,
    write_csv,
    write_heatmap_csv,
)
from .roadmap import Roadmap
from .segment_tree import SegmentTree, TreeParams
from .theory import check_sphere_constant, dominance_check, verify_scaling


def _parse_kv(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs or []:
        key, _, val = pair.partition("=")
        if not _ or not key:
            raise SystemExit(f"expected key=value, got {pair!r}")
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = float(val)
            except ValueError:
                out[key] = val
    return out


def _cmd_knn_selftest(args) -> int:
    from .cspace import batch_oracle_dist_to_pieces, split_segment

    rng = np.random.default_rng(args.seed)
    signatures = [SpaceSignature(0, 2), SpaceSignature(2, 1), SpaceSignature(1, 2)]
    worst = 0.0
    mismatches = 0
    for g in range(args.graphs):
        sig = signatures[g % len(signatures)]
        segs = []
        for i in range(args.edges):
            a = normalize(rng.random(sig.d), sig)
            b = normalize(rng.random(sig.d), sig)
            segs.append((i, geodesic(a, b)))
        tree = SegmentTree.build(segs, TreeParams(epsilon=args.epsilon), sig)
        pieces = []
        owner = []
        for eid, s in segs:
            for p in split_segment(s):
                pieces.append(p)
                owner.append(eid)
        A = np.array([p.a for p in pieces])
        B = np.array([p.b for p in pieces])
        for _ in range(args.queries):
            q = normalize(rng.random(sig.d), sig)
            got = tree.knn(q, args.k)
            dist, _ = batch_oracle_dist_to_pieces(q, A, B)
            best: dict = {}
            for d, eid in zip(dist, owner):
                if eid not in best or d < best[eid]:
                    best[eid] = d
            want = sorted((d, eid) for eid, d in best.items())[: args.k]
            for n, (d, eid) in zip(got, want):
                gap = n.distance - (1.0 + args.epsilon) * d
                worst = max(worst, n.distance - d)
                if gap > 1e-9:
                    mismatches += 1
            if args.epsilon == 0.0 and [n.edge_id for n in got] != [e for _, e in want]:
                mismatches += 1
    print(
        f"knn-selftest: {args.graphs} graphs x {args.queries} queries, "
        f"k={args.k}, epsilon={args.epsilon}: "
        f"{'OK' if mismatches == 0 else 'FAIL'} "
        f"(mismatches={mismatches}, worst overshoot={worst:.3e})"
    )
    return 0 if mismatches == 0 else 2


def _cmd_bench_roadmap_length(args) -> int:
    config = ExperimentConfig(
        scene="empty_box",
        scene_kwargs={"d": args.t + args.r, "t": args.t, "r": args.r, "side": args.side},
        planner=args.planner,
        nf_modes=tuple(args.nf.split(",")),
        k=args.k,
        n_seeds=args.seeds,
        base_seed=args.base_seed,
        epsilon=args.epsilon,
        out=args.out,
        params=_parse_kv(args.param),
    )
    rows = run_roadmap_length(config)
    means = {(r[2]): r[5] for r in rows if r[3] == "mean"}
    print(f"bench-roadmap-length: wrote {args.out} ({len(rows)} rows)")
    for nf, length in sorted(means.items()):
        print(f"  mean total_length[{nf}] = {length:.3f}")
    return 0


def _cmd_bench_planning(args) -> int:
    config = ExperimentConfig(
        scene=args.scene,
        scene_kwargs=_parse_kv(args.scene_arg),
        planner=args.planner,
        nf_modes=tuple(args.nf.split(",")),
        k=args.k,
        n_seeds=args.seeds,
        base_seed=args.base_seed,
        epsilon=args.epsilon,
        out=args.out,
        params=_parse_kv(args.param),
    )
    rows = run_planning(config)
    print(f"bench-planning: wrote {args.out} ({len(rows)} rows)")
    by_mode: dict = {}
    for row in rows:
        by_mode.setdefault(row[2], []).append(row)
    for nf, grp in sorted(by_mode.items()):
        solved = sum(r[6] for r in grp)
        mean_cd = np.mean([r[4] for r in grp])
        mean_it = np.mean([r[5] for r in grp])
        print(
            f"  {nf}: solved {solved}/{len(grp)}, "
            f"mean cd_calls={mean_cd:.0f}, mean iterations={mean_it:.1f}"
        )
    return 0


def _cmd_verify_theory(args) -> int:
    ok = True
    print("sphere constants (closed form vs Monte Carlo):")
    for d in args.d:
        chk = check_sphere_constant(d, args.samples, seed=args.base_seed + d)
        ok = ok and chk.agrees and chk.delta_below_one
        bound = f", reported odd-d bound {chk.delta_bound_odd:.4f}" if chk.delta_bound_odd else ""
        print(
            f"  d={d}: F_closed={chk.f_closed:.6f} F_mc={chk.f_mc:.6f} "
            f"(stderr {chk.stderr:.2e}) Delta={chk.delta:.6f} "
            f"{'OK' if chk.agrees and chk.delta_below_one else 'FAIL'}{bound}"
        )
    scaling_rows = []
    if not args.skip_scaling:
        print("greedy-tree scaling (log-log slope of total length):")
        targets = {2: (0.45, 0.55), 3: (0.61, 0.72)}
        for d in args.scaling_d:
            grid = [int(args.scaling_nmax * f) for f in (0.1, 0.2, 0.4, 0.7, 1.0)]
            fit = verify_scaling(d, grid, args.scaling_seeds, args.base_seed)
            lo, hi = targets.get(d, (-np.inf, np.inf))
            good = lo <= fit.slope <= hi
            ok = ok and good
            print(
                f"  d={d}: slope={fit.slope:.4f} ci=({fit.ci_lo:.4f}, {fit.ci_hi:.4f}) "
                f"target=[{lo}, {hi}] {'OK' if good else 'FAIL'}"
            )
            for n, total in zip(fit.n_grid, fit.mean_totals):
                scaling_rows.append([d, n, total, fit.slope, fit.ci_lo, fit.ci_hi])
    if not args.skip_dominance:
        print("connector dominance (shared sequences):")
        for d in args.dominance_d:
            rep = dominance_check(d, args.dominance_n, args.dominance_seeds, args.base_seed)
            good = rep.all_dominated and rep.mean_ratio < 1.0
            ok = ok and good
            print(
                f"  d={d}: stepwise holds {rep.seeds_all_dominated}/{rep.n_seeds} seeds, "
                f"mean length ratio {rep.mean_ratio:.4f} {'OK' if good else 'FAIL'}"
            )
    if args.out and scaling_rows:
        write_csv(
            args.out,
            ("d", "n", "mean_total_length", "slope", "ci_lo", "ci_hi"),
            scaling_rows,
        )
        print(f"wrote scaling curve to {args.out}")
    return 0 if ok else 2


def _cmd_heatmap(args) -> int:
    with open(args.roadmap) as fh:
        rm = Roadmap.load(fh)
    xs, ys, grid = heatmap_grid(rm, args.resolution, args.mode)
    write_heatmap_csv(args.out, xs, ys, grid, args.mode)
    print(f"heatmap: wrote {args.out} ({args.resolution}x{args.resolution}, {args.mode})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swathnn", description="edge-NN motion planning toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("knn-selftest", help="index vs linear-scan comparison")
    p.add_argument("--graphs", type=int, default=10)
    p.add_argument("--edges", type=int, default=150)
    p.add_argument("--queries", type=int, default=40)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_knn_selftest)

    p = sub.add_parser("bench-roadmap-length", help="empty-box roadmap growth")
    p.add_argument("--planner", choices=("rrt", "prm", "greedy"), default="prm")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--side", type=float, default=10.0)
    p.add_argument("--nf", default="edge,vertex")
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--base-seed", type=int, default=20240)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--param", action="append", help="PlannerParams override key=value")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench_roadmap_length)

    p = sub.add_parser("bench-planning", help="planning tasks, paired seeds")
    p.add_argument("--scene", default="wall_with_hole")
    p.add_argument("--scene-arg", action="append", help="scene parameter key=value")
    p.add_argument("--planner", choices=("rrt", "prm", "cobweb"), default="rrt")
    p.add_argument("--nf", default="edge,vertex")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--base-seed", type=int, default=20240)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--param", action="append", help="PlannerParams override key=value")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench_planning)

    p = sub.add_parser("verify-theory", help="sphere constants, scaling, dominance")
    p.add_argument("--d", type=int, nargs="+", default=[2, 3, 5, 8])
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--scaling-d", type=int, nargs="+", default=[2, 3])
    p.add_argument("--scaling-nmax", type=int, default=20_000)
    p.add_argument("--scaling-seeds", type=int, default=30)
    p.add_argument("--skip-scaling", action="store_true")
    p.add_argument("--dominance-d", type=int, nargs="+", default=[2, 3])
    p.add_argument("--dominance-n", type=int, default=5000)
    p.add_argument("--dominance-seeds", type=int, default=50)
    p.add_argument("--skip-dominance", action="store_true")
    p.add_argument("--out", help="scaling curve CSV for the plotting scripts")
    p.set_defaults(func=_cmd_verify_theory)

    p = sub.add_parser("heatmap", help="distance-field grid of a saved roadmap")
    p.add_argument("--roadmap", required=True)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--mode", choices=("vertices", "swath"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_heatmap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
