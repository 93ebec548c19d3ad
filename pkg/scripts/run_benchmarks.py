#!/usr/bin/env python3
"""Reproduce the benchmark tables at desk scale and write all CSVs.

Runs the roadmap-length experiments (empty box, RRT k=1 and PRM k=5, plus
the analysis-facing greedy-tree comparison) and the planning experiments
(wall_with_hole with RRT in both nf modes and with cobweb-RRG), all on
paired seed lists.  Expect a few minutes of runtime at the default sizes.
"""

import argparse
from pathlib import Path

from swathnn.experiments import ExperimentConfig, run_planning, run_roadmap_length


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out/bench")
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--base-seed", type=int, default=20240)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    length_runs = [
        ("rrt", 1, {"max_iterations": 300, "cd_resolution": 0.02}),
        ("prm", 5, {"prm_node_target": 150, "cd_resolution": 0.02}),
        ("greedy", 0, {"greedy_n": 1000}),
    ]
    for planner, k, params in length_runs:
        path = out / f"roadmap_length_{planner}_k{k}.csv"
        cfg = ExperimentConfig(
            scene="empty_box",
            scene_kwargs={"d": 3, "t": 3, "r": 0},
            planner=planner,
            k=k,
            n_seeds=args.seeds,
            base_seed=args.base_seed,
            out=str(path),
            params=params,
        )
        rows = run_roadmap_length(cfg)
        means = {r[2]: r[5] for r in rows if r[3] == "mean"}
        print(f"{path}: means {({k: round(v, 1) for k, v in means.items()})}")

    planning_runs = [
        ("rrt", "wall_with_hole", {"clearance": 1.3}),
        ("cobweb", "wall_with_hole", {"clearance": 1.3}),
        ("rrt", "z_corridor", {}),
        ("cobweb", "z_corridor", {}),  # side-by-side with rrt edge mode
    ]
    for planner, scene, scene_kwargs in planning_runs:
        path = out / f"planning_{scene}_{planner}.csv"
        cfg = ExperimentConfig(
            scene=scene,
            scene_kwargs=scene_kwargs,
            planner=planner,
            k=5 if planner == "cobweb" else 1,
            n_seeds=args.seeds,
            base_seed=args.base_seed,
            out=str(path),
            params={"max_iterations": 15_000, "cd_resolution": 0.05},
        )
        run_planning(cfg)
        print(f"{path}: done")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
