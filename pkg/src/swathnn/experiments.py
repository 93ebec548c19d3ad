"""Experiment drivers: paired-seed benchmark runs with deterministic CSV output.

Two experiment families mirror the benchmark setup:

* roadmap length: planners grow roadmaps of a fixed size in obstacle-free
  boxes; the comparison is total edge length (and CD calls) between the two
  neighborhood-finder modes on identical seed lists.
* planning: motion-planning tasks in named scenes; the comparison is CD
  calls and iterations to solve, again on paired seeds.

Every run in a file reuses one seed list across nf modes, so rows pair up
into head-to-head comparisons on identical sample sequences.  CSV output is
byte-reproducible from (config, seeds): floats are written with repr and
row order is fixed.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .cspace import (
    SpaceSignature,
    batch_dist_points_to_piece,
    batch_dist_to_point,
    normalize,
    split_segment,
)
from .greedy_tree import build_geometric_tree
from .planners import PlannerParams, cobweb_rrg, prm, rrt
from .roadmap import Roadmap
from .scenes import Scene, builtin_scene, load_scene
from .segment_tree import TreeParams

PLANNING_HEADER = (
    "scene",
    "planner",
    "nf_mode",
    "seed",
    "cd_calls",
    "iterations",
    "solved",
    "roadmap_length",
)
ROADMAP_LENGTH_HEADER = ("signature", "k", "nf_mode", "seed", "cd_calls", "total_length")


@dataclass
class ExperimentConfig:
    scene: str = "empty_box"  # builtin name or path to a scene JSON file
    scene_kwargs: dict = field(default_factory=dict)
    planner: str = "rrt"  # rrt | prm | cobweb | greedy
    nf_modes: tuple[str, ...] = ("edge", "vertex")
    k: int = 1
    n_seeds: int = 50
    base_seed: int = 20240
    epsilon: float = 0.05
    out: Optional[str] = None
    params: dict = field(default_factory=dict)  # PlannerParams field overrides


def make_seeds(base_seed: int, n: int) -> list[int]:
    """One seed list per experiment, shared verbatim by every nf mode."""
    rng = np.random.default_rng(base_seed)
    return [int(s) for s in rng.integers(0, 2**62, size=n)]


def resolve_scene(config: ExperimentConfig) -> Scene:
    if config.scene.endswith(".json") or "/" in config.scene:
        return load_scene(config.scene)
    return builtin_scene(config.scene, **config.scene_kwargs)


def planner_params(config: ExperimentConfig, seed: int, **extra) -> PlannerParams:
    fields = {
        "seed": seed,
        "k": config.k,
        "tree_params": TreeParams(epsilon=config.epsilon),
    }
    fields.update(config.params)
    fields.update(extra)
    return PlannerParams(**fields)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(float(x))  # plain repr even for numpy scalar subclasses
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def run_planning(config: ExperimentConfig) -> list[list]:
    """Paired-seed planning runs; one row per (nf_mode, seed)."""
    scene = resolve_scene(config)
    seeds = make_seeds(config.base_seed, config.n_seeds)
    modes = ("edge",) if config.planner == "cobweb" else tuple(config.nf_modes)
    rows: list[list] = []
    for nf in modes:
        for seed in seeds:
            params = planner_params(config, seed)
            if config.planner == "rrt":
                res = rrt(scene, nf, params)
            elif config.planner == "prm":
                res = prm(scene, nf, params)
            elif config.planner == "cobweb":
                res = cobweb_rrg(scene, params)
            else:
                raise ValueError(f"unknown planner {config.planner!r}")
            rows.append(
                [
                    scene.name,
                    config.planner,
                    nf,
                    seed,
                    res.cd_calls,
                    res.iterations,
                    int(res.success),
                    res.roadmap_length,
                ]
            )
    if config.out:
        write_csv(config.out, PLANNING_HEADER, rows)
    return rows


def run_roadmap_length(config: ExperimentConfig) -> list[list]:
    """Fixed-size roadmap construction in an empty box, paired across modes.

    planner "rrt" (the k = 1 regime) grows a tree for a fixed iteration
    budget with goal bias and goal connection disabled; planner "prm" grows
    to a node budget; planner "greedy" runs the analysis-facing tree builder
    with both connectors.  Appends per-mode mean summary rows (seed column
    "mean").
    """
    scene = resolve_scene(config)
    if scene.obstacles:
        raise ValueError("roadmap-length experiments are defined on empty scenes")
    sig = scene.sig
    sig_name = f"t{sig.t}r{sig.r}"
    seeds = make_seeds(config.base_seed, config.n_seeds)
    rows: list[list] = []
    if config.planner == "greedy":
        if sig.r != 0:
            raise ValueError("greedy roadmap-length runs need a translational space")
        n_points = int(config.params.get("greedy_n", 1000))
        lo, hi = sig.bounds_arrays()
        for connector in ("treeNN", "vertexNN"):
            for seed in seeds:
                rng = np.random.default_rng(seed)
                pts = lo + rng.random((n_points, sig.d)) * (hi - lo)
                tree = build_geometric_tree(pts, connector)
                rows.append([sig_name, 0, connector, seed, 0, tree.total_length()])
    else:
        for nf in tuple(config.nf_modes):
            for seed in seeds:
                if config.planner == "rrt":
                    params = planner_params(
                        config,
                        seed,
                        goal_bias_period=0,
                        goal_connect_radius=0.0,
                        max_iterations=int(config.params.get("max_iterations", 300)),
                    )
                    res = rrt(scene, nf, params)
                elif config.planner == "prm":
                    params = planner_params(
                        config,
                        seed,
                        prm_node_target=int(config.params.get("prm_node_target", 150)),
                        max_iterations=int(config.params.get("max_iterations", 10_000)),
                    )
                    res = prm(scene, nf, params)
                else:
                    raise ValueError(f"unknown planner {config.planner!r}")
                rows.append(
                    [sig_name, config.k, nf, seed, res.cd_calls, res.roadmap_length]
                )
    rows.extend(_mean_rows(rows))
    if config.out:
        write_csv(config.out, ROADMAP_LENGTH_HEADER, rows)
    return rows


def _mean_rows(rows: list[list]) -> list[list]:
    groups: dict[tuple, list[list]] = {}
    for row in rows:
        groups.setdefault((row[0], row[1], row[2]), []).append(row)
    out = []
    for (sig_name, k, nf), grp in sorted(groups.items(), key=lambda kv: str(kv[0])):
        mean_cd = float(np.mean([r[4] for r in grp]))
        mean_len = float(np.mean([r[5] for r in grp]))
        out.append([sig_name, k, nf, "mean", mean_cd, mean_len])
    return out


# --- heatmap grids -----------------------------------------------------------


def _axis(sig: SpaceSignature, dim: int, resolution: int) -> np.ndarray:
    if dim < sig.t:
        lo, hi = sig.trans_bounds[dim]
    else:
        lo, hi = 0.0, 1.0
    step = (hi - lo) / resolution
    return lo + step * (np.arange(resolution) + 0.5)


def heatmap_grid(
    rm: Roadmap, resolution: int, mode: str
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Distance field over a 2-D signature: cell centers vs vertices or swath.

    Returns (xs, ys, grid) with grid[j, i] the distance at (xs[i], ys[j]).
    """
    sig = rm.sig
    if sig.d != 2:
        raise ValueError(f"heatmap grids need a 2-D signature, got d={sig.d}")
    if mode not in ("vertices", "swath"):
        raise ValueError(f"unknown heatmap mode {mode!r}")
    xs = _axis(sig, 0, resolution)
    ys = _axis(sig, 1, resolution)
    gx, gy = np.meshgrid(xs, ys)
    cells = np.column_stack([gx.ravel(), gy.ravel()])
    best = np.full(len(cells), np.inf)
    if mode == "vertices":
        for vid in range(rm.n_vertices):
            np.minimum(best, batch_dist_to_point(cells.copy(), rm.vertex(vid)), out=best)
    else:
        degrees = {vid: 0 for vid in range(rm.n_vertices)}
        for _, (u, v, seg, _) in rm.edges().items():
            degrees[u] += 1
            degrees[v] += 1
            for piece in split_segment(seg):
                np.minimum(best, batch_dist_points_to_piece(cells, piece, sig), out=best)
        for vid, deg in degrees.items():  # isolated vertices are swath points too
            if deg == 0:
                np.minimum(
                    best, batch_dist_to_point(cells.copy(), rm.vertex(vid)), out=best
                )
    return xs, ys, best.reshape(resolution, resolution)


def write_heatmap_csv(path, xs, ys, grid, mode: str) -> None:
    lines = [
        f"# mode: {mode}",
        "# x: " + " ".join(repr(float(x)) for x in xs),
        "# y: " + " ".join(repr(float(y)) for y in ys),
    ]
    lines.extend(",".join(repr(float(v)) for v in row) for row in grid)
    Path(path).write_text("\n".join(lines) + "\n")


def read_heatmap_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    xs = ys = None
    rows = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("# x:"):
            xs = np.array([float(v) for v in line[4:].split()])
        elif line.startswith("# y:"):
            ys = np.array([float(v) for v in line[4:].split()])
        elif line.startswith("#") or not line.strip():
            continue
        else:
            rows.append([float(v) for v in line.split(",")])
    if xs is None or ys is None:
        raise ValueError(f"{path}: missing axis header lines")
    return xs, ys, np.array(rows)
