#!/usr/bin/env python3
"""Emit the vertex/swath distance-field grids for a small demo roadmap.

Builds a one-edge roadmap (the minimal case where the two neighborhood
definitions visibly differ), saves it, and writes both heatmap grids.  The
grids feed the figure pipeline (render-heatmap in frontend/).
"""

import argparse
from pathlib import Path

from swathnn.cspace import SpaceSignature, normalize
from swathnn.experiments import heatmap_grid, write_heatmap_csv
from swathnn.roadmap import Roadmap


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out/heatmaps")
    ap.add_argument("--resolution", type=int, default=96)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    sig = SpaceSignature(2, 0, ((0.0, 10.0), (0.0, 10.0)))
    rm = Roadmap(sig, "edge")
    u = rm.add_vertex(normalize([2.0, 4.0], sig))
    v = rm.add_vertex(normalize([8.0, 6.0], sig))
    rm.add_edge(u, v)
    with open(out / "one_edge_roadmap.txt", "w") as fh:
        rm.save(fh)
    for mode in ("vertices", "swath"):
        xs, ys, grid = heatmap_grid(rm, args.resolution, mode)
        write_heatmap_csv(out / f"one_edge_{mode}.csv", xs, ys, grid, mode)
        print(f"wrote {out / f'one_edge_{mode}.csv'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
