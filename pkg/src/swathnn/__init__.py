"""Motion-planning toolkit centered on nearest-neighbor queries over the
swath (vertices plus edge interiors) of configuration-space graphs in mixed
Euclidean x torus spaces."""

from .cspace import (
    Aabb,
    CPoint,
    CSegment,
    Hit,
    SpaceSignature,
    SubSegment,
    cyclic_dist_1d,
    dist_point_aabb,
    dist_point_point,
    dist_point_segment,
    dist_point_segment_oracle,
    dist_point_subsegment,
    geodesic,
    nearest_lift,
    normalize,
    segment_aabb_intersect,
    split_segment,
)
from .segment_tree import Neighbor, SegmentTree, TreeParams
from .roadmap import NeighborResult, Roadmap
from .scenes import Scene, ValidityChecker, builtin_scene, load_scene, save_scene
from .planners import (
    ExtensionResult,
    PlannerParams,
    PlanResult,
    cobweb_rrg,
    extend,
    prm,
    rrt,
)
from .greedy_tree import GreedyTree, build_geometric_tree

__all__ = [
    "Aabb",
    "CPoint",
    "CSegment",
    "Hit",
    "SpaceSignature",
    "SubSegment",
    "cyclic_dist_1d",
    "dist_point_aabb",
    "dist_point_point",
    "dist_point_segment",
    "dist_point_segment_oracle",
    "dist_point_subsegment",
    "geodesic",
    "nearest_lift",
    "normalize",
    "segment_aabb_intersect",
    "split_segment",
    "Neighbor",
    "SegmentTree",
    "TreeParams",
    "NeighborResult",
    "Roadmap",
    "Scene",
    "ValidityChecker",
    "builtin_scene",
    "load_scene",
    "save_scene",
    "ExtensionResult",
    "PlannerParams",
    "PlanResult",
    "cobweb_rrg",
    "extend",
    "prm",
    "rrt",
    "GreedyTree",
    "build_geometric_tree",
]
