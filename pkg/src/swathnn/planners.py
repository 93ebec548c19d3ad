"""Sampling-based planners parameterized by neighborhood-finder mode.

All planners share the same machinery: uniform sampling over the space,
resolution-stepped validity checking along geodesics, and a roadmap whose
``nearest`` can run in vertex mode (classical) or edge mode (whole-swath
candidates).  Runs are deterministic given (seed, scene, params, nf_mode);
paired-seed comparisons across modes therefore see identical sample
sequences until the roadmaps diverge.

Extensions that a collision stops before the maximum extension length mark
their endpoint as a contact-space point; cobweb_rrg additionally cross-links
such points, spinning webs across obstacle boundaries where passage mouths
tend to sit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cspace import CPoint, CSegment, SpaceSignature, dist_point_point, geodesic, normalize
from .roadmap import NeighborResult, Roadmap
from .scenes import Scene, ValidityChecker
from .segment_tree import TreeParams


@dataclass(frozen=True)
class PlannerParams:
    min_ext: float = 0.01
    max_ext: float = 4.0
    cd_resolution: float = 0.01
    goal_bias_period: int = 100
    goal_connect_radius: float = 3.0
    k: int = 5
    max_iterations: int = 10_000
    seed: int = 0
    prm_batch_attempts: int = 10
    prm_batch_target: int = 5
    prm_node_target: int = 0  # > 0: grow to a node budget instead of stopping on connectivity
    tree_params: TreeParams = TreeParams()

    def __post_init__(self) -> None:
        if not 0.0 < self.min_ext <= self.max_ext:
            raise ValueError("need 0 < min_ext <= max_ext")
        if self.cd_resolution <= 0.0:
            raise ValueError("cd_resolution must be positive")


@dataclass(frozen=True)
class ExtensionResult:
    reached: CPoint
    truncated: bool
    contact: bool
    cd_calls: int
    length: float
    seg: Optional[CSegment] = None  # validated prefix geometry, None if discarded


@dataclass
class PlanResult:
    success: bool
    path: list[int]
    iterations: int
    cd_calls: int
    roadmap_length: float
    log: list[tuple]
    extras: dict = field(default_factory=dict)
    roadmap: Optional[Roadmap] = None


def uniform_sample(sig: SpaceSignature, rng: np.random.Generator) -> CPoint:
    """One uniform draw over trans_bounds x [0, 1)^r; consumes d variates."""
    u = rng.random(sig.d)
    coords = list(u)
    for i, (lo, hi) in enumerate(sig.trans_bounds):
        coords[i] = lo + u[i] * (hi - lo)
    return CPoint(tuple(coords), sig)


def extend(
    from_: CPoint, toward: CPoint, params: PlannerParams, checker: ValidityChecker
) -> ExtensionResult:
    """Walk the geodesic from -> toward in cd_resolution steps.

    Stops at the first invalid configuration or after max_ext; extensions
    shorter than min_ext are discarded (reached = from_).  One CD call per
    step.
    """
    seg = geodesic(from_, toward)
    total = seg.length
    if total == 0.0:
        return ExtensionResult(from_, False, False, 0, 0.0, None)
    limit = min(params.max_ext, total)
    n_steps = math.ceil(limit / params.cd_resolution)
    reached_len = 0.0
    reached = from_
    collided = False
    cd = 0
    for j in range(1, n_steps + 1):
        s = min(j * params.cd_resolution, limit)
        q = normalize(seg.point_at(s / total), from_.sig)
        cd += 1
        if not checker.is_valid(q):
            collided = True
            break
        reached_len = s
        reached = q
    if reached_len < params.min_ext:
        return ExtensionResult(from_, True, False, cd, 0.0, None)
    if not collided and reached_len == total:
        reached = toward  # exact endpoint, not the resampled cover point
    truncated = collided or limit < total
    contact = collided and reached_len < params.max_ext
    frac = reached_len / total
    prefix = CSegment(from_, tuple(frac * v for v in seg.disp))
    return ExtensionResult(reached, truncated, contact, cd, reached_len, prefix)


def validate_segment(
    a: CPoint, b: CPoint, params: PlannerParams, checker: ValidityChecker
) -> bool:
    """Full-length validity walk a -> b at cd_resolution (a assumed valid)."""
    seg = geodesic(a, b)
    total = seg.length
    if total == 0.0:
        return True
    n_steps = math.ceil(total / params.cd_resolution)
    for j in range(1, n_steps + 1):
        s = min(j * params.cd_resolution, total)
        q = normalize(seg.point_at(s / total), a.sig)
        if not checker.is_valid(q):
            return False
    return True


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _check_problem(scene: Scene, checker: ValidityChecker) -> None:
    if not checker.is_valid(scene.start):
        raise ValueError(f"scene {scene.name!r}: start configuration is invalid")
    if not checker.is_valid(scene.goal):
        raise ValueError(f"scene {scene.name!r}: goal configuration is invalid")


def _anchor_vertex(rm: Roadmap, nb: NeighborResult) -> int:
    """Vertex to extend from; splits the edge when the neighbor is interior."""
    if nb.kind == "vertex":
        return nb.vertex_id
    vid, _ = rm.split_edge_at(nb.edge_id, nb.param)
    return vid


def _try_goal_connect(
    rm: Roadmap,
    new_vid: int,
    reached: CPoint,
    scene: Scene,
    params: PlannerParams,
    checker: ValidityChecker,
) -> Optional[int]:
    dgoal = dist_point_point(reached, scene.goal)
    if dgoal > params.goal_connect_radius:
        return None
    if dgoal < 1e-12:
        return new_vid
    if not validate_segment(reached, scene.goal, params, checker):
        return None
    gvid = rm.add_vertex(scene.goal)
    rm.add_edge(new_vid, gvid)
    return gvid


def _tree_planner(
    scene: Scene, nf_mode: str, params: PlannerParams, contact_k: Optional[int]
) -> PlanResult:
    """Shared RRT loop; contact_k enables the contact-set cross-linking."""
    checker = ValidityChecker(scene)
    _check_problem(scene, checker)
    rm = Roadmap(scene.sig, nf_mode, params.tree_params)
    start_vid = rm.add_vertex(scene.start)
    goal_vid: Optional[int] = None
    rng = np.random.default_rng(params.seed)
    log: list[tuple] = []
    contact_set: list[int] = []
    web_edges = 0
    it = 0
    while it < params.max_iterations and goal_vid is None:
        it += 1
        if params.goal_bias_period and it % params.goal_bias_period == 0:
            sample = scene.goal
        else:
            sample = uniform_sample(scene.sig, rng)
        nb = rm.nearest(sample, 1)[0]
        ext = extend(nb.point, sample, params, checker)
        if ext.seg is not None:
            base_vid = _anchor_vertex(rm, nb)
            new_vid = rm.add_vertex(ext.reached)
            rm.add_edge(base_vid, new_vid, seg=ext.seg)
            if contact_k is not None and ext.contact:
                ranked = sorted(
                    (dist_point_point(ext.reached, rm.vertex(c)), c)
                    for c in contact_set
                )
                for _, cvid in ranked[:contact_k]:
                    if cvid == new_vid or rm.has_edge(new_vid, cvid):
                        continue
                    if validate_segment(ext.reached, rm.vertex(cvid), params, checker):
                        rm.add_edge(new_vid, cvid)
                        web_edges += 1
                contact_set.append(new_vid)
            goal_vid = _try_goal_connect(rm, new_vid, ext.reached, scene, params, checker)
        log.append((it, sample.coords, nb.kind, nb.distance, ext.length))
    path = rm.sssp(start_vid, goal_vid) if goal_vid is not None else None
    extras = {}
    if contact_k is not None:
        extras = {"web_edges": web_edges, "contact_points": len(contact_set)}
    return PlanResult(
        success=goal_vid is not None,
        path=path or [],
        iterations=it,
        cd_calls=checker.cd_calls,
        roadmap_length=rm.total_length(),
        log=log,
        extras=extras,
        roadmap=rm,
    )


def rrt(scene: Scene, nf_mode: str, params: PlannerParams) -> PlanResult:
    """Tree planner: extend from the nearest roadmap point toward each sample.

    The goal is sampled once every goal_bias_period iterations and a direct
    goal connection is attempted whenever a new vertex lands within
    goal_connect_radius.  Edge-interior anchors split their edge first (only
    on successful extension).
    """
    return _tree_planner(scene, nf_mode, params, contact_k=None)


def cobweb_rrg(scene: Scene, params: PlannerParams) -> PlanResult:
    """RRT-style loop (edge mode mandatory) that cross-links contact points.

    Every extension truncated by collision before max_ext yields a
    contact-space vertex; each new one is connected to its k nearest
    predecessors in the contact set (validated connections only), weaving a
    web across obstacle boundaries.
    """
    return _tree_planner(scene, "edge", params, contact_k=params.k)


def prm(scene: Scene, nf_mode: str, params: PlannerParams) -> PlanResult:
    """Batched roadmap construction: sample, then connect to k neighbors.

    Each iteration samples at most prm_batch_attempts times trying to add
    prm_batch_target valid nodes; every node connects to its k nearest
    neighbors through fully validated edges (nearest first, no early stop on
    failure).  Edge-interior neighbors split the edge after validation.
    """
    checker = ValidityChecker(scene)
    _check_problem(scene, checker)
    rm = Roadmap(scene.sig, nf_mode, params.tree_params)
    start_vid = rm.add_vertex(scene.start)
    real_goal_vid = rm.add_vertex(scene.goal)
    uf = _UnionFind()
    uf.add(start_vid)
    uf.add(real_goal_vid)
    rng = np.random.default_rng(params.seed)
    log: list[tuple] = []
    it = 0
    solved = False
    nodes_added = 0
    while it < params.max_iterations:
        if params.prm_node_target > 0:
            if nodes_added >= params.prm_node_target:
                break
        elif solved:
            break
        it += 1
        attempts = 0
        added = 0
        edges_added = 0
        while attempts < params.prm_batch_attempts and added < params.prm_batch_target:
            attempts += 1
            sample = uniform_sample(scene.sig, rng)
            if not checker.is_valid(sample):
                continue
            added += 1
            nodes_added += 1
            neighbors = rm.nearest(sample, params.k)
            new_vid = rm.add_vertex(sample)
            uf.add(new_vid)
            for nb in neighbors:
                if not validate_segment(sample, nb.point, params, checker):
                    continue
                if nb.kind == "edge_interior":
                    pu, pv, _, _ = rm.edge(nb.edge_id)
                    target, _ = rm.split_edge_at(nb.edge_id, nb.param)
                    uf.add(target)
                    uf.union(target, pu)
                    uf.union(target, pv)
                else:
                    target = nb.vertex_id
                if target != new_vid and not rm.has_edge(new_vid, target):
                    rm.add_edge(new_vid, target)
                    uf.union(new_vid, target)
                    edges_added += 1
            log.append((it, attempts, added, edges_added))
        solved = uf.find(start_vid) == uf.find(real_goal_vid)
    path = rm.sssp(start_vid, real_goal_vid) if solved else None
    return PlanResult(
        success=solved,
        path=path or [],
        iterations=it,
        cd_calls=checker.cd_calls,
        roadmap_length=rm.total_length(),
        log=log,
        extras={},
        roadmap=rm,
    )
