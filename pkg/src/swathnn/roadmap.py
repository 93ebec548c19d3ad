"""Configuration-space graph with splittable edges and two neighborhood finders.

The roadmap stores vertices (configurations) and edges (geodesics between
them) and answers nearest-neighbor queries in one of two modes:

* ``vertex``: candidates are graph vertices only (vectorized linear scan,
  the classical baseline);
* ``edge``: candidates are arbitrary points on the swath, served by the
  segment tree index, so results may land strictly inside an edge.

Edges can be split at an interior parameter, which rederives the child
geometry from the parent displacement (no metric drift) and keeps the
index coherent with the graph.

Single-writer, multi-reader: planners own one roadmap per run.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .cspace import (
    CPoint,
    CSegment,
    SpaceSignature,
    batch_dist_to_point,
    geodesic,
    normalize,
)
from .segment_tree import SegmentTree, TreeParams

PARAM_SNAP = 1e-9  # interior params this close to 0/1 collapse to the endpoint


def _vertex_sentinel(vid: int) -> int:
    """Index id for an isolated vertex's degenerate segment (< 0, collision-free
    with real edge ids, and comparable to them for deterministic tie-breaks)."""
    return -(vid + 1)


@dataclass(frozen=True)
class NeighborResult:
    kind: str  # "vertex" | "edge_interior"
    point: CPoint
    distance: float
    vertex_id: Optional[int] = None
    edge_id: Optional[int] = None
    param: Optional[float] = None


@dataclass
class _Edge:
    u: int
    v: int
    seg: CSegment
    length: float


class Roadmap:
    def __init__(
        self,
        sig: SpaceSignature,
        nf_mode: str = "edge",
        tree_params: TreeParams = TreeParams(),
    ):
        if nf_mode not in ("vertex", "edge"):
            raise ValueError(f"unknown nf_mode {nf_mode!r}")
        self.sig = sig
        self.nf_mode = nf_mode
        self._vertices: dict[int, CPoint] = {}
        self._edges: dict[int, _Edge] = {}
        self._adj: dict[int, dict[int, int]] = {}
        self._next_vid = 0
        self._next_eid = 0
        self._vcoords = np.empty((16, sig.d))
        self._sentineled: set[int] = set()
        self.index = SegmentTree(sig, tree_params) if nf_mode == "edge" else None

    # --- construction -------------------------------------------------------

    def add_vertex(self, p: CPoint) -> int:
        vid = self._next_vid
        self._next_vid += 1
        self._vertices[vid] = p
        self._adj[vid] = {}
        if vid >= len(self._vcoords):
            grown = np.empty((2 * len(self._vcoords), self.sig.d))
            grown[: len(self._vcoords)] = self._vcoords
            self._vcoords = grown
        self._vcoords[vid] = p.coords
        if self.index is not None:
            # isolated vertices belong to the swath: store a degenerate
            # segment until the vertex gains its first incident edge
            self.index.insert(_vertex_sentinel(vid), CSegment(p, (0.0,) * self.sig.d))
            self._sentineled.add(vid)
        return vid

    def add_edge(self, u: int, v: int, seg: Optional[CSegment] = None) -> int:
        """Connect u to v along their geodesic.

        ``seg`` optionally supplies precomputed geometry (it must run from
        u's configuration to v's); planners pass the validated extension
        prefix through here so certification and storage agree bit-for-bit.
        """
        if u not in self._vertices or v not in self._vertices:
            raise KeyError(f"unknown vertex in ({u}, {v})")
        if u == v:
            raise ValueError("self-loops not allowed")
        if v in self._adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        if seg is None:
            seg = geodesic(self._vertices[u], self._vertices[v])
        return self._add_edge_with_seg(u, v, seg)

    def _add_edge_with_seg(self, u: int, v: int, seg: CSegment) -> int:
        eid = self._next_eid
        self._next_eid += 1
        self._edges[eid] = _Edge(u, v, seg, seg.length)
        self._adj[u][v] = eid
        self._adj[v][u] = eid
        if self.index is not None:
            for w in (u, v):
                if w in self._sentineled:
                    self.index.remove(_vertex_sentinel(w))
                    self._sentineled.discard(w)
            self.index.insert(eid, seg)
        return eid

    # --- queries --------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def vertex(self, vid: int) -> CPoint:
        return self._vertices[vid]

    def edge(self, eid: int) -> tuple[int, int, CSegment, float]:
        e = self._edges[eid]
        return e.u, e.v, e.seg, e.length

    def edges(self):
        return {eid: (e.u, e.v, e.seg, e.length) for eid, e in self._edges.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, {})

    def total_length(self) -> float:
        return sum(e.length for e in self._edges.values())

    def nearest(self, p: CPoint, k: int) -> list[NeighborResult]:
        if not self._vertices:
            raise ValueError("nearest() on an empty roadmap")
        if self.nf_mode == "vertex":
            n = self._next_vid
            dists = batch_dist_to_point(self._vcoords[:n].copy(), p)
            order = np.lexsort((np.arange(n), dists))[:k]
            return [
                NeighborResult(
                    "vertex",
                    self._vertices[int(i)],
                    float(dists[i]),
                    vertex_id=int(i),
                )
                for i in order
            ]
        out = []
        seen_vertices: set[int] = set()

        def add_vertex_result(vid: int, distance: float) -> None:
            if vid in seen_vertices:
                return
            seen_vertices.add(vid)
            out.append(
                NeighborResult("vertex", self._vertices[vid], distance, vertex_id=vid)
            )

        for nb in self.index.knn(p, k):
            if nb.edge_id < 0:  # degenerate entry for an isolated vertex
                add_vertex_result(-(nb.edge_id + 1), nb.distance)
                continue
            e = self._edges[nb.edge_id]
            if nb.param <= PARAM_SNAP or nb.param >= 1.0 - PARAM_SNAP:
                add_vertex_result(e.u if nb.param <= PARAM_SNAP else e.v, nb.distance)
            else:
                out.append(
                    NeighborResult(
                        "edge_interior",
                        nb.point,
                        nb.distance,
                        edge_id=nb.edge_id,
                        param=nb.param,
                    )
                )
        return out

    # --- edits ------------------------------------------------------------------

    def split_edge_at(self, edge_id: int, param: float) -> tuple[int, tuple[int, int]]:
        """Split a live edge at a strictly interior parameter.

        The new vertex sits on the parent geodesic; both children reuse the
        parent displacement, so the swath and total length are unchanged.
        """
        if edge_id not in self._edges:
            raise KeyError(f"unknown or dead edge {edge_id}")
        if not 0.0 < param < 1.0:
            raise ValueError(f"split param must be interior, got {param}")
        e = self._edges[edge_id]
        mid = normalize(e.seg.point_at(param), self.sig)
        del self._edges[edge_id]
        del self._adj[e.u][e.v]
        del self._adj[e.v][e.u]
        if self.index is not None:
            self.index.remove(edge_id)
        vid = self.add_vertex(mid)
        disp = e.seg.disp
        seg1 = CSegment(e.seg.origin, tuple(param * w for w in disp))
        seg2 = CSegment(mid, tuple((1.0 - param) * w for w in disp))
        e1 = self._add_edge_with_seg(e.u, vid, seg1)
        e2 = self._add_edge_with_seg(vid, e.v, seg2)
        return vid, (e1, e2)

    # --- shortest paths ------------------------------------------------------

    def sssp(self, source: int, target: int) -> Optional[list[int]]:
        """Minimum-total-length vertex path, or None if disconnected."""
        if source not in self._vertices or target not in self._vertices:
            raise KeyError(f"unknown vertex in ({source}, {target})")
        dist = {source: 0.0}
        prev: dict[int, int] = {}
        heap = [(0.0, source)]
        done: set[int] = set()
        while heap:
            d, u = heapq.heappop(heap)
            if u in done:
                continue
            if u == target:
                break
            done.add(u)
            for v, eid in self._adj[u].items():
                nd = d + self._edges[eid].length
                if v not in dist or nd < dist[v]:
                    dist[v] = nd
                    prev[v] = u
                    heapq.heappush(heap, (nd, v))
        if target not in dist:
            return None
        path = [target]
        while path[-1] != source:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    # --- serialization ----------------------------------------------------------

    def save(self, fh: TextIO) -> None:
        """Line-oriented text dump: signature, then vertices, then edges."""
        fh.write("roadmap_version 1\n")
        bounds = " ".join(f"{lo!r} {hi!r}" for lo, hi in self.sig.trans_bounds)
        fh.write(f"signature {self.sig.t} {self.sig.r} {bounds}".rstrip() + "\n")
        fh.write(f"nf_mode {self.nf_mode}\n")
        for vid in sorted(self._vertices):
            coords = " ".join(repr(c) for c in self._vertices[vid].coords)
            fh.write(f"v {vid} {coords}\n")
        for eid in sorted(self._edges):
            e = self._edges[eid]
            disp = " ".join(repr(c) for c in e.seg.disp)
            fh.write(f"e {eid} {e.u} {e.v} {disp}\n")

    @classmethod
    def load(cls, fh: TextIO, tree_params: TreeParams = TreeParams()) -> "Roadmap":
        header = fh.readline().split()
        if header[:2] != ["roadmap_version", "1"]:
            raise ValueError(f"unsupported roadmap header: {header}")
        sig_line = fh.readline().split()
        t, r = int(sig_line[1]), int(sig_line[2])
        vals = [float(x) for x in sig_line[3:]]
        bounds = tuple((vals[2 * i], vals[2 * i + 1]) for i in range(t))
        sig = SpaceSignature(t, r, bounds)
        nf_mode = fh.readline().split()[1]
        rm = cls(sig, nf_mode, tree_params)
        id_map: dict[int, int] = {}
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                vid = rm.add_vertex(normalize([float(x) for x in parts[2:]], sig))
                id_map[int(parts[1])] = vid
            elif parts[0] == "e":
                u, v = id_map[int(parts[2])], id_map[int(parts[3])]
                disp = tuple(float(x) for x in parts[4:])
                rm._add_edge_with_seg(u, v, CSegment(rm._vertices[u], disp))
            else:
                raise ValueError(f"bad roadmap line: {line!r}")
        return rm
