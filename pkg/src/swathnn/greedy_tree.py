"""Greedy geometric trees over uniform points in a box, two connectors.

Feeds the expected-length analysis: points arrive one by one and connect to
the nearest existing tree vertex (``vertexNN``) or to the nearest point of
the whole tree swath (``treeNN``, splitting an edge when the connection
lands strictly inside it).  No validity checking; the box is free space.

The per-step connection lengths are the quantities of interest: with a
shared arrival sequence the treeNN length can never exceed the vertexNN
length at any step, because the treeNN swath always contains every
previously arrived sample as a vertex.  The implementation preserves that
dominance bitwise by evaluating candidate-vertex distances with the exact
same arithmetic in both connectors.

Purely translational spaces only (the analysis setting); points are raw
(n, d) arrays or CPoints with r = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cspace import CPoint

_SNAP = 1e-12  # connection params this close to an endpoint use the vertex


@dataclass
class GreedyTree:
    """Tree rows mix samples and split vertices; sample_rows maps arrivals."""

    verts: np.ndarray
    n_vertices: int
    edges: list[tuple[int, int]]
    lengths: np.ndarray  # connection length per arrival, shape (n - 1,)
    sample_rows: list[int]

    def total_length(self) -> float:
        return float(self.lengths.sum())

    def cumulative_lengths(self) -> np.ndarray:
        """Total tree length after each arrival (index i: i + 2 samples seen)."""
        return np.cumsum(self.lengths)


def _as_array(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2:
            raise ValueError(f"points must be (n, d), got shape {pts.shape}")
        return pts
    seq = list(points)
    if not seq:
        raise ValueError("need at least one point")
    if isinstance(seq[0], CPoint):
        if seq[0].sig.r != 0:
            raise ValueError("greedy trees are defined on translational spaces only")
        return np.array([p.coords for p in seq], dtype=float)
    return np.asarray(seq, dtype=float)


def build_geometric_tree(points, connector: str) -> GreedyTree:
    """Insert points in order, connecting each to the tree per ``connector``.

    connector: "vertexNN" (nearest existing vertex) or "treeNN" (nearest
    swath point; interior connections split the edge).
    """
    pts = _as_array(points)
    if connector == "vertexNN":
        return _build_vertex_nn(pts)
    if connector == "treeNN":
        return _build_tree_nn(pts)
    raise ValueError(f"unknown connector {connector!r}")


def greedy_vertex_lengths(pts: np.ndarray, block: int = 512) -> np.ndarray:
    """Connection lengths of the vertex-connector tree, structure discarded.

    Blocked Gram-matrix formulation for the large scaling runs: squared
    distances come from |a|^2 + |b|^2 - 2 a.b, clamped at zero.  The ~1e-11
    relative error of the cancellation is irrelevant to the statistical
    fits this feeds; the dominance-facing builders keep exact arithmetic.
    """
    pts = _as_array(pts)
    n = len(pts)
    lengths = np.empty(max(n - 1, 0))
    if n <= 1:
        return lengths
    sq = (pts * pts).sum(axis=1)
    for m in range(0, n, block):
        hi = min(m + block, n)
        blk = pts[m:hi]
        gram_in = blk @ blk.T
        d2_in = sq[m:hi, None] + sq[m:hi][None, :] - 2.0 * gram_in
        if m > 0:
            d2_prev = sq[m:hi, None] + sq[:m][None, :] - 2.0 * (blk @ pts[:m].T)
            prev_min = d2_prev.min(axis=1)
        for j in range(hi - m):
            i = m + j
            if i == 0:
                continue
            best = prev_min[j] if m > 0 else np.inf
            if j > 0:
                inner = d2_in[j, :j].min()
                if inner < best:
                    best = inner
            lengths[i - 1] = math.sqrt(best) if best > 0.0 else 0.0
    return lengths


def _build_vertex_nn(pts: np.ndarray) -> GreedyTree:
    n = len(pts)
    lengths = np.empty(max(n - 1, 0))
    edges: list[tuple[int, int]] = []
    if n > 1:
        best = ((pts[1:] - pts[0]) ** 2).sum(axis=1)
        parent = np.zeros(n - 1, dtype=int)
        for i in range(1, n):
            lengths[i - 1] = math.sqrt(best[i - 1])
            edges.append((int(parent[i - 1]), i))
            if i + 1 < n:
                dd = ((pts[i + 1 :] - pts[i]) ** 2).sum(axis=1)
                closer = dd < best[i:]
                best[i:][closer] = dd[closer]
                parent[i:][closer] = i
    return GreedyTree(pts.copy(), n, edges, lengths, list(range(n)))


def _build_tree_nn(pts: np.ndarray) -> GreedyTree:
    n, d = pts.shape
    cap_v = 2 * n + 2
    cap_e = 2 * n + 2
    verts = np.empty((cap_v, d))
    verts[0] = pts[0]
    nv = 1
    A = np.empty((cap_e, d))  # edge origins
    W = np.empty((cap_e, d))  # edge displacements
    D2 = np.empty(cap_e)  # squared edge lengths
    U = np.empty(cap_e, dtype=int)
    V = np.empty(cap_e, dtype=int)
    ne = 0
    lengths = np.empty(max(n - 1, 0))

    def add_vertex(p) -> int:
        nonlocal nv
        verts[nv] = p
        nv += 1
        return nv - 1

    def add_edge(u: int, v: int) -> None:
        nonlocal ne
        A[ne] = verts[u]
        W[ne] = verts[v] - verts[u]
        D2[ne] = float((W[ne] * W[ne]).sum())
        U[ne] = u
        V[ne] = v
        ne += 1

    sample_rows = [0]
    for i in range(1, n):
        p = pts[i]
        dv = ((verts[:nv] - p) ** 2).sum(axis=1)
        jv = int(np.argmin(dv))
        dvmin = float(dv[jv])
        demin = np.inf
        if ne:
            diff = p - A[:ne]
            pa2 = (diff * diff).sum(axis=1)
            dot = (diff * W[:ne]).sum(axis=1)
            tt = dot / np.where(D2[:ne] > 0.0, D2[:ne], 1.0)
            np.clip(tt, 0.0, 1.0, out=tt)
            ds = pa2 - tt * (2.0 * dot - tt * D2[:ne])
            je = int(np.argmin(ds))
            demin = float(ds[je])
            if demin < 0.0:
                demin = 0.0
        # every prior sample is a tree vertex, so dvmin alone already matches
        # the vertexNN connection length (same squared-sum arithmetic);
        # demin can only improve on it
        if demin < dvmin:
            t = float(tt[je])
            if t <= _SNAP:
                anchor = int(U[je])
            elif t >= 1.0 - _SNAP:
                anchor = int(V[je])
            else:
                anchor = add_vertex(A[je] + t * W[je])
                old_v = int(V[je])
                W[je] = verts[anchor] - A[je]
                D2[je] = float((W[je] * W[je]).sum())
                V[je] = anchor
                add_edge(anchor, old_v)
            lengths[i - 1] = math.sqrt(demin)
        else:
            anchor = jv
            lengths[i - 1] = math.sqrt(dvmin)
        new_vid = add_vertex(p)
        sample_rows.append(new_vid)
        add_edge(anchor, new_vid)

    edges = [(int(u), int(v)) for u, v in zip(U[:ne], V[:ne])]
    return GreedyTree(verts[:nv].copy(), nv, edges, lengths, sample_rows)
