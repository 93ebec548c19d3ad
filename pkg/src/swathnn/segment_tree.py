"""Three-way AABB-tree over segment pieces with buffered edits and edge-kNN.

The tree stores the wrap-free pieces of configuration-space segments, each
tagged with its parent edge id.  Nodes split on the widest axis of their
tight bounding box at the median of piece-box centers, producing up to
three children (fully below / straddling / fully above the hyperplane).

Queries run best-first ordered by the point-to-box lower bound and return
at most one result per parent edge: the kNN heap keeps each edge's best
piece even when other pieces of that edge are encountered first.  With
epsilon = 0 results are exact; otherwise every returned distance is within
a factor (1 + epsilon) of the true distance at the same rank.

Edits are buffered: inserted edges sit in a query-visible buffer until it
reaches ``n_buff`` and triggers a rebuild; removed edges go to a deletion
set that hides them from queries until the next rebuild drops them.
"""

from __future__ import annotations

import heapq
import math
from bisect import insort
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional

from .cspace import (
    CPoint,
    CSegment,
    SpaceSignature,
    normalize,
    split_segment,
    SubSegment,
)
from .cspace import _dist_param_subsegment


def _dist_box(pc, t: int, d: int, lo, hi) -> float:
    """Point-to-box lower bound: per-axis interval distances, cyclic axes
    take the best {-1, 0, +1} wrap candidate.  Hot path of every query."""
    acc = 0.0
    for i in range(t):
        x = pc[i]
        if x < lo[i]:
            dd = lo[i] - x
        elif x > hi[i]:
            dd = x - hi[i]
        else:
            continue
        acc += dd * dd
    for i in range(t, d):
        x, l, h = pc[i], lo[i], hi[i]
        if l <= x <= h:
            continue
        dd = l - x if x < l else x - h
        if x + 1.0 < l:
            dd2 = l - x - 1.0
        elif x + 1.0 > h:
            dd2 = x + 1.0 - h
        else:
            dd2 = 0.0
        if dd2 < dd:
            dd = dd2
        if x - 1.0 < l:
            dd3 = l - x + 1.0
        elif x - 1.0 > h:
            dd3 = x - 1.0 - h
        else:
            dd3 = 0.0
        if dd3 < dd:
            dd = dd3
        acc += dd * dd
    return math.sqrt(acc)


@dataclass(frozen=True)
class TreeParams:
    n_leaf_thresh: int = 8
    n_buff: int = 64
    n_leaf_ratio: float = 0.9
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.n_leaf_thresh < 1 or self.n_buff < 1:
            raise ValueError("n_leaf_thresh and n_buff must be positive")
        if not 0.5 < self.n_leaf_ratio <= 1.0:
            raise ValueError("n_leaf_ratio must lie in (0.5, 1]")
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be >= 0")


@dataclass(frozen=True)
class Neighbor:
    edge_id: Hashable
    point: CPoint
    param: float
    distance: float


@dataclass
class TreeStats:
    node_count: int
    depth: int
    leaf_sizes: list[int]
    stored_pieces: int
    buffer_edges: int
    buffer_pieces: int
    deleted_edges: int


class _Node:
    __slots__ = ("lo", "hi", "split_dim", "split_val", "children", "items")

    def __init__(self, lo, hi, items=None):
        self.lo = lo
        self.hi = hi
        self.split_dim = -1
        self.split_val = 0.0
        self.children: Optional[list[_Node]] = None
        self.items: Optional[list[int]] = items  # indices into the piece store


def _tight_box(pieces: list[SubSegment], ids: list[int], d: int):
    lo = [math.inf] * d
    hi = [-math.inf] * d
    for pid in ids:
        pc = pieces[pid]
        for i in range(d):
            x, y = pc.a[i], pc.b[i]
            if x > y:
                x, y = y, x
            if x < lo[i]:
                lo[i] = x
            if y > hi[i]:
                hi[i] = y
    return tuple(lo), tuple(hi)


class SegmentTree:
    """Edge-kNN index over the pieces of a set of identified segments.

    Concurrent queries are safe with each other; insert/remove/rebuild need
    exclusive access (single-writer, multi-reader).
    """

    def __init__(self, sig: SpaceSignature, params: TreeParams = TreeParams()):
        self.sig = sig
        self.params = params
        self._pieces: list[SubSegment] = []
        self._tree_edges: set[Hashable] = set()
        self._buffer: dict[Hashable, list[SubSegment]] = {}
        self._deleted: set[Hashable] = set()
        self._root = _Node((0.0,) * sig.d, (0.0,) * sig.d, items=[])
        # cumulative query-cost accounting
        self.nodes_visited = 0
        self.dist_evals = 0

    # --- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        segments: Iterable[tuple[Hashable, CSegment]],
        params: TreeParams,
        sig: SpaceSignature,
    ) -> "SegmentTree":
        tree = cls(sig, params)
        pieces = []
        for edge_id, seg in segments:
            if edge_id in tree._tree_edges:
                raise ValueError(f"duplicate edge id {edge_id!r}")
            tree._tree_edges.add(edge_id)
            pieces.extend(
                SubSegment(p.a, p.b, edge_id, p.t0, p.t1) for p in split_segment(seg)
            )
        tree._pieces = pieces
        tree._root = tree._build_node(list(range(len(pieces))))
        return tree

    def _build_node(self, ids: list[int]) -> _Node:
        d = self.sig.d
        if not ids:
            return _Node((0.0,) * d, (0.0,) * d, items=[])
        lo, hi = _tight_box(self._pieces, ids, d)
        node = _Node(lo, hi)
        if len(ids) <= self.params.n_leaf_thresh:
            node.items = ids
            return node
        dim = max(range(d), key=lambda i: hi[i] - lo[i])
        centers = sorted(
            0.5 * (self._pieces[pid].a[dim] + self._pieces[pid].b[dim]) for pid in ids
        )
        mid = len(centers) // 2
        split = (
            centers[mid]
            if len(centers) % 2
            else 0.5 * (centers[mid - 1] + centers[mid])
        )
        below, straddle, above = [], [], []
        for pid in ids:
            pc = self._pieces[pid]
            plo, phi = min(pc.a[dim], pc.b[dim]), max(pc.a[dim], pc.b[dim])
            if phi <= split:
                below.append(pid)
            elif plo > split:
                above.append(pid)
            else:
                straddle.append(pid)
        node.split_dim = dim
        node.split_val = split
        node.children = []
        limit = self.params.n_leaf_ratio * len(ids)
        for group in (below, straddle, above):
            if not group:
                continue
            if len(group) > limit or len(group) == len(ids):
                glo, ghi = _tight_box(self._pieces, group, d)
                leaf = _Node(glo, ghi, items=group)
                node.children.append(leaf)
            else:
                node.children.append(self._build_node(group))
        return node

    # --- edits --------------------------------------------------------------

    def live_edges(self) -> set[Hashable]:
        return (self._tree_edges - self._deleted) | set(self._buffer)

    @property
    def n_live(self) -> int:
        return len(self._tree_edges) - len(self._deleted) + len(self._buffer)

    def insert(self, edge_id: Hashable, seg: CSegment) -> None:
        if edge_id in self.live_edges():
            raise ValueError(f"edge id {edge_id!r} already stored")
        self._buffer[edge_id] = [
            SubSegment(p.a, p.b, edge_id, p.t0, p.t1) for p in split_segment(seg)
        ]
        if len(self._buffer) >= self.params.n_buff:
            self.rebuild()

    def remove(self, edge_id: Hashable) -> None:
        if edge_id in self._buffer:
            del self._buffer[edge_id]
        elif edge_id in self._tree_edges and edge_id not in self._deleted:
            self._deleted.add(edge_id)
        else:
            raise KeyError(f"unknown edge id {edge_id!r}")

    def rebuild(self) -> None:
        pieces = [p for p in self._pieces if p.parent_edge not in self._deleted]
        for buffered in self._buffer.values():
            pieces.extend(buffered)
        self._tree_edges = (self._tree_edges - self._deleted) | set(self._buffer)
        self._buffer = {}
        self._deleted = set()
        self._pieces = pieces
        self._root = self._build_node(list(range(len(pieces))))

    # --- queries ------------------------------------------------------------

    def knn(self, p: CPoint, k: int) -> list[Neighbor]:
        """The k nearest live edges of p, one best piece per edge.

        Returns min(k, live edges) entries ordered by (distance, edge_id).
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        eps1 = 1.0 + self.params.epsilon
        pc = p.coords
        t, d = self.sig.t, self.sig.d
        best: dict[Hashable, tuple[float, float, SubSegment]] = {}
        order: list[tuple[float, Hashable]] = []

        def offer(piece: SubSegment) -> None:
            dist, sub_t = _dist_param_subsegment(pc, t, d, piece.a, piece.b)
            self.dist_evals += 1
            eid = piece.parent_edge
            cur = best.get(eid)
            if cur is not None:
                if dist >= cur[0]:
                    return
                order.remove((cur[0], eid))
            best[eid] = (dist, sub_t, piece)
            insort(order, (dist, eid))

        for pieces in self._buffer.values():
            for piece in pieces:
                offer(piece)

        heap: list[tuple[float, int, _Node]] = []
        seq = 0
        if self._pieces:
            heap.append((_dist_box(pc, t, d, self._root.lo, self._root.hi), seq, self._root))
        while heap:
            bound, _, node = heapq.heappop(heap)
            kth = order[k - 1][0] if len(order) >= k else math.inf
            if bound > kth / eps1:
                break
            self.nodes_visited += 1
            if node.items is not None:
                for pid in node.items:
                    piece = self._pieces[pid]
                    if piece.parent_edge in self._deleted:
                        continue
                    offer(piece)
            else:
                for child in node.children:
                    seq += 1
                    dd = _dist_box(pc, t, d, child.lo, child.hi)
                    heapq.heappush(heap, (dd, seq, child))

        out = []
        for dist, eid in order[:k]:
            _, sub_t, piece = best[eid]
            witness = normalize(
                [x + sub_t * (y - x) for x, y in zip(piece.a, piece.b)], self.sig
            )
            param = piece.t0 + sub_t * (piece.t1 - piece.t0)
            out.append(Neighbor(eid, witness, param, dist))
        return out

    # --- inspection ----------------------------------------------------------

    def stats(self) -> TreeStats:
        leaf_sizes: list[int] = []
        node_count = 0
        max_depth = 0
        stack = [(self._root, 0)]
        while stack:
            node, depth = stack.pop()
            node_count += 1
            max_depth = max(max_depth, depth)
            if node.items is not None:
                leaf_sizes.append(len(node.items))
            else:
                stack.extend((c, depth + 1) for c in node.children)
        return TreeStats(
            node_count=node_count,
            depth=max_depth,
            leaf_sizes=leaf_sizes,
            stored_pieces=len(self._pieces),
            buffer_edges=len(self._buffer),
            buffer_pieces=sum(len(v) for v in self._buffer.values()),
            deleted_edges=len(self._deleted),
        )
