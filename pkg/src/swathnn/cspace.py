"""Geometric kernel for configuration spaces mixing Euclidean and cyclic axes.

A configuration lives in R^t x T^r: the first ``t`` coordinates are plain
translational coordinates, the last ``r`` are rotational with period 1 and
canonical range [0, 1).  Distances on rotational axes wrap around, and the
whole space is treated as a product metric (L2 over per-axis distances).

Rotational axes are handled through the universal cover: R^d tiled by the
unit grid, every tile a copy of the torus.  Segments are geodesics in the
cover (``origin + t * disp``) and get cut into wrap-free pieces, each inside
a single tile, so that downstream code can run ordinary Euclidean
subroutines on them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

import numpy as np


class InvalidInputError(ValueError):
    """Raised for non-finite or structurally bad inputs."""


class SignatureMismatchError(ValueError):
    """Raised when two configurations come from different spaces."""


@dataclass(frozen=True)
class SpaceSignature:
    """Shape of the configuration space: t translational + r rotational axes.

    ``trans_bounds`` is the axis-aligned extent of the translational part
    (used for sampling and scene containment); rotational axes are always
    the unit-period interval [0, 1).
    """

    t: int
    r: int
    trans_bounds: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.t < 0 or self.r < 0 or self.t + self.r < 1:
            raise InvalidInputError(f"bad signature: t={self.t}, r={self.r}")
        if not self.trans_bounds and self.t > 0:
            object.__setattr__(self, "trans_bounds", ((0.0, 1.0),) * self.t)
        if len(self.trans_bounds) != self.t:
            raise InvalidInputError(
                f"trans_bounds has {len(self.trans_bounds)} entries for t={self.t}"
            )
        for lo, hi in self.trans_bounds:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidInputError(f"bad translational bounds ({lo}, {hi})")

    @property
    def d(self) -> int:
        return self.t + self.r

    def bounds_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Lower/upper sampling bounds over all d axes (rotational: [0, 1))."""
        lo = np.array([b[0] for b in self.trans_bounds] + [0.0] * self.r)
        hi = np.array([b[1] for b in self.trans_bounds] + [1.0] * self.r)
        return lo, hi


@dataclass(frozen=True)
class CPoint:
    """A configuration with rotational coordinates canonical in [0, 1)."""

    coords: tuple[float, ...]
    sig: SpaceSignature

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)


@dataclass(frozen=True)
class CSegment:
    """Geodesic in the cover: the segment origin -> origin + disp.

    ``disp`` is the lifted displacement; each rotational component lies in
    [-0.5, +0.5] (shortest wrap, ties resolved to +0.5) so that the
    Euclidean norm of ``disp`` equals the cyclic length of the segment.
    """

    origin: CPoint
    disp: tuple[float, ...]
    edge_id: Optional[Hashable] = None

    @property
    def length(self) -> float:
        return math.sqrt(sum(v * v for v in self.disp))

    def point_at(self, t: float) -> tuple[float, ...]:
        """Cover coordinates at parameter t (not canonicalized)."""
        return tuple(o + t * v for o, v in zip(self.origin.coords, self.disp))


@dataclass(frozen=True)
class SubSegment:
    """Wrap-free piece of a parent geodesic, contained in a single tile.

    ``t0``/``t1`` give the parameter interval of the parent this piece
    covers; coordinates are shifted into the base tile [0, 1]^r.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    parent_edge: Optional[Hashable]
    t0: float
    t1: float

    @property
    def length(self) -> float:
        return math.sqrt(sum((y - x) ** 2 for x, y in zip(self.a, self.b)))

    def bounds(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        lo = tuple(min(x, y) for x, y in zip(self.a, self.b))
        hi = tuple(max(x, y) for x, y in zip(self.a, self.b))
        return lo, hi


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned box; rotational extent must fit inside one tile."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise InvalidInputError("Aabb with lo > hi")


@dataclass(frozen=True)
class Hit:
    """Result of a closest-point query: distance, witness point, parameter."""

    distance: float
    point: CPoint
    param: float


def normalize(raw: Sequence[float], sig: SpaceSignature) -> CPoint:
    """Canonicalize a raw d-vector: rotational coords mapped to [0, 1).

    Idempotent; translational coordinates pass through unchanged.
    """
    vals = [float(x) for x in raw]
    if len(vals) != sig.d:
        raise InvalidInputError(f"expected {sig.d} coords, got {len(vals)}")
    if not all(math.isfinite(x) for x in vals):
        raise InvalidInputError(f"non-finite coordinates: {vals}")
    for i in range(sig.t, sig.d):
        v = vals[i] - math.floor(vals[i])
        if v >= 1.0:  # fractional part of a tiny negative rounds up to 1.0
            v -= 1.0
        vals[i] = v
    return CPoint(tuple(vals), sig)


def cyclic_dist_1d(a: float, b: float) -> float:
    """Distance on the unit-period circle between canonical coordinates."""
    dd = abs(b - a)
    return min(dd, 1.0 - dd)


def _check_same_sig(p: CPoint, q: CPoint) -> None:
    if p.sig != q.sig:
        raise SignatureMismatchError(f"{p.sig} vs {q.sig}")


def dist_point_point(p: CPoint, q: CPoint) -> float:
    """Product-metric distance: Euclidean axes plus cyclic axes, combined L2."""
    _check_same_sig(p, q)
    sig = p.sig
    acc = 0.0
    for i in range(sig.t):
        dd = q.coords[i] - p.coords[i]
        acc += dd * dd
    for i in range(sig.t, sig.d):
        dd = cyclic_dist_1d(p.coords[i], q.coords[i])
        acc += dd * dd
    return math.sqrt(acc)


def nearest_lift(q: CPoint, anchor: CPoint) -> tuple[float, ...]:
    """Representative of q in the cover closest to anchor.

    Each rotational coordinate is shifted by one of {-1, 0, +1}; distance
    ties prefer the smaller |shift|, then the shift -1.
    """
    _check_same_sig(q, anchor)
    sig = q.sig
    out = list(q.coords)
    for i in range(sig.t, sig.d):
        qi, ai = q.coords[i], anchor.coords[i]
        _, _, m = min((abs(qi + m - ai), abs(m), m) for m in (-1, 0, 1))
        out[i] = qi + m
    return tuple(out)


def geodesic(a: CPoint, b: CPoint) -> CSegment:
    """Shortest segment a -> b in the cover; rotational wrap ties go to +0.5."""
    _check_same_sig(a, b)
    lift = nearest_lift(b, a)
    disp = [lb - la for la, lb in zip(a.coords, lift)]
    for i in range(a.sig.t, a.sig.d):
        if disp[i] == -0.5:
            disp[i] = 0.5
    return CSegment(a, tuple(disp))


def split_segment(s: CSegment) -> list[SubSegment]:
    """Cut a geodesic at integer rotational hyperplanes into tile-contained pieces.

    Pieces are ordered by parameter, partition [0, 1], and are shifted into
    the base tile.  A shortest geodesic yields at most r + 1 pieces;
    zero-length pieces from boundary or simultaneous crossings are dropped.
    """
    sig = s.origin.sig
    o, v = s.origin.coords, s.disp
    cuts = set()
    for i in range(sig.t, sig.d):
        vi = v[i]
        if vi == 0.0:
            continue
        boundary = 1.0 if vi > 0.0 else 0.0
        tt = (boundary - o[i]) / vi
        if 0.0 < tt < 1.0:
            cuts.add(tt)
    ts = [0.0] + sorted(cuts) + [1.0]
    pieces = []
    for t0, t1 in zip(ts, ts[1:]):
        if t1 <= t0:
            continue
        tm = 0.5 * (t0 + t1)
        pa = [o[j] + t0 * v[j] for j in range(sig.d)]
        pb = [o[j] + t1 * v[j] for j in range(sig.d)]
        for i in range(sig.t, sig.d):
            k = math.floor(o[i] + tm * v[i])
            if k != 0:
                pa[i] -= k
                pb[i] -= k
        pieces.append(SubSegment(tuple(pa), tuple(pb), s.edge_id, t0, t1))
    return pieces


def _euclid_point_segment(
    px: Sequence[float], a: Sequence[float], v: Sequence[float], vv: float
) -> tuple[float, float]:
    """Plain Euclidean point-to-segment distance; returns (distance, param)."""
    if vv == 0.0:
        dist = math.sqrt(sum((x - y) ** 2 for x, y in zip(px, a)))
        return dist, 0.0
    dot = sum((x - y) * w for x, y, w in zip(px, a, v))
    tt = dot / vv
    if tt < 0.0:
        tt = 0.0
    elif tt > 1.0:
        tt = 1.0
    acc = 0.0
    for x, y, w in zip(px, a, v):
        dd = x - (y + tt * w)
        acc += dd * dd
    return math.sqrt(acc), tt


def _dist_param_subsegment(
    pc: Sequence[float], t: int, d: int, a: Sequence[float], b: Sequence[float]
) -> tuple[float, float]:
    """Distance/parameter core of the cell-walking kernel (no witness point).

    Written with explicit loops over plain floats; this is the innermost
    operation of every index query.
    """
    v = [b[i] - a[i] for i in range(d)]
    vv = 0.0
    for w in v:
        vv += w * w
    cuts: list[float] = []
    for i in range(t, d):
        vi = v[i]
        if vi == 0.0:
            continue
        rel = pc[i] - a[i]
        tt = (rel - 0.5) / vi
        if 0.0 < tt < 1.0:
            cuts.append(tt)
        tt = (rel + 0.5) / vi
        if 0.0 < tt < 1.0:
            cuts.append(tt)
    cuts.sort()
    best_dist = math.inf
    best_t = 0.0
    seen: set[tuple[int, ...]] = set()
    lo = 0.0
    for cut_idx in range(len(cuts) + 1):
        hi = cuts[cut_idx] if cut_idx < len(cuts) else 1.0
        if hi <= lo:
            lo = hi
            continue
        tm = 0.5 * (lo + hi)
        lo = hi
        shift = tuple(
            math.floor(a[i] + tm * v[i] - pc[i] + 0.5) for i in range(t, d)
        )
        if shift in seen:
            continue
        seen.add(shift)
        if vv == 0.0:
            tt = 0.0
        else:
            dot = 0.0
            for i in range(t):
                dot += (pc[i] - a[i]) * v[i]
            for j in range(t, d):
                dot += (pc[j] + shift[j - t] - a[j]) * v[j]
            tt = dot / vv
            if tt < 0.0:
                tt = 0.0
            elif tt > 1.0:
                tt = 1.0
        acc = 0.0
        for i in range(t):
            dd = pc[i] - (a[i] + tt * v[i])
            acc += dd * dd
        for j in range(t, d):
            dd = pc[j] + shift[j - t] - (a[j] + tt * v[j])
            acc += dd * dd
        dist = math.sqrt(acc)
        if dist < best_dist:
            best_dist = dist
            best_t = tt
    return best_dist, best_t


def dist_point_subsegment(p: CPoint, s: SubSegment) -> Hit:
    """Exact cyclic distance from a point to a tile-contained piece.

    Walks the grid-Voronoi cells of the lifted copies of ``p`` crossed by
    the piece (at most one bisector crossing per rotational axis, so at
    most d + 1 cells) and takes the best Euclidean point-to-segment
    distance among the O(d) candidate lifts.
    """
    sig = p.sig
    dist, tt = _dist_param_subsegment(p.coords, sig.t, sig.d, s.a, s.b)
    q = [x + tt * (y - x) for x, y in zip(s.a, s.b)]
    return Hit(dist, normalize(q, sig), tt)


def dist_point_segment(p: CPoint, s: CSegment) -> Hit:
    """Cyclic point-to-geodesic distance via the tile-contained pieces."""
    best: Optional[Hit] = None
    for piece in split_segment(s):
        hit = dist_point_subsegment(p, piece)
        if best is None or hit.distance < best.distance:
            param = piece.t0 + hit.param * (piece.t1 - piece.t0)
            best = Hit(hit.distance, hit.point, param)
    assert best is not None
    return best


_MAX_ORACLE_R = 8


def dist_point_segment_oracle(p: CPoint, s: CSegment) -> Hit:
    """Brute-force ground truth: minimum over all 3^r lifts of the query.

    Enumerates every shift in {-1, 0, +1}^r of ``p`` against the cover
    segment and returns the exact minimum.  Testing oracle only; refuses
    r > 8 where the enumeration stops being cheap.
    """
    sig = p.sig
    if sig.r > _MAX_ORACLE_R:
        raise InvalidInputError(f"oracle limited to r <= {_MAX_ORACLE_R}, got {sig.r}")
    o, v = s.origin.coords, s.disp
    vv = sum(w * w for w in v)
    best_dist = math.inf
    best_t = 0.0
    for shift in itertools.product((-1, 0, 1), repeat=sig.r):
        px = list(p.coords)
        for j, m in enumerate(shift):
            if m:
                px[sig.t + j] += m
        dist, tt = _euclid_point_segment(px, o, v, vv)
        if dist < best_dist:
            best_dist, best_t = dist, tt
    q = [x + best_t * w for x, w in zip(o, v)]
    return Hit(best_dist, normalize(q, sig), best_t)


def _interval_dist(x: float, lo: float, hi: float) -> float:
    if x < lo:
        return lo - x
    if x > hi:
        return x - hi
    return 0.0


def dist_point_aabb(p: CPoint, box: Aabb) -> float:
    """Lower bound on the cyclic distance from p to anything inside the box.

    Per-axis point-to-interval distances combined by L2; rotational axes
    take the best of the {-1, 0, +1} wrap candidates, which is required for
    validity of the bound near the 0/1 seam.
    """
    sig = p.sig
    acc = 0.0
    for i in range(sig.t):
        dd = _interval_dist(p.coords[i], box.lo[i], box.hi[i])
        acc += dd * dd
    for i in range(sig.t, sig.d):
        x, lo, hi = p.coords[i], box.lo[i], box.hi[i]
        dd = min(
            _interval_dist(x, lo, hi),
            _interval_dist(x + 1.0, lo, hi),
            _interval_dist(x - 1.0, lo, hi),
        )
        acc += dd * dd
    return math.sqrt(acc)


def segment_aabb_intersect(s: SubSegment, box: Aabb) -> bool:
    """Slab test for a tile-contained piece against a box; touching counts."""
    t0, t1 = 0.0, 1.0
    for i in range(len(s.a)):
        ai, vi = s.a[i], s.b[i] - s.a[i]
        if vi == 0.0:
            if ai < box.lo[i] or ai > box.hi[i]:
                return False
            continue
        u0 = (box.lo[i] - ai) / vi
        u1 = (box.hi[i] - ai) / vi
        if u0 > u1:
            u0, u1 = u1, u0
        t0 = max(t0, u0)
        t1 = min(t1, u1)
        if t0 > t1:
            return False
    return True


# --- vectorized helpers -----------------------------------------------------


def batch_dist_to_point(pts: np.ndarray, q: CPoint) -> np.ndarray:
    """Product-metric distance from each row of ``pts`` to q (canonical rows)."""
    sig = q.sig
    diff = np.abs(pts - np.asarray(q.coords))
    if sig.r:
        rot = diff[:, sig.t :]
        diff[:, sig.t :] = np.minimum(rot, 1.0 - rot)
    return np.sqrt((diff * diff).sum(axis=1))


def batch_dist_points_to_piece(
    pts: np.ndarray, piece: SubSegment, sig: SpaceSignature
) -> np.ndarray:
    """Exact cyclic distance from many canonical points to one piece."""
    if sig.r > _MAX_ORACLE_R:
        raise InvalidInputError(f"limited to r <= {_MAX_ORACLE_R}, got {sig.r}")
    a = np.asarray(piece.a)
    v = np.asarray(piece.b) - a
    vv = float((v * v).sum())
    best = np.full(len(pts), np.inf)
    for shift in itertools.product((-1.0, 0.0, 1.0), repeat=sig.r):
        px = pts.copy()
        if sig.r:
            px[:, sig.t :] += np.asarray(shift)
        if vv == 0.0:
            dist = np.sqrt(((px - a) ** 2).sum(axis=1))
        else:
            tt = ((px - a) * v).sum(axis=1) / vv
            np.clip(tt, 0.0, 1.0, out=tt)
            proj = a + tt[:, None] * v
            dist = np.sqrt(((px - proj) ** 2).sum(axis=1))
        np.minimum(best, dist, out=best)
    return best


def batch_oracle_dist_to_pieces(
    p: CPoint, A: np.ndarray, B: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Exact cyclic distance from p to many tile-contained pieces at once.

    Independent of the cell-walking kernel: enumerates all 3^r lifts of p
    against every piece.  Returns (distances, piece params), each of shape
    (n_pieces,).
    """
    sig = p.sig
    if sig.r > _MAX_ORACLE_R:
        raise InvalidInputError(f"oracle limited to r <= {_MAX_ORACLE_R}, got {sig.r}")
    V = B - A
    vv = (V * V).sum(axis=1)
    safe_vv = np.where(vv > 0.0, vv, 1.0)
    best = np.full(A.shape[0], np.inf)
    best_t = np.zeros(A.shape[0])
    base = np.asarray(p.coords)
    for shift in itertools.product((-1.0, 0.0, 1.0), repeat=sig.r):
        px = base.copy()
        px[sig.t :] += np.asarray(shift)
        tt = ((px - A) * V).sum(axis=1) / safe_vv
        np.clip(tt, 0.0, 1.0, out=tt)
        proj = A + tt[:, None] * V
        dist = np.sqrt(((px - proj) ** 2).sum(axis=1))
        better = dist < best
        best[better] = dist[better]
        best_t[better] = tt[better]
    return best, best_t
