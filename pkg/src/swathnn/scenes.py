"""Benchmark environments, robot models, and validity checking.

Scenes pair a configuration-space signature with workspace obstacles and a
robot model.  Three robot kinds are supported:

* ``point`` / ``ball``: collide against axis-aligned boxes in the
  translational workspace; rotational axes (if any) are validity-free and
  only exercise the metric and the index.
* ``planar_rect``: a rigid rectangle in R^2 x T^1 whose heading is the
  rotational coordinate (one full turn has length 1); collides against
  convex polygons via separating-axis tests, so rotation genuinely couples
  into collision.

Every run owns a ValidityChecker whose call counter is the cost metric
planners report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .cspace import CPoint, InvalidInputError, SpaceSignature, normalize

SCENE_VERSION = 1


class SceneFormatError(ValueError):
    """Raised on malformed scene files, naming the offending field."""


@dataclass(frozen=True)
class Box:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lo) != len(self.hi) or any(
            l >= h for l, h in zip(self.lo, self.hi)
        ):
            raise SceneFormatError(f"degenerate obstacle box {self.lo}..{self.hi}")


@dataclass(frozen=True)
class ConvexPolygon:
    points: tuple[tuple[float, float], ...]  # counter-clockwise

    def __post_init__(self) -> None:
        if len(self.points) < 3:
            raise SceneFormatError("polygon needs at least 3 points")


Obstacle = Union[Box, ConvexPolygon]


@dataclass(frozen=True)
class PointRobot:
    kind: str = "point"


@dataclass(frozen=True)
class BallRobot:
    radius: float
    kind: str = "ball"


@dataclass(frozen=True)
class PlanarRectRobot:
    width: float
    height: float
    kind: str = "planar_rect"


Robot = Union[PointRobot, BallRobot, PlanarRectRobot]


@dataclass(frozen=True)
class Scene:
    name: str
    sig: SpaceSignature
    robot: Robot
    obstacles: tuple[Obstacle, ...]
    start: CPoint
    goal: CPoint

    def __post_init__(self) -> None:
        if isinstance(self.robot, PlanarRectRobot) and (
            self.sig.t != 2 or self.sig.r < 1
        ):
            raise SceneFormatError("planar_rect robot requires t=2, r>=1")


class ValidityChecker:
    """Collision/containment oracle with a monotone call counter."""

    def __init__(self, scene: Scene):
        self.scene = scene
        self.cd_calls = 0

    def is_valid(self, c: CPoint) -> bool:
        self.cd_calls += 1
        scene = self.scene
        sig = scene.sig
        x = c.coords
        robot = scene.robot
        if isinstance(robot, PlanarRectRobot):
            corners = _rect_corners(x[0], x[1], x[2], robot.width, robot.height)
            for cx, cy in corners:
                if not (
                    sig.trans_bounds[0][0] <= cx <= sig.trans_bounds[0][1]
                    and sig.trans_bounds[1][0] <= cy <= sig.trans_bounds[1][1]
                ):
                    return False
            for ob in scene.obstacles:
                pts = ob.points if isinstance(ob, ConvexPolygon) else _box_poly(ob)
                if _convex_overlap(corners, pts):
                    return False
            return True
        for i in range(sig.t):
            lo, hi = sig.trans_bounds[i]
            if not lo <= x[i] <= hi:
                return False
        if isinstance(robot, PointRobot):
            for ob in scene.obstacles:
                if all(ob.lo[i] <= x[i] <= ob.hi[i] for i in range(sig.t)):
                    return False
        else:  # ball
            r2 = robot.radius * robot.radius
            for ob in scene.obstacles:
                acc = 0.0
                for i in range(sig.t):
                    if x[i] < ob.lo[i]:
                        dd = ob.lo[i] - x[i]
                    elif x[i] > ob.hi[i]:
                        dd = x[i] - ob.hi[i]
                    else:
                        continue
                    acc += dd * dd
                if acc <= r2:
                    return False
        return True


def _rect_corners(x: float, y: float, theta: float, w: float, h: float):
    ang = 2.0 * math.pi * theta
    ca, sa = math.cos(ang), math.sin(ang)
    hw, hh = 0.5 * w, 0.5 * h
    ux, uy = ca * hw, sa * hw
    wx, wy = -sa * hh, ca * hh
    return (
        (x + ux + wx, y + uy + wy),
        (x - ux + wx, y - uy + wy),
        (x - ux - wx, y - uy - wy),
        (x + ux - wx, y + uy - wy),
    )


def _box_poly(box: Box) -> tuple[tuple[float, float], ...]:
    (x0, y0), (x1, y1) = box.lo, box.hi
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def _convex_overlap(a: Sequence[tuple[float, float]], b) -> bool:
    """Separating-axis test; touching counts as overlap (closed sets)."""
    for poly1, poly2 in ((a, b), (b, a)):
        n = len(poly1)
        for i in range(n):
            px, py = poly1[i]
            qx, qy = poly1[(i + 1) % n]
            nx, ny = py - qy, qx - px
            amin = min(nx * vx + ny * vy for vx, vy in a)
            amax = max(nx * vx + ny * vy for vx, vy in a)
            bmin = min(nx * vx + ny * vy for vx, vy in b)
            bmax = max(nx * vx + ny * vy for vx, vy in b)
            if amax < bmin or bmax < amin:
                return False
    return True


# --- builtin scenes -----------------------------------------------------------


def empty_box(d: int = 3, t: int = 3, r: int = 0, side: float = 10.0) -> Scene:
    """Obstacle-free box world with a point robot; any t + r = d."""
    if t + r != d:
        raise SceneFormatError(f"empty_box: t + r = {t + r} != d = {d}")
    sig = SpaceSignature(t, r, ((0.0, side),) * t)
    start = normalize([0.1 * side] * t + [0.1] * r, sig)
    goal = normalize([0.9 * side] * t + [0.6] * r, sig)
    return Scene("empty_box", sig, PointRobot(), (), start, goal)


def wall_with_hole(clearance: float = 0.9) -> Scene:
    """Planar rigid rectangle that must turn to fit through a wall slot.

    The 2 x 0.5 robot passes the slot only when oriented lengthwise along
    the wall normal; at heading 0 its 2-unit extent straddles the slot.
    """
    if not 0.5 < clearance < 2.0:
        raise SceneFormatError(f"wall_with_hole clearance {clearance} out of range")
    sig = SpaceSignature(2, 1, ((0.0, 10.0), (0.0, 10.0)))
    y0, y1 = 4.75, 5.25
    hx0, hx1 = 5.0 - 0.5 * clearance, 5.0 + 0.5 * clearance
    left = ConvexPolygon(((0.0, y0), (hx0, y0), (hx0, y1), (0.0, y1)))
    right = ConvexPolygon(((hx1, y0), (10.0, y0), (10.0, y1), (hx1, y1)))
    start = normalize([5.0, 2.0, 0.0], sig)
    goal = normalize([5.0, 8.0, 0.0], sig)
    return Scene(
        "wall_with_hole", sig, PlanarRectRobot(2.0, 0.5), (left, right), start, goal
    )


def z_corridor(clearance: float = 1.4) -> Scene:
    """Thick wall pierced by a Z-shaped corridor requiring two turns."""
    if not 0.2 <= clearance <= 2.0:
        raise SceneFormatError(f"z_corridor clearance {clearance} out of range")
    sig = SpaceSignature(2, 0, ((0.0, 20.0), (0.0, 20.0)))
    c = clearance
    ex0, ex1 = 6.0, 6.0 + c  # entry slot x-range (below the corridor)
    xx0, xx1 = 13.0, 13.0 + c  # exit slot x-range (above)
    ymid0, ymid1 = 10.0 - 0.5 * c, 10.0 + 0.5 * c
    obstacles = (
        Box((0.0, 9.0), (ex0, ymid0)),
        Box((ex1, 9.0), (20.0, ymid0)),
        Box((0.0, ymid0), (ex0, ymid1)),
        Box((xx1, ymid0), (20.0, ymid1)),
        Box((0.0, ymid1), (xx0, 11.0)),
        Box((xx1, ymid1), (20.0, 11.0)),
    )
    start = normalize([10.0, 3.0], sig)
    goal = normalize([10.0, 17.0], sig)
    return Scene("z_corridor", sig, PointRobot(), obstacles, start, goal)


_CORNER_ORDER = (
    (0, 0, 0),
    (1, 1, 1),
    (1, 0, 0),
    (0, 1, 1),
    (0, 1, 0),
    (1, 0, 1),
    (0, 0, 1),
    (1, 1, 0),
)


def clutter_grid(m: int = 5, cube_side: float = 0.8, missing_corners: int = 2) -> Scene:
    """m^3 grid of cubes with corner cells removed; task crosses the grid."""
    if m < 2 or not 1 <= missing_corners <= 8:
        raise SceneFormatError("clutter_grid needs m >= 2, 1 <= missing_corners <= 8")
    sig = SpaceSignature(3, 0, ((0.0, 10.0), (0.0, 10.0), (0.0, 10.0)))
    centers = [1.0 + 8.0 * i / (m - 1) for i in range(m)]
    missing = {
        tuple(c * (m - 1) for c in corner)
        for corner in _CORNER_ORDER[:missing_corners]
    }
    half = 0.5 * cube_side
    obstacles = []
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if (i, j, k) in missing:
                    continue
                cx, cy, cz = centers[i], centers[j], centers[k]
                obstacles.append(
                    Box((cx - half, cy - half, cz - half), (cx + half, cy + half, cz + half))
                )
    start = normalize([centers[0]] * 3, sig)
    goal = normalize([centers[m - 1]] * 3, sig)
    return Scene("clutter_grid", sig, PointRobot(), tuple(obstacles), start, goal)


_BUILTINS = {
    "empty_box": empty_box,
    "wall_with_hole": wall_with_hole,
    "z_corridor": z_corridor,
    "clutter_grid": clutter_grid,
}


def builtin_scene(name: str, **kwargs) -> Scene:
    if name not in _BUILTINS:
        raise SceneFormatError(
            f"unknown scene {name!r}; choose from {sorted(_BUILTINS)}"
        )
    scene = _BUILTINS[name](**kwargs)
    _validate_endpoints(scene)
    return scene


def _validate_endpoints(scene: Scene) -> None:
    probe = ValidityChecker(scene)
    if not probe.is_valid(scene.start):
        raise SceneFormatError(f"scene {scene.name!r}: start is invalid")
    if not probe.is_valid(scene.goal):
        raise SceneFormatError(f"scene {scene.name!r}: goal is invalid")


# --- scene files ----------------------------------------------------------------


def save_scene(scene: Scene, path) -> None:
    doc = {
        "scene_version": SCENE_VERSION,
        "name": scene.name,
        "signature": {
            "t": scene.sig.t,
            "r": scene.sig.r,
            "bounds": [list(b) for b in scene.sig.trans_bounds],
        },
        "robot": _robot_doc(scene.robot),
        "obstacles": [_obstacle_doc(ob) for ob in scene.obstacles],
        "start": list(scene.start.coords),
        "goal": list(scene.goal.coords),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _robot_doc(robot: Robot) -> dict:
    if isinstance(robot, PointRobot):
        return {"kind": "point"}
    if isinstance(robot, BallRobot):
        return {"kind": "ball", "radius": robot.radius}
    return {"kind": "planar_rect", "width": robot.width, "height": robot.height}


def _obstacle_doc(ob: Obstacle) -> dict:
    if isinstance(ob, Box):
        return {"kind": "box", "lo": list(ob.lo), "hi": list(ob.hi)}
    return {"kind": "polygon", "points": [list(p) for p in ob.points]}


def _need(doc: dict, field: str, where: str):
    if field not in doc:
        raise SceneFormatError(f"{where}: missing required field {field!r}")
    return doc[field]


def load_scene(path) -> Scene:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SceneFormatError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    version = _need(doc, "scene_version", str(path))
    if version != SCENE_VERSION:
        raise SceneFormatError(f"{path}: unsupported scene_version {version}")
    sig_doc = _need(doc, "signature", str(path))
    sig = SpaceSignature(
        _need(sig_doc, "t", "signature"),
        _need(sig_doc, "r", "signature"),
        tuple(tuple(b) for b in _need(sig_doc, "bounds", "signature")),
    )
    robot_doc = _need(doc, "robot", str(path))
    kind = _need(robot_doc, "kind", "robot")
    if kind == "point":
        robot: Robot = PointRobot()
    elif kind == "ball":
        robot = BallRobot(_need(robot_doc, "radius", "robot"))
    elif kind == "planar_rect":
        robot = PlanarRectRobot(
            _need(robot_doc, "width", "robot"), _need(robot_doc, "height", "robot")
        )
    else:
        raise SceneFormatError(f"robot: unknown kind {kind!r}")
    obstacles = []
    for i, ob in enumerate(doc.get("obstacles", [])):
        okind = _need(ob, "kind", f"obstacles[{i}]")
        if okind == "box":
            obstacles.append(
                Box(
                    tuple(_need(ob, "lo", f"obstacles[{i}]")),
                    tuple(_need(ob, "hi", f"obstacles[{i}]")),
                )
            )
        elif okind == "polygon":
            obstacles.append(
                ConvexPolygon(
                    tuple(tuple(p) for p in _need(ob, "points", f"obstacles[{i}]"))
                )
            )
        else:
            raise SceneFormatError(f"obstacles[{i}]: unknown kind {okind!r}")
    try:
        start = normalize(_need(doc, "start", str(path)), sig)
        goal = normalize(_need(doc, "goal", str(path)), sig)
    except InvalidInputError as exc:
        raise SceneFormatError(f"{path}: {exc}") from exc
    scene = Scene(doc.get("name", "unnamed"), sig, robot, tuple(obstacles), start, goal)
    _validate_endpoints(scene)
    return scene
