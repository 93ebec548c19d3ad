"""Scene tests: validity semantics, builtin geometry audits, file round-trips."""

import json
import math

import numpy as np
import pytest

from swathnn.cspace import SpaceSignature, geodesic, normalize
from swathnn.scenes import (
    BallRobot,
    Box,
    ConvexPolygon,
    PlanarRectRobot,
    PointRobot,
    Scene,
    SceneFormatError,
    ValidityChecker,
    builtin_scene,
    load_scene,
    save_scene,
)

R2 = SpaceSignature(2, 0, ((0.0, 10.0), (0.0, 10.0)))
R3 = SpaceSignature(3, 0, ((0.0, 10.0),) * 3)
SE2 = SpaceSignature(2, 1, ((0.0, 10.0), (0.0, 10.0)))


def gap_scene(gap: float, wall_thickness: float = 1.0) -> Scene:
    """Horizontal wall with a centered gap, for the planar-rect robot."""
    y0 = 5.0 - 0.5 * wall_thickness
    y1 = 5.0 + 0.5 * wall_thickness
    x0, x1 = 5.0 - 0.5 * gap, 5.0 + 0.5 * gap
    left = ConvexPolygon(((0.0, y0), (x0, y0), (x0, y1), (0.0, y1)))
    right = ConvexPolygon(((x1, y0), (10.0, y0), (10.0, y1), (x1, y1)))
    return Scene(
        "gap",
        SE2,
        PlanarRectRobot(2.0, 1.0),
        (left, right),
        normalize([5.0, 2.0, 0.0], SE2),
        normalize([5.0, 8.0, 0.0], SE2),
    )


def segment_invalid_somewhere(scene, a, b, steps=400):
    checker = ValidityChecker(scene)
    seg = geodesic(a, b)
    return any(
        not checker.is_valid(normalize(seg.point_at(t), scene.sig))
        for t in np.linspace(0.0, 1.0, steps)
    )


class TestValidity:
    def test_point_robot_inside_obstacle(self):
        scene = Scene(
            "one_box",
            R2,
            PointRobot(),
            (Box((4.0, 4.0), (6.0, 6.0)),),
            normalize([1.0, 1.0], R2),
            normalize([9.0, 9.0], R2),
        )
        checker = ValidityChecker(scene)
        assert not checker.is_valid(normalize([5.0, 5.0], R2))
        assert checker.is_valid(normalize([1.0, 1.0], R2))

    def test_empty_scene_always_valid(self):
        scene = builtin_scene("empty_box", d=2, t=2, r=0)
        checker = ValidityChecker(scene)
        rng = np.random.default_rng(1)
        assert all(
            checker.is_valid(normalize(rng.uniform(0, 10, 2), scene.sig))
            for _ in range(100)
        )

    def test_out_of_bounds_invalid(self):
        scene = builtin_scene("empty_box", d=2, t=2, r=0)
        checker = ValidityChecker(scene)
        assert not checker.is_valid(normalize([-0.5, 5.0], scene.sig))

    def test_ball_robot_clearance(self):
        scene = Scene(
            "ball",
            R2,
            BallRobot(0.5),
            (Box((4.0, 4.0), (6.0, 6.0)),),
            normalize([1.0, 1.0], R2),
            normalize([9.0, 9.0], R2),
        )
        checker = ValidityChecker(scene)
        assert not checker.is_valid(normalize([3.6, 5.0], R2))  # 0.4 < radius
        assert checker.is_valid(normalize([3.4, 5.0], R2))  # 0.6 > radius
        assert not checker.is_valid(normalize([3.5, 5.0], R2))  # touching

    def test_planar_rect_gap_instances(self):
        checker = ValidityChecker(gap_scene(0.9))
        sig = SE2
        # lengthwise at heading 0: the 2-unit extent straddles the 0.9 gap
        assert not checker.is_valid(normalize([5.0, 5.0, 0.0], sig))
        # the 1-unit cross-section cannot fit 0.9 either
        assert not checker.is_valid(normalize([5.0, 5.0, 0.25], sig))
        wide = ValidityChecker(gap_scene(1.1))
        # rotated a quarter turn the 1-unit side passes the 1.1 gap
        assert wide.is_valid(normalize([5.0, 5.0, 0.25], sig))
        assert not wide.is_valid(normalize([5.0, 5.0, 0.0], sig))

    def test_planar_rect_rotation_matters_via_sat(self):
        checker = ValidityChecker(gap_scene(1.1))
        sig = SE2
        # diagonal heading widens the x-extent beyond the gap again
        assert not checker.is_valid(normalize([5.0, 5.0, 0.125], sig))

    def test_counter_monotone(self):
        scene = builtin_scene("empty_box", d=2, t=2, r=0)
        checker = ValidityChecker(scene)
        p = normalize([5.0, 5.0], scene.sig)
        for i in range(1, 11):
            checker.is_valid(p)
            assert checker.cd_calls == i


class TestBuiltins:
    def test_wall_with_hole_straight_blocked_hole_open(self):
        scene = builtin_scene("wall_with_hole", clearance=0.9)
        assert segment_invalid_somewhere(scene, scene.start, scene.goal)
        sig = scene.sig
        # rotate in place, cross through the slot lengthwise, rotate back
        waypoints = [
            scene.start,
            normalize([5.0, 2.0, 0.25], sig),
            normalize([5.0, 8.0, 0.25], sig),
            scene.goal,
        ]
        for a, b in zip(waypoints, waypoints[1:]):
            assert not segment_invalid_somewhere(scene, a, b)

    def test_empty_box_all_segments_valid(self):
        scene = builtin_scene("empty_box", d=3, t=3, r=0)
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = normalize(rng.uniform(0, 10, 3), scene.sig)
            b = normalize(rng.uniform(0, 10, 3), scene.sig)
            assert not segment_invalid_somewhere(scene, a, b, steps=50)

    def test_clutter_grid_count(self):
        scene = builtin_scene("clutter_grid", m=5, cube_side=0.8, missing_corners=2)
        assert len(scene.obstacles) == 123

    def test_clutter_grid_endpoints_in_missing_cells(self):
        scene = builtin_scene("clutter_grid")
        checker = ValidityChecker(scene)
        assert checker.is_valid(scene.start) and checker.is_valid(scene.goal)

    def test_z_corridor_blocked_straight_open_channel(self):
        scene = builtin_scene("z_corridor", clearance=1.4)
        assert segment_invalid_somewhere(scene, scene.start, scene.goal)
        sig = scene.sig
        waypoints = [
            scene.start,
            normalize([6.7, 3.0], sig),
            normalize([6.7, 10.0], sig),
            normalize([13.7, 10.0], sig),
            normalize([13.7, 17.0], sig),
            scene.goal,
        ]
        for a, b in zip(waypoints, waypoints[1:]):
            assert not segment_invalid_somewhere(scene, a, b)

    def test_deterministic_construction(self):
        a = builtin_scene("wall_with_hole")
        b = builtin_scene("wall_with_hole")
        assert a == b

    def test_unknown_name(self):
        with pytest.raises(SceneFormatError):
            builtin_scene("no_such_scene")


class TestSceneFiles:
    @pytest.mark.parametrize(
        "name,kwargs",
        [
            ("empty_box", {"d": 3, "t": 3, "r": 0}),
            ("empty_box", {"d": 6, "t": 3, "r": 3}),
            ("wall_with_hole", {}),
            ("z_corridor", {}),
            ("clutter_grid", {}),
        ],
    )
    def test_round_trip(self, tmp_path, name, kwargs):
        scene = builtin_scene(name, **kwargs)
        path = tmp_path / "scene.json"
        save_scene(scene, path)
        assert load_scene(path) == scene

    def test_missing_field_named(self, tmp_path):
        scene = builtin_scene("empty_box", d=2, t=2, r=0)
        path = tmp_path / "bad.json"
        save_scene(scene, path)
        doc = json.loads(path.read_text())
        del doc["robot"]
        path.write_text(json.dumps(doc))
        with pytest.raises(SceneFormatError, match="robot"):
            load_scene(path)

    def test_out_of_bounds_start_rejected(self, tmp_path):
        scene = builtin_scene("empty_box", d=2, t=2, r=0)
        path = tmp_path / "bad.json"
        save_scene(scene, path)
        doc = json.loads(path.read_text())
        doc["start"] = [-5.0, 5.0]
        path.write_text(json.dumps(doc))
        with pytest.raises(SceneFormatError, match="start"):
            load_scene(path)

    def test_parse_error_has_location(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SceneFormatError, match="line"):
            load_scene(path)
