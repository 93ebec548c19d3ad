"""Roadmap tests: graph edits, both neighborhood finders, splits, paths."""

import io
import math

import numpy as np
import pytest

from _oracles import LinearScanIndex
from swathnn.cspace import SpaceSignature, dist_point_point, geodesic, normalize, split_segment
from swathnn.roadmap import Roadmap
from swathnn.segment_tree import TreeParams

T2 = SpaceSignature(0, 2)
R2 = SpaceSignature(2, 0, ((0.0, 10.0), (0.0, 10.0)))


def make_random_roadmap(rng, sig, n_vertices, n_edges, nf_mode="edge"):
    rm = Roadmap(sig, nf_mode, TreeParams())
    lo, hi = sig.bounds_arrays()
    for _ in range(n_vertices):
        rm.add_vertex(normalize(lo + rng.random(sig.d) * (hi - lo), sig))
    added = 0
    while added < n_edges:
        u, v = rng.integers(0, n_vertices, 2)
        u, v = int(u), int(v)
        if u == v or rm.has_edge(u, v):
            continue
        rm.add_edge(u, v)
        added += 1
    return rm


class TestEdits:
    def test_edge_length_is_metric_distance(self):
        rm = Roadmap(T2, "edge")
        u = rm.add_vertex(normalize([0.9, 0.1], T2))
        v = rm.add_vertex(normalize([0.1, 0.2], T2))
        eid = rm.add_edge(u, v)
        _, _, _, length = rm.edge(eid)
        assert length == pytest.approx(
            dist_point_point(rm.vertex(u), rm.vertex(v)), abs=1e-12
        )

    def test_duplicate_edge_rejected(self):
        rm = Roadmap(R2, "vertex")
        u = rm.add_vertex(normalize([1.0, 1.0], R2))
        v = rm.add_vertex(normalize([2.0, 2.0], R2))
        rm.add_edge(u, v)
        with pytest.raises(ValueError):
            rm.add_edge(v, u)

    def test_self_loop_and_unknown_vertex(self):
        rm = Roadmap(R2, "vertex")
        u = rm.add_vertex(normalize([1.0, 1.0], R2))
        with pytest.raises(ValueError):
            rm.add_edge(u, u)
        with pytest.raises(KeyError):
            rm.add_edge(u, 99)

    def test_wrapping_edge_feeds_index_pieces(self):
        rm = Roadmap(T2, "edge")
        u = rm.add_vertex(normalize([0.8, 0.7], T2))
        v = rm.add_vertex(normalize([0.2, 0.1], T2))
        rm.add_edge(u, v)
        seg = geodesic(rm.vertex(u), rm.vertex(v))
        st = rm.index.stats()
        assert st.buffer_pieces == len(split_segment(seg)) >= 2


class TestNearest:
    def test_single_vertex(self):
        rm = Roadmap(T2, "edge")
        rm.add_vertex(normalize([0.1, 0.9], T2))
        got = rm.nearest(normalize([0.9, 0.1], T2), 1)
        assert got[0].kind == "vertex"
        assert got[0].distance == pytest.approx(math.sqrt(0.04 + 0.04), abs=1e-12)

    def test_interior_beats_vertices_above_midpoint(self):
        for mode in ("vertex", "edge"):
            rm = Roadmap(R2, mode)
            u = rm.add_vertex(normalize([4.0, 5.0], R2))
            v = rm.add_vertex(normalize([6.0, 5.0], R2))
            rm.add_edge(u, v)
            q = normalize([5.0, 5.3], R2)
            got = rm.nearest(q, 1)[0]
            if mode == "edge":
                assert got.kind == "edge_interior"
                assert got.param == pytest.approx(0.5, abs=1e-9)
                assert got.distance == pytest.approx(0.3, abs=1e-12)
            else:
                assert got.kind == "vertex"
                assert got.distance == pytest.approx(math.hypot(1.0, 0.3), abs=1e-12)

    def test_edge_mode_dominates_vertex_mode(self):
        rng = np.random.default_rng(107)
        for trial in range(100):
            n_v = int(rng.integers(2, 12))
            n_e = int(rng.integers(1, min(n_v * (n_v - 1) // 2, 14) + 1))
            seed_state = rng.integers(0, 2**32)
            rm_e = make_random_roadmap(
                np.random.default_rng(seed_state), T2, n_v, n_e, "edge"
            )
            rm_v = make_random_roadmap(
                np.random.default_rng(seed_state), T2, n_v, n_e, "vertex"
            )
            q = normalize(rng.random(2), T2)
            de = rm_e.nearest(q, 1)[0].distance
            dv = rm_v.nearest(q, 1)[0].distance
            assert de <= dv + 1e-12

    def test_param_snaps_to_vertices(self):
        rm = Roadmap(R2, "edge")
        u = rm.add_vertex(normalize([4.0, 5.0], R2))
        rm.add_vertex(normalize([6.0, 5.0], R2))
        rm.add_edge(u, 1)
        got = rm.nearest(normalize([3.0, 5.0], R2), 1)[0]
        assert got.kind == "vertex" and got.vertex_id == u

    def test_empty_roadmap_raises(self):
        rm = Roadmap(T2, "edge")
        with pytest.raises(ValueError):
            rm.nearest(normalize([0.5, 0.5], T2), 1)

    def test_edge_mode_bootstraps_from_vertices(self):
        rm = Roadmap(T2, "edge")
        rm.add_vertex(normalize([0.2, 0.2], T2))
        rm.add_vertex(normalize([0.8, 0.8], T2))
        got = rm.nearest(normalize([0.25, 0.2], T2), 1)
        assert got[0].kind == "vertex" and got[0].vertex_id == 0


class TestSplit:
    def test_halves(self):
        rm = Roadmap(R2, "edge")
        u = rm.add_vertex(normalize([0.0, 0.0], R2))
        v = rm.add_vertex(normalize([2.0, 0.0], R2))
        eid = rm.add_edge(u, v)
        before = rm.total_length()
        vid, (e1, e2) = rm.split_edge_at(eid, 0.5)
        assert rm.vertex(vid).coords == pytest.approx((1.0, 0.0))
        assert rm.edge(e1)[3] == pytest.approx(1.0)
        assert rm.edge(e2)[3] == pytest.approx(1.0)
        assert rm.total_length() == pytest.approx(before, rel=1e-9)

    def test_wrap_crossing_split_gives_wrap_free_children(self):
        rm = Roadmap(T2, "edge")
        u = rm.add_vertex(normalize([0.9, 0.5], T2))
        v = rm.add_vertex(normalize([0.1, 0.5], T2))
        eid = rm.add_edge(u, v)
        seg = geodesic(rm.vertex(u), rm.vertex(v))
        crossing = split_segment(seg)[0].t1
        _, (e1, e2) = rm.split_edge_at(eid, crossing)
        for child in (e1, e2):
            _, _, cseg, _ = rm.edge(child)
            assert len(split_segment(cseg)) == 1

    def test_split_preserves_endpoint_degrees(self):
        rng = np.random.default_rng(109)
        rm = make_random_roadmap(rng, T2, 8, 10, "edge")
        eid = next(iter(rm.edges()))
        u, v, _, _ = rm.edge(eid)
        deg_u = len(rm._adj[u])
        deg_v = len(rm._adj[v])
        rm.split_edge_at(eid, 0.37)
        assert len(rm._adj[u]) == deg_u
        assert len(rm._adj[v]) == deg_v

    def test_rejects_boundary_params_and_dead_edges(self):
        rm = Roadmap(R2, "edge")
        u = rm.add_vertex(normalize([0.0, 0.0], R2))
        v = rm.add_vertex(normalize([2.0, 0.0], R2))
        eid = rm.add_edge(u, v)
        with pytest.raises(ValueError):
            rm.split_edge_at(eid, 0.0)
        rm.split_edge_at(eid, 0.5)
        with pytest.raises(KeyError):
            rm.split_edge_at(eid, 0.5)

    def test_index_coherent_after_splits(self):
        rng = np.random.default_rng(113)
        rm = make_random_roadmap(rng, T2, 10, 14, "edge")
        for _ in range(6):
            eid = sorted(rm.edges())[int(rng.integers(0, rm.n_edges))]
            rm.split_edge_at(eid, float(rng.uniform(0.2, 0.8)))
        oracle = LinearScanIndex(
            [(eid, rec[2]) for eid, rec in rm.edges().items()]
        )
        for _ in range(40):
            q = normalize(rng.random(2), T2)
            got = rm.index.knn(q, 3)
            want = oracle.knn(q, 3)
            assert [n.edge_id for n in got] == [eid for _, eid in want]
            assert [n.distance for n in got] == pytest.approx(
                [d for d, _ in want], abs=1e-9
            )


class TestSssp:
    def test_single_edge(self):
        rm = Roadmap(R2, "vertex")
        u = rm.add_vertex(normalize([0.0, 0.0], R2))
        v = rm.add_vertex(normalize([1.0, 0.0], R2))
        rm.add_edge(u, v)
        assert rm.sssp(u, v) == [u, v]

    def test_shorter_detour_wins(self):
        # no direct edge exists; of the two detours the flat one is shorter
        sig = SpaceSignature(2, 0, ((0.0, 100.0), (0.0, 100.0)))
        rm = Roadmap(sig, "vertex")
        a = rm.add_vertex(normalize([0.0, 0.0], sig))
        b = rm.add_vertex(normalize([5.0, 0.1], sig))  # ~10.0 total via b
        x = rm.add_vertex(normalize([5.0, 4.0], sig))  # ~12.8 total via x
        c = rm.add_vertex(normalize([10.0, 0.0], sig))
        for u, v in ((a, b), (b, c), (a, x), (x, c)):
            rm.add_edge(u, v)
        assert rm.sssp(a, c) == [a, b, c]

    def test_direct_edge_wins_when_present(self):
        sig = SpaceSignature(2, 0, ((0.0, 100.0), (0.0, 100.0)))
        rm = Roadmap(sig, "vertex")
        a = rm.add_vertex(normalize([0.0, 0.0], sig))
        b = rm.add_vertex(normalize([5.0, 3.0], sig))
        c = rm.add_vertex(normalize([10.0, 0.0], sig))
        for u, v in ((a, b), (b, c), (a, c)):
            rm.add_edge(u, v)
        assert rm.sssp(a, c) == [a, c]

    def test_disconnected_returns_none(self):
        rm = Roadmap(R2, "vertex")
        u = rm.add_vertex(normalize([0.0, 0.0], R2))
        v = rm.add_vertex(normalize([1.0, 0.0], R2))
        assert rm.sssp(u, v) is None

    def test_unknown_ids(self):
        rm = Roadmap(R2, "vertex")
        u = rm.add_vertex(normalize([0.0, 0.0], R2))
        with pytest.raises(KeyError):
            rm.sssp(u, 5)


class TestSerialization:
    def test_round_trip(self):
        rng = np.random.default_rng(127)
        rm = make_random_roadmap(rng, SpaceSignature(1, 1), 9, 12, "edge")
        rm.split_edge_at(sorted(rm.edges())[0], 0.3)
        buf = io.StringIO()
        rm.save(buf)
        buf.seek(0)
        back = Roadmap.load(buf)
        assert back.sig == rm.sig
        assert back.n_vertices == rm.n_vertices
        assert back.n_edges == rm.n_edges
        assert back.total_length() == pytest.approx(rm.total_length(), rel=1e-12)
        for vid in range(rm.n_vertices):
            assert back.vertex(vid).coords == rm.vertex(vid).coords

    def test_rejects_bad_header(self):
        with pytest.raises(ValueError):
            Roadmap.load(io.StringIO("not a roadmap\n"))
