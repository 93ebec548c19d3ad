"""Index tests: build structure, buffered edits, kNN exactness and dedup."""

import math

import numpy as np
import pytest

from _oracles import LinearScanIndex
from swathnn.cspace import SpaceSignature, geodesic, normalize
from swathnn.segment_tree import SegmentTree, TreeParams

T2 = SpaceSignature(0, 2)
R2T1 = SpaceSignature(2, 1, ((0.0, 1.0), (0.0, 1.0)))

EXACT = TreeParams(epsilon=0.0)


def random_point(rng, sig):
    return normalize(rng.random(sig.d), sig)


def random_segments(rng, sig, n):
    return [
        (i, geodesic(random_point(rng, sig), random_point(rng, sig)))
        for i in range(n)
    ]


def leaf_audit(tree):
    """Yields (leaf_size, parent_size) for every leaf below an internal node."""
    stack = [(tree._root, None)]
    while stack:
        node, parent_size = stack.pop()
        if node.items is not None:
            yield len(node.items), parent_size
        else:
            size = sum(_count(c) for c in node.children)
            stack.extend((c, size) for c in node.children)


def _count(node):
    if node.items is not None:
        return len(node.items)
    return sum(_count(c) for c in node.children)


class TestBuild:
    def test_empty_input(self):
        tree = SegmentTree.build([], EXACT, T2)
        assert tree.knn(normalize([0.5, 0.5], T2), 3) == []
        st = tree.stats()
        assert st.depth == 0 and len(st.leaf_sizes) == 1

    def test_wrapping_segment_piece_count(self):
        seg = geodesic(normalize([0.8, 0.7], T2), normalize([0.2, 0.1], T2))
        tree = SegmentTree.build([(0, seg)], EXACT, T2)
        assert 2 <= tree.stats().stored_pieces <= 3

    def test_leaf_threshold_audit(self):
        rng = np.random.default_rng(41)
        params = TreeParams(n_leaf_thresh=8)
        tree = SegmentTree.build(random_segments(rng, R2T1, 1000), params, R2T1)
        for size, parent_size in leaf_audit(tree):
            if size > 8:
                assert parent_size is not None
                assert size > params.n_leaf_ratio * parent_size or size == parent_size

    def test_boxes_tight(self):
        rng = np.random.default_rng(43)
        tree = SegmentTree.build(random_segments(rng, T2, 50), EXACT, T2)
        stack = [tree._root]
        while stack:
            node = stack.pop()
            ids = []
            inner = [node]
            while inner:
                nd = inner.pop()
                if nd.items is not None:
                    ids.extend(nd.items)
                else:
                    inner.extend(nd.children)
            for pid in ids:
                pc = tree._pieces[pid]
                for i in range(2):
                    assert node.lo[i] <= min(pc.a[i], pc.b[i]) + 1e-15
                    assert max(pc.a[i], pc.b[i]) <= node.hi[i] + 1e-15
            if node.children:
                stack.extend(node.children)


class TestEdits:
    def test_buffer_is_query_visible(self):
        rng = np.random.default_rng(47)
        tree = SegmentTree.build(random_segments(rng, T2, 10), EXACT, T2)
        new = geodesic(normalize([0.51, 0.5], T2), normalize([0.55, 0.5], T2))
        tree.insert(99, new)
        assert tree.stats().buffer_edges == 1
        got = tree.knn(normalize([0.52, 0.5], T2), 1)
        assert got[0].edge_id == 99

    def test_rebuild_fires_at_n_buff(self):
        rng = np.random.default_rng(53)
        params = TreeParams(n_buff=5)
        tree = SegmentTree.build([], params, T2)
        for i in range(4):
            tree.insert(i, geodesic(random_point(rng, T2), random_point(rng, T2)))
        assert tree.stats().buffer_edges == 4
        tree.insert(4, geodesic(random_point(rng, T2), random_point(rng, T2)))
        st = tree.stats()
        assert st.buffer_edges == 0
        assert st.stored_pieces >= 5

    def test_duplicate_insert_rejected(self):
        tree = SegmentTree.build([], EXACT, T2)
        seg = geodesic(normalize([0.1, 0.1], T2), normalize([0.2, 0.2], T2))
        tree.insert(7, seg)
        with pytest.raises(ValueError):
            tree.insert(7, seg)

    def test_insert_after_remove_same_id(self):
        rng = np.random.default_rng(59)
        tree = SegmentTree.build(random_segments(rng, T2, 6), EXACT, T2)
        tree.remove(3)
        fresh = geodesic(normalize([0.4, 0.4], T2), normalize([0.45, 0.4], T2))
        tree.insert(3, fresh)
        got = tree.knn(normalize([0.42, 0.41], T2), 1)
        assert got[0].edge_id == 3
        assert got[0].distance < 0.05

    def test_remove_hides_and_rebuild_drops(self):
        rng = np.random.default_rng(61)
        segs = random_segments(rng, T2, 20)
        tree = SegmentTree.build(segs, EXACT, T2)
        before = tree.stats().stored_pieces
        victim_pieces = sum(1 for p in tree._pieces if p.parent_edge == 5)
        tree.remove(5)
        for _ in range(30):
            q = random_point(rng, T2)
            assert all(n.edge_id != 5 for n in tree.knn(q, 20))
        tree.rebuild()
        assert tree.stats().stored_pieces == before - victim_pieces

    def test_remove_unknown_raises(self):
        tree = SegmentTree.build([], EXACT, T2)
        with pytest.raises(KeyError):
            tree.remove(0)

    def test_remove_all_empties_results(self):
        rng = np.random.default_rng(67)
        tree = SegmentTree.build(random_segments(rng, T2, 5), EXACT, T2)
        for i in range(5):
            tree.remove(i)
        assert tree.knn(random_point(rng, T2), 3) == []


class TestKnn:
    def test_three_disjoint_edges(self):
        sig = SpaceSignature(2, 0)
        segs = [
            (0, geodesic(normalize([0.0, 0.0], sig), normalize([1.0, 0.0], sig))),
            (1, geodesic(normalize([0.0, 2.0], sig), normalize([1.0, 2.0], sig))),
            (2, geodesic(normalize([0.0, 5.0], sig), normalize([1.0, 5.0], sig))),
        ]
        tree = SegmentTree.build(segs, EXACT, sig)
        got = tree.knn(normalize([0.5, 1.9], sig), 1)
        assert got[0].edge_id == 1
        assert got[0].distance == pytest.approx(0.1, abs=1e-12)
        assert got[0].param == pytest.approx(0.5, abs=1e-9)

    def test_dedup_single_edge(self):
        seg = geodesic(normalize([0.8, 0.7], T2), normalize([0.2, 0.1], T2))
        tree = SegmentTree.build([(0, seg)], EXACT, T2)
        assert tree.stats().stored_pieces >= 2
        got = tree.knn(normalize([0.5, 0.5], T2), 2)
        assert len(got) == 1

    @pytest.mark.parametrize("sig", [T2, R2T1, SpaceSignature(1, 2)])
    def test_matches_linear_scan(self, sig):
        rng = np.random.default_rng(71)
        segs = random_segments(rng, sig, 120)
        tree = SegmentTree.build(segs, EXACT, sig)
        oracle = LinearScanIndex(segs)
        for _ in range(50):
            q = random_point(rng, sig)
            got = tree.knn(q, 5)
            want = oracle.knn(q, 5)
            assert [n.edge_id for n in got] == [eid for _, eid in want]
            assert [n.distance for n in got] == pytest.approx(
                [d for d, _ in want], abs=1e-9
            )

    def test_results_sorted_and_distinct(self):
        rng = np.random.default_rng(73)
        segs = random_segments(rng, T2, 60)
        tree = SegmentTree.build(segs, EXACT, T2)
        got = tree.knn(random_point(rng, T2), 10)
        dists = [n.distance for n in got]
        assert dists == sorted(dists)
        assert len({n.edge_id for n in got}) == len(got)

    def test_fewer_edges_than_k(self):
        rng = np.random.default_rng(79)
        segs = random_segments(rng, T2, 3)
        tree = SegmentTree.build(segs, EXACT, T2)
        assert len(tree.knn(random_point(rng, T2), 10)) == 3

    def test_approximate_rank_bound(self):
        rng = np.random.default_rng(83)
        segs = random_segments(rng, R2T1, 200)
        eps = 0.05
        tree = SegmentTree.build(segs, TreeParams(epsilon=eps), R2T1)
        oracle = LinearScanIndex(segs)
        for _ in range(40):
            q = random_point(rng, R2T1)
            got = tree.knn(q, 5)
            want = oracle.knn(q, 5)
            for n, (d, _) in zip(got, want):
                assert n.distance <= (1.0 + eps) * d + 1e-12


class TestRebuild:
    def test_invariance_of_results(self):
        rng = np.random.default_rng(89)
        segs = random_segments(rng, T2, 40)
        tree = SegmentTree.build(segs, EXACT, T2)
        queries = [random_point(rng, T2) for _ in range(20)]
        before = [tree.knn(q, 4) for q in queries]
        tree.rebuild()
        after = [tree.knn(q, 4) for q in queries]
        for b, a in zip(before, after):
            assert [n.edge_id for n in b] == [n.edge_id for n in a]
            assert [n.distance for n in b] == [n.distance for n in a]

    def test_rebuild_on_empty_is_noop(self):
        tree = SegmentTree.build([], EXACT, T2)
        tree.rebuild()
        assert tree.stats().stored_pieces == 0

    def test_piece_conservation(self):
        rng = np.random.default_rng(97)
        segs = random_segments(rng, T2, 30)
        tree = SegmentTree.build(segs, TreeParams(n_buff=1000), T2)
        initial = tree.stats().stored_pieces
        added = random_segments(rng, T2, 10)
        add_pieces = 0
        for i, (eid, seg) in enumerate(added):
            tree.insert(100 + i, seg)
        add_pieces = tree.stats().buffer_pieces
        removed_pieces = sum(1 for p in tree._pieces if p.parent_edge in (0, 1, 2))
        for eid in (0, 1, 2):
            tree.remove(eid)
        tree.rebuild()
        assert tree.stats().stored_pieces == initial + add_pieces - removed_pieces


class TestDeterminism:
    def test_identical_builds(self):
        def run():
            rng = np.random.default_rng(101)
            segs = random_segments(rng, R2T1, 80)
            tree = SegmentTree.build(segs, EXACT, R2T1)
            qs = [random_point(rng, R2T1) for _ in range(10)]
            return tree.stats(), [tree.knn(q, 3) for q in qs]

        s1, r1 = run()
        s2, r2 = run()
        assert s1 == s2
        assert r1 == r2
