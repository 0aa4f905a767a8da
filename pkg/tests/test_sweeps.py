"""Randomized and exhaustive sweeps: determinism and aggregate counts."""

import pytest

from neighborhood_bound.groups import builtin_group
from neighborhood_bound.randgen import random_digraph, random_digraphs, random_sparse_matrix
from neighborhood_bound.sweeps import fuzz_digraphs, grading_sweep, undirected_sweep

import random


class TestRandomGeneration:
    def test_digraph_stream_is_seed_deterministic(self):
        a = random_digraphs(seed=11, count=20, n=5, edge_prob=0.3)
        b = random_digraphs(seed=11, count=20, n=5, edge_prob=0.3)
        assert a == b
        c = random_digraphs(seed=12, count=20, n=5, edge_prob=0.3)
        assert a != c

    def test_edge_prob_extremes(self):
        rng = random.Random(0)
        empty = random_digraph(rng, 4, 0.0)
        full = random_digraph(rng, 4, 1.0)
        assert empty.edge_count == 0
        assert full.edge_count == 16

    def test_no_loops_flag(self):
        rng = random.Random(3)
        g = random_digraph(rng, 6, 1.0, allow_loops=False)
        assert g.edge_count == 30
        assert all(i != j for i, j in g.edges)

    def test_sparse_matrix_entries(self):
        rng = random.Random(5)
        rows = random_sparse_matrix(rng, 8, zero_prob=0.7)
        assert len(rows) == 8 and all(len(r) == 8 for r in rows)
        for row in rows:
            for x in row:
                assert x == 0.0 or 0.5 <= x <= 2.0


class TestFuzz:
    def test_summary_counts(self):
        s = fuzz_digraphs(seed=7, count=50, n=5, edge_prob=0.4)
        assert s.count == 50
        assert s.holds == 50 and s.certified == 50
        assert s.violation_count == 0 and s.mismatch_count == 0
        assert s.ok

    def test_rejects_empty_run(self):
        with pytest.raises(ValueError, match="count"):
            fuzz_digraphs(seed=0, count=0, n=4, edge_prob=0.3)

    def test_worker_split_does_not_change_results(self):
        kwargs = dict(seed=123, count=80, n=6, edge_prob=0.35)
        one = fuzz_digraphs(workers=1, **kwargs)
        many = fuzz_digraphs(workers=8, **kwargs)
        assert one.to_json_dict() == many.to_json_dict()

    def test_json_shape(self):
        obj = fuzz_digraphs(seed=1, count=5, n=4, edge_prob=0.2).to_json_dict()
        assert obj["seed"] == 1
        assert obj["violations"] == []
        assert obj["cross_check_mismatches"] == []
        assert obj["ok"] is True


class TestUndirectedSweep:
    def test_counts_through_four_vertices(self):
        s = undirected_sweep(4)
        got = {n: (c.graphs, c.holds, c.equality) for n, c in s.per_n.items()}
        assert got == {
            0: (1, 1, 1),
            1: (1, 1, 1),
            2: (2, 2, 2),
            3: (8, 8, 4),
            4: (64, 64, 13),
        }
        assert s.total_graphs == 76
        assert s.violation_count == 0

    def test_worker_split_agrees(self):
        assert (
            undirected_sweep(4, workers=1).to_json_dict()
            == undirected_sweep(4, workers=8).to_json_dict()
        )

    def test_size_guard(self):
        with pytest.raises(ValueError):
            undirected_sweep(7)


class TestGradingSweep:
    def test_two_element_group(self):
        s = grading_sweep(builtin_group("C2"), 2, label="C2")
        assert s.group == "C2"
        assert s.subgroup_count == 2
        assert s.data_count == 12
        assert s.violation_count == 0

    def test_dihedral_group(self):
        s = grading_sweep(builtin_group("D3"), 2, label="D3")
        # six subgroups, each contributing 6 + 36 tuples
        assert s.subgroup_count == 6
        assert s.data_count == 252
        assert s.violation_count == 0

    def test_worker_split_agrees(self):
        g = builtin_group("Q8")
        assert (
            grading_sweep(g, 2, label="Q8", workers=1).to_json_dict()
            == grading_sweep(g, 2, label="Q8", workers=8).to_json_dict()
        )

    def test_budget_guard(self):
        with pytest.raises(Exception, match="budget"):
            grading_sweep(builtin_group("C4"), 9, label="C4")

    def test_lattice_guard(self):
        with pytest.raises(Exception, match="order"):
            grading_sweep(builtin_group("S5"), 1, label="S5")
