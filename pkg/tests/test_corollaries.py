"""Undirected and matrix corollaries, with independent numeric cross-checks."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from neighborhood_bound.corollaries import (
    NonnegMatrix,
    UndirectedGraph,
    corollary_matrix_check,
    corollary_undirected_check,
    gamma,
    gram_support,
    gram_support_numeric,
    matrix_from_csv_text,
    matrix_from_json_obj,
    matrix_to_json_dict,
    support,
    support_digraph,
    symmetrize,
    undirected_from_json_dict,
    undirected_to_json_dict,
)


def undirected_graphs(max_n=6, loops=False):
    def build(n, chosen):
        pairs = [(i, j) for i in range(n) for j in range(i if loops else i + 1, n)]
        return UndirectedGraph.from_pairs(
            n, [p for k, p in enumerate(pairs) if k in chosen]
        )

    return st.integers(min_value=0, max_value=max_n).flatmap(
        lambda n: st.sets(
            st.integers(min_value=0, max_value=max(n * n, 0)), max_size=n * n
        ).map(lambda chosen: build(n, chosen))
    )


def small_matrices(max_n=5):
    entry = st.sampled_from([0.0, 0.0, 0.5, 1.0, 2.5])
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(
            st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n
        ).map(NonnegMatrix.from_rows)
    )


class TestUndirectedGraph:
    def test_canonical_form_enforced(self):
        with pytest.raises(ValueError, match="canonical"):
            UndirectedGraph(3, frozenset({(2, 1)}))

    def test_from_pairs_canonicalizes(self):
        g = UndirectedGraph.from_pairs(3, [(2, 1)])
        assert g.edges == {(1, 2)}

    def test_duplicate_edge_detected_across_orientations(self):
        with pytest.raises(ValueError, match="duplicate"):
            UndirectedGraph.from_pairs(3, [(1, 2), (2, 1)])

    def test_symmetrize_doubles_edges_but_not_loops(self):
        g = UndirectedGraph.from_pairs(3, [(0, 1), (2, 2)])
        d = symmetrize(g)
        assert d.edges == {(0, 1), (1, 0), (2, 2)}


class TestGammaRelations:
    def test_triangle(self):
        g = UndirectedGraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        assert len(gamma(g, 1)) == 6
        # every ordered pair is joined by a 2-walk in a triangle
        assert len(gamma(g, 2)) == 9

    def test_star(self):
        g = UndirectedGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
        assert len(gamma(g, 1)) == 6
        # the three leaves form a full block through the hub, and the hub
        # reaches itself; hub-to-leaf needs a 2-walk that does not exist
        assert gamma(g, 2).pairs == {
            (i, j) for i in (1, 2, 3) for j in (1, 2, 3)
        } | {(0, 0)}

    def test_walk_length_validated(self):
        with pytest.raises(ValueError, match="walk length"):
            gamma(UndirectedGraph(1), 3)

    @given(undirected_graphs(loops=True))
    @settings(max_examples=200)
    def test_gamma2_matches_squared_adjacency_matrix(self, g):
        m = np.zeros((g.n, g.n), dtype=int)
        for i, j in g.edges:
            m[i, j] = 1
            m[j, i] = 1
        expected = {(int(i), int(j)) for i, j in np.argwhere(m @ m > 0)}
        assert gamma(g, 2).pairs == expected

    @given(undirected_graphs(loops=True))
    def test_corollary_holds(self, g):
        rep = corollary_undirected_check(g)
        assert rep.holds
        assert rep.g2_size >= rep.g1_size

    def test_json_round_trip(self):
        g = UndirectedGraph.from_pairs(4, [(0, 1), (2, 3)])
        obj = undirected_to_json_dict(g)
        assert obj["undirected"] is True
        assert undirected_from_json_dict(obj) == g

    def test_json_requires_undirected_flag(self):
        with pytest.raises(ValueError, match="undirected"):
            undirected_from_json_dict({"n": 2, "edges": []})


class TestNonnegMatrix:
    def test_rejects_negative_entry_naming_cell(self):
        with pytest.raises(ValueError, match=r"negative entry -3.0 at cell \(1, 0\)"):
            NonnegMatrix.from_rows([[0, 1], [-3, 0]])

    def test_rejects_denormal_positive_entry(self):
        with pytest.raises(ValueError, match="cell"):
            NonnegMatrix.from_rows([[1e-15]])

    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            NonnegMatrix.from_rows([[1, 2], [3]])

    def test_support_positions(self):
        a = NonnegMatrix.from_rows([[0, 1], [0, 0]])
        assert support(a).pairs == {(0, 1)}
        assert support_digraph(a).edges == {(0, 1)}

    def test_worked_example(self):
        a = NonnegMatrix.from_rows([[0, 1], [0, 0]])
        rep = corollary_matrix_check(a)
        assert (rep.gram_size, rep.supp_size, rep.holds) == (2, 1, True)

    @given(small_matrices())
    @settings(max_examples=300)
    def test_symbolic_and_numeric_gram_supports_agree(self, a):
        assert gram_support(a) == gram_support_numeric(a)

    @given(small_matrices())
    def test_corollary_holds(self, a):
        rep = corollary_matrix_check(a)
        assert rep.holds

    def test_gram_support_of_permutation_matrix(self):
        # A*Aᵗ = Aᵗ*A = I for a permutation matrix, so the gram support is
        # exactly the diagonal and the inequality is tight
        a = NonnegMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert gram_support(a).pairs == {(0, 0), (1, 1), (2, 2)}
        rep = corollary_matrix_check(a)
        assert rep.gram_size == rep.supp_size == 3


class TestMatrixParsing:
    def test_csv_happy_path(self):
        a = matrix_from_csv_text("0, 1.5\n2, 0\n")
        assert a.entries == ((0.0, 1.5), (2.0, 0.0))

    def test_csv_reports_line_number(self):
        with pytest.raises(ValueError, match="line 2"):
            matrix_from_csv_text("0,1\n0,x\n")

    def test_csv_empty(self):
        with pytest.raises(ValueError, match="empty"):
            matrix_from_csv_text("\n\n")

    def test_json_plain_array(self):
        a = matrix_from_json_obj([[0, 1], [1, 0]])
        assert a.n == 2

    def test_json_wrapped_object(self):
        a = matrix_from_json_obj({"matrix": [[0.5]]})
        assert a.entries == ((0.5,),)

    def test_json_rejects_other_objects(self):
        with pytest.raises(ValueError, match="matrix"):
            matrix_from_json_obj({"rows": [[1]]})
        with pytest.raises(ValueError, match="2D"):
            matrix_from_json_obj("nope")

    def test_round_trip(self):
        a = NonnegMatrix.from_rows([[0, 2], [1, 0]])
        assert matrix_from_json_obj(matrix_to_json_dict(a)) == a
