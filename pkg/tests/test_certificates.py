"""Certificate construction, replay verification, and tamper detection."""

import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from neighborhood_bound.certificates import (
    CertStep,
    Certificate,
    MalformedCertificate,
    StepKind,
    StepUnsound,
    build_certificate,
    certificate_from_json_dict,
    certificate_pair_relation,
    certificate_to_json_dict,
    exhaustive_verify,
    mutual_pairs_agree,
    oracle_check,
    tightness_scan,
    verify_certificate,
)
from neighborhood_bound.digraph import Digraph, mutual_pairs


def random_digraphs_strategy(max_n=5):
    def build(n, chosen):
        all_pairs = [(i, j) for i in range(n) for j in range(n)]
        return Digraph.from_pairs(n, [p for k, p in enumerate(all_pairs) if k in chosen])

    return st.integers(min_value=0, max_value=max_n).flatmap(
        lambda n: st.sets(
            st.integers(min_value=0, max_value=max(n * n - 1, 0)), max_size=n * n
        ).map(lambda chosen: build(n, chosen))
    )


class TestOracle:
    def test_three_cycle_is_tight(self):
        g = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
        rep = oracle_check(g)
        assert (rep.t_size, rep.e_size, rep.holds) == (3, 3, True)

    def test_empty_graph(self):
        rep = oracle_check(Digraph(4))
        assert (rep.t_size, rep.e_size, rep.holds) == (0, 0, True)

    @given(random_digraphs_strategy())
    @settings(max_examples=300)
    def test_bound_holds_on_random_graphs(self, g):
        rep = oracle_check(g)
        assert rep.holds
        assert rep.t_size == len(mutual_pairs(g))

    @given(random_digraphs_strategy())
    def test_oracle_routes_agree(self, g):
        assert mutual_pairs_agree(g)


class TestWorkedExamples:
    """Small graphs with hand-checkable certificates, frozen step by step."""

    def test_three_cycle(self):
        g = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
        cert = build_certificate(g)
        kinds = [s.kind for s in cert.steps]
        assert kinds == [StepKind.EULER_CASE1, StepKind.BASE]
        step = cert.steps[0]
        assert step.removed_vertices == (0, 1, 2)
        assert set(step.attributed_pairs) == {(0, 0), (1, 1), (2, 2)}
        assert step.removed_edge_count == 3
        assert step.detail["cycle"] == [0, 1, 2]
        rep = verify_certificate(g, cert)
        assert rep.ok and rep.cross_checks_ok
        assert rep.total_attributed == 3 and rep.total_removed_edges == 3

    def test_single_edge_path(self):
        g = Digraph.from_pairs(3, [(0, 1), (1, 2)])
        cert = build_certificate(g)
        kinds = [s.kind for s in cert.steps]
        assert kinds == [StepKind.NON_EULER, StepKind.BASE]
        step = cert.steps[0]
        assert step.removed_vertices == (1, 2)
        assert set(step.attributed_pairs) == {(1, 1), (2, 2)}
        assert step.removed_edge_count == 2
        assert verify_certificate(g, cert).ok

    def test_single_loop(self):
        g = Digraph.from_pairs(1, [(0, 0)])
        cert = build_certificate(g)
        kinds = [s.kind for s in cert.steps]
        assert kinds == [StepKind.LOOP_ELIM, StepKind.BASE]
        step = cert.steps[0]
        assert step.removed_vertices == (0,)
        assert set(step.attributed_pairs) == {(0, 0)}
        assert step.removed_edge_count == 1
        assert verify_certificate(g, cert).ok

    def test_isolated_vertex_removed_first(self):
        g = Digraph.from_pairs(3, [(0, 1)])
        cert = build_certificate(g)
        kinds = [s.kind for s in cert.steps]
        assert kinds == [StepKind.ISOLATED_ELIM, StepKind.BASE]
        assert cert.steps[0].removed_vertices == (2,)
        assert cert.steps[0].attributed_pairs == frozenset()
        assert cert.terminal_n == 2

    def test_loops_stripped_before_cycle_analysis(self):
        g = Digraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (2, 0)])
        cert = build_certificate(g)
        assert cert.steps[0].kind is StepKind.LOOP_ELIM
        assert verify_certificate(g, cert).ok

    def test_paired_cycles_use_mediated_path(self):
        # complete loop-free digraph on three vertices: each 2-cycle is
        # shortest, and a shared third vertex mediates between two of them
        g = Digraph.from_pairs(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)])
        cert = build_certificate(g)
        step = cert.steps[0]
        assert step.kind is StepKind.EULER_CASE2
        assert step.removed_vertices == (0, 1, 2)
        assert len(step.attributed_pairs) == 9
        assert step.removed_edge_count == 6
        # the closed-formula count overshoots by the three F-internal edges
        # it never models; the gap is recorded, not hidden
        entry = step.cross_checks["removed_edges_formula"]
        assert entry["ok"]
        assert entry["expected"] - entry["documented_correction"] == entry["actual"]
        assert verify_certificate(g, cert).ok

    def test_base_only_when_tiny(self):
        g = Digraph.from_pairs(2, [(0, 1), (1, 0)])
        cert = build_certificate(g)
        assert [s.kind for s in cert.steps] == [StepKind.BASE]
        rep = verify_certificate(g, cert)
        assert rep.ok
        assert rep.terminal_t_size == 2 and rep.terminal_e_size == 2


class TestCertificateProperties:
    @given(random_digraphs_strategy())
    @settings(max_examples=200, deadline=None)
    def test_build_then_verify_round_trip(self, g):
        cert = build_certificate(g)
        rep = verify_certificate(g, cert)
        assert rep.ok and rep.holds
        assert rep.cross_checks_ok
        # accounting telescopes exactly
        assert rep.total_removed_edges == rep.e_size - rep.terminal_e_size

    @given(random_digraphs_strategy())
    @settings(max_examples=200, deadline=None)
    def test_attributed_pairs_are_real_mutual_pairs(self, g):
        cert = build_certificate(g)
        t = mutual_pairs(g).pairs
        assert certificate_pair_relation(cert).pairs <= t

    @given(random_digraphs_strategy())
    @settings(max_examples=100, deadline=None)
    def test_json_round_trip(self, g):
        cert = build_certificate(g)
        back = certificate_from_json_dict(certificate_to_json_dict(cert))
        assert back == cert
        assert verify_certificate(g, back).ok


def tampered(cert, index, **changes):
    steps = list(cert.steps)
    steps[index] = dataclasses.replace(steps[index], **changes)
    return Certificate(cert.input_graph, tuple(steps), cert.terminal_n)


class TestTamperDetection:
    @pytest.fixture
    def cert(self):
        g = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
        return g, build_certificate(g)

    def test_wrong_input_graph(self, cert):
        _, c = cert
        other = Digraph.from_pairs(3, [(0, 1)])
        with pytest.raises(MalformedCertificate, match="different graph"):
            verify_certificate(other, c)

    def test_missing_base_step(self, cert):
        g, c = cert
        headless = Certificate(c.input_graph, c.steps[:-1], c.terminal_n)
        with pytest.raises(MalformedCertificate, match="base step"):
            verify_certificate(g, headless)

    def test_dropped_attributed_pair(self, cert):
        g, c = cert
        pairs = sorted(c.steps[0].attributed_pairs)
        short = tampered(c, 0, attributed_pairs=frozenset(pairs[:-1]))
        with pytest.raises(StepUnsound, match="cannot cover"):
            verify_certificate(g, short)

    def test_fabricated_pair_rejected(self, cert):
        g, c = cert
        # (0,1) is not mutually neighbored in the 3-cycle
        fake = tampered(c, 0, attributed_pairs=frozenset({(0, 0), (1, 1), (0, 1)}))
        with pytest.raises(StepUnsound, match="not mutually neighbored"):
            verify_certificate(g, fake)

    def test_pair_not_touching_removed_set(self):
        g = Digraph.from_pairs(4, [(0, 0), (2, 3)])
        cert = build_certificate(g)
        assert cert.steps[0].kind is StepKind.LOOP_ELIM
        bad = tampered(cert, 0, attributed_pairs=frozenset({(2, 2)}))
        with pytest.raises(StepUnsound, match="touches no removed vertex"):
            verify_certificate(g, bad)

    def test_miscounted_removed_edges(self, cert):
        g, c = cert
        wrong = tampered(c, 0, removed_edge_count=2)
        with pytest.raises(MalformedCertificate, match="replay removes"):
            verify_certificate(g, wrong)

    def test_unknown_vertices_in_step(self, cert):
        g, c = cert
        stray = tampered(c, 0, removed_vertices=(0, 1, 7))
        with pytest.raises(MalformedCertificate, match="not in the current graph"):
            verify_certificate(g, stray)

    def test_json_kind_validated(self, cert):
        _, c = cert
        obj = certificate_to_json_dict(c)
        obj["steps"][0]["kind"] = "MagicStep"
        with pytest.raises(MalformedCertificate):
            certificate_from_json_dict(obj)


class TestExhaustive:
    def test_small_slice_counts(self):
        summary = exhaustive_verify(2, with_certificates=True)
        assert summary.violations == ()
        per_n = {n: s for n, s in summary.per_n.items()}
        assert per_n[2].graphs == 16
        assert per_n[2].holds == 16
        assert per_n[2].certified == 16
        # equality cases among the 16 two-vertex graphs, counted by hand:
        # {}, {loop0}, {loop1}, {both loops}, {01,10}, {loops+both edges}
        assert per_n[2].equality == 6
        assert per_n[2].mismatched == 0

    def test_rejects_oversized_request(self):
        with pytest.raises(ValueError, match="n_max"):
            exhaustive_verify(6)

    def test_loop_free_slice(self):
        summary = exhaustive_verify(2, allow_loops=False, with_certificates=False)
        assert summary.per_n[2].graphs == 4
        assert summary.violations == ()


class TestTightness:
    def test_directed_cycles_meet_bound_exactly(self):
        rows = tightness_scan(range(2, 11))
        assert [r["n"] for r in rows] == list(range(2, 11))
        for r in rows:
            assert r["t_size"] == r["e_size"] == r["n"]
            assert r["tight"]
