"""Batch drivers: seeded digraph fuzzing, the exhaustive undirected sweep, and
grading sweeps over every (subgroup, tuple) datum of a group.

All three parallelize over chunks of independent instances and merge results
in submission order, so the worker count never changes output bytes.  Summaries
carry no timing data for the same reason; violations embed the reproducing
instance and are capped at 100 per summary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .certificates import (
    CertificateError,
    build_certificate,
    oracle_check,
    verify_certificate,
)
from .corollaries import UndirectedGraph, corollary_undirected_check
from .digraph import Digraph, digraph_to_json_dict
from .gradings import (
    ENUMERATION_BUDGET,
    GradingDatum,
    datum_to_json_dict,
    enumeration_size,
    grading_report,
)
from .groups import FiniteGroup, TooLarge, all_subgroups
from .parallel import map_chunked, worker_count

_MAX_REPORTED = 100


def _chunk_bounds(total: int, pieces: int) -> list[tuple[int, int]]:
    """Split range(total) into at most `pieces` contiguous, ordered slices."""
    if total <= 0:
        return []
    pieces = max(1, min(pieces, total))
    step = -(-total // pieces)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


# --- seeded fuzzing ---------------------------------------------------------


@dataclass(frozen=True)
class FuzzSummary:
    seed: int
    count: int
    n: int
    edge_prob: float
    allow_loops: bool
    holds: int
    certified: int
    violations: tuple[dict, ...]
    violation_count: int
    mismatches: tuple[dict, ...]
    mismatch_count: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "n": self.n,
            "edge_prob": self.edge_prob,
            "allow_loops": self.allow_loops,
            "holds": self.holds,
            "certified": self.certified,
            "violations": list(self.violations),
            "violation_count": self.violation_count,
            "cross_check_mismatches": list(self.mismatches),
            "mismatch_count": self.mismatch_count,
            "ok": self.ok,
        }


def _check_chunk(graphs: Sequence[Digraph]) -> tuple[int, int, list[dict], list[dict]]:
    holds = 0
    certified = 0
    violations: list[dict] = []
    mismatches: list[dict] = []
    for g in graphs:
        report = oracle_check(g)
        if report.holds:
            holds += 1
        else:
            violations.append(
                {
                    "graph": digraph_to_json_dict(g),
                    "reason": f"oracle: |T| = {report.t_size} < |E| = {report.e_size}",
                }
            )
        try:
            cert = build_certificate(g)
            verified = verify_certificate(g, cert)
        except CertificateError as exc:
            violations.append(
                {
                    "graph": digraph_to_json_dict(g),
                    "reason": f"{type(exc).__name__}: {exc}",
                }
            )
            continue
        if verified.ok:
            certified += 1
        else:
            violations.append(
                {
                    "graph": digraph_to_json_dict(g),
                    "reason": "certificate replays but the bound fails",
                }
            )
        if not verified.cross_checks_ok:
            mismatches.append(
                {
                    "graph": digraph_to_json_dict(g),
                    "steps": [
                        s.to_json_dict() for s in verified.steps if not s.cross_checks_ok
                    ],
                }
            )
    return holds, certified, violations, mismatches


def fuzz_digraphs(
    seed: int,
    count: int,
    n: int,
    edge_prob: float,
    allow_loops: bool = True,
    workers: int | None = None,
) -> FuzzSummary:
    """Check `count` seeded random digraphs; every random bit comes from one
    stream over `seed`, so the summary is reproducible byte for byte."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    from .randgen import random_digraphs

    graphs = random_digraphs(seed, count, n, edge_prob, allow_loops)
    active = worker_count(workers)
    tasks = [graphs[lo:hi] for lo, hi in _chunk_bounds(len(graphs), active * 4)]
    holds = 0
    certified = 0
    violations: list[dict] = []
    mismatches: list[dict] = []
    for part_holds, part_cert, part_viol, part_mis in map_chunked(
        _check_chunk, tasks, workers
    ):
        holds += part_holds
        certified += part_cert
        violations.extend(part_viol)
        mismatches.extend(part_mis)
    return FuzzSummary(
        seed=seed,
        count=count,
        n=n,
        edge_prob=edge_prob,
        allow_loops=allow_loops,
        holds=holds,
        certified=certified,
        violations=tuple(violations[:_MAX_REPORTED]),
        violation_count=len(violations),
        mismatches=tuple(mismatches[:_MAX_REPORTED]),
        mismatch_count=len(mismatches),
    )


# --- exhaustive undirected sweep ---------------------------------------------


@dataclass(frozen=True)
class UndirectedSlice:
    graphs: int = 0
    holds: int = 0
    equality: int = 0

    def to_json_dict(self) -> dict:
        return {"graphs": self.graphs, "holds": self.holds, "equality": self.equality}


@dataclass(frozen=True)
class UndirectedSummary:
    n_max: int
    per_n: dict
    total_graphs: int
    violations: tuple[dict, ...]
    violation_count: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "per_n": {str(n): s.to_json_dict() for n, s in sorted(self.per_n.items())},
            "total_graphs": self.total_graphs,
            "violations": list(self.violations),
            "violation_count": self.violation_count,
            "ok": self.ok,
        }


def _undirected_chunk(
    n: int, positions: list[tuple[int, int]], start: int, stop: int
) -> tuple[int, int, int, list[dict]]:
    graphs = 0
    holds = 0
    equality = 0
    violations: list[dict] = []
    for mask in range(start, stop):
        edges = frozenset(
            positions[b] for b in range(len(positions)) if (mask >> b) & 1
        )
        g = UndirectedGraph(n, edges)
        report = corollary_undirected_check(g)
        graphs += 1
        if report.holds:
            holds += 1
        else:
            violations.append(
                {
                    "n": n,
                    "edges": [list(p) for p in sorted(edges)],
                    "g2_size": report.g2_size,
                    "g1_size": report.g1_size,
                }
            )
        if report.g2_size == report.g1_size:
            equality += 1
    return graphs, holds, equality, violations


def undirected_sweep(n_max: int, workers: int | None = None) -> UndirectedSummary:
    """All simple (loop-free) undirected graphs on each n <= n_max: check that
    length-2 walk pairs are at least as numerous as length-1 walk pairs."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if n_max > 6:
        raise ValueError(f"undirected sweep is exhaustive; n_max={n_max} above 6 is unreasonable")
    per_n: dict[int, UndirectedSlice] = {}
    violations: list[dict] = []
    total = 0
    active = worker_count(workers)
    for n in range(n_max + 1):
        positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
        space = 1 << len(positions)
        bounds = _chunk_bounds(space, active * 4)
        tasks = [(n, positions, lo, hi) for lo, hi in bounds]
        graphs = holds = equality = 0
        for part in map_chunked(lambda args: _undirected_chunk(*args), tasks, workers):
            graphs += part[0]
            holds += part[1]
            equality += part[2]
            violations.extend(part[3])
        per_n[n] = UndirectedSlice(graphs=graphs, holds=holds, equality=equality)
        total += graphs
    return UndirectedSummary(
        n_max=n_max,
        per_n=per_n,
        total_graphs=total,
        violations=tuple(violations[:_MAX_REPORTED]),
        violation_count=len(violations),
    )


# --- grading sweep -------------------------------------------------------------


@dataclass(frozen=True)
class GradingSweepSummary:
    group: str
    group_order: int
    n_max: int
    subgroup_count: int
    data_count: int
    violations: tuple[dict, ...]
    violation_count: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "group_order": self.group_order,
            "n_max": self.n_max,
            "subgroup_count": self.subgroup_count,
            "data_count": self.data_count,
            "violations": list(self.violations),
            "violation_count": self.violation_count,
            "ok": self.ok,
        }


def _decode_tuple(index: int, order: int, n: int) -> tuple[int, ...]:
    """Row-major rank -> tuple, matching itertools.product(range(order), repeat=n)."""
    digits = []
    for pos in range(n - 1, -1, -1):
        digits.append((index // order**pos) % order)
    return tuple(digits)


def _grading_chunk(
    group: FiniteGroup,
    subgroup_elements: tuple[int, ...],
    n: int,
    start: int,
    stop: int,
    label: str,
) -> tuple[int, list[dict]]:
    from .groups import Subgroup

    h = Subgroup(group, subgroup_elements)
    checked = 0
    violations: list[dict] = []
    for rank in range(start, stop):
        datum = GradingDatum(group=group, h=h, tup=_decode_tuple(rank, group.order, n))
        report = grading_report(datum)
        checked += 1
        if not report.ok:
            violations.append(
                {
                    "datum": datum_to_json_dict(datum, group_spec=label),
                    "report": report.to_json_dict(),
                }
            )
    return checked, violations


def grading_sweep(
    group: FiniteGroup,
    n_max: int,
    label: str | None = None,
    workers: int | None = None,
) -> GradingSweepSummary:
    """Run the full grading audit on every (subgroup, tuple) datum with tuple
    length up to n_max.  `label` names the group in reports (e.g. its spec
    string); element indices inside violations always use element names."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    subgroups = all_subgroups(group)
    total = enumeration_size(group, n_max, len(subgroups))
    if total > ENUMERATION_BUDGET:
        raise TooLarge(
            f"sweep would cover {total} data, above the {ENUMERATION_BUDGET} budget"
        )
    name = label if label is not None else f"order-{group.order} group"
    active = worker_count(workers)
    tasks = []
    for h in subgroups:
        for n in range(1, n_max + 1):
            space = group.order**n
            # split large tuple blocks so workers stay busy; order is preserved
            pieces = max(1, min(active * 2, space // 64 or 1))
            for lo, hi in _chunk_bounds(space, pieces):
                tasks.append((group, h.elements, n, lo, hi, name))
    checked = 0
    violations: list[dict] = []
    for part_checked, part_viol in map_chunked(
        lambda args: _grading_chunk(*args), tasks, workers
    ):
        checked += part_checked
        violations.extend(part_viol)
    return GradingSweepSummary(
        group=name,
        group_order=group.order,
        n_max=n_max,
        subgroup_count=len(subgroups),
        data_count=checked,
        violations=tuple(violations[:_MAX_REPORTED]),
        violation_count=len(violations),
    )
