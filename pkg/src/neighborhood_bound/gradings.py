"""Component dimensions of good gradings on matrix algebras over a finite group.

A datum (H <= G, (g_1, ..., g_n)) determines a grading of the n x n matrix
algebra tensored with the twisted algebra of H; the component at g has
dimension |{(i, h, j) : h in H, g_i^-1 * h * g_j = g}|.  Only this
combinatorial shadow is materialized — never the algebra itself.

Each component also carries a digraph on the tuple positions, with an edge
(i, j) whenever some h produces g from (i, j); h is then unique, so the edge
count equals the dimension (asserted, not assumed).  The identity component is
provably the largest: every mutually-neighbored pair of the g-component's
digraph is an edge of the identity component, which chains into

    dim at identity = |E_e| >= |T(Gamma_g)| >= |E_g| = dim at g.

verify_injection checks the containment, verify_theorem_b the final verdict,
and grading_report bundles dimensions, injections, and the full chain per
element.  enumerate_data drives exhaustive verification over every subgroup
and tuple up to a length cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .digraph import Digraph, adjacency_masks
from .groups import FiniteGroup, Subgroup, TooLarge, all_subgroups

#: enumerate_data refuses to produce more than this many data.
ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class GradingDatum:
    """A subgroup H of `group` plus an n-tuple of group elements (n >= 1)."""

    group: FiniteGroup = field(repr=False)
    h: Subgroup
    tup: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tup", tuple(int(x) for x in self.tup))
        if self.h.parent is not self.group:
            raise ValueError("subgroup does not belong to the datum's group")
        if len(self.tup) < 1:
            raise ValueError("tuple must have at least one entry")
        for x in self.tup:
            if not 0 <= x < self.group.order:
                raise ValueError(f"tuple entry {x} out of range for order {self.group.order}")

    @property
    def n(self) -> int:
        return len(self.tup)

    @property
    def expected_total_dimension(self) -> int:
        return self.n * self.n * self.h.order


@dataclass(frozen=True)
class DimensionTable:
    """dim of the component at g, for every g, indexed by element."""

    group: FiniteGroup = field(repr=False)
    values: tuple[int, ...]

    def __getitem__(self, g: int) -> int:
        return self.values[g]

    @property
    def total(self) -> int:
        return sum(self.values)

    def to_json_dict(self) -> dict:
        return {self.group.element_names[g]: v for g, v in enumerate(self.values)}


def component_dimension(d: GradingDatum, g: int) -> int:
    """Count triples (i, h, j) with g_i^-1 * h * g_j = g, by direct enumeration."""
    grp = d.group
    count = 0
    for gi in d.tup:
        left = grp.inverse[gi]
        for h in d.h.elements:
            lh = grp.table[left][h]
            for gj in d.tup:
                if grp.table[lh][gj] == g:
                    count += 1
    return count


def _component_edges(d: GradingDatum) -> tuple[list[int], list[set[tuple[int, int]]]]:
    """One pass over all (i, h, j): per-element triple counts and edge sets."""
    grp = d.group
    counts = [0] * grp.order
    edges: list[set[tuple[int, int]]] = [set() for _ in range(grp.order)]
    for i, gi in enumerate(d.tup):
        left = grp.inverse[gi]
        for h in d.h.elements:
            lh = grp.table[left][h]
            for j, gj in enumerate(d.tup):
                g = grp.table[lh][gj]
                counts[g] += 1
                edges[g].add((i, j))
    return counts, edges


def dimension_table(d: GradingDatum) -> DimensionTable:
    """Dimensions of every component; their sum must be n^2 * |H|."""
    counts, _ = _component_edges(d)
    table = DimensionTable(d.group, tuple(counts))
    if table.total != d.expected_total_dimension:
        raise RuntimeError(
            f"component dimensions sum to {table.total}, expected "
            f"{d.expected_total_dimension} = {d.n}^2 * {d.h.order}"
        )
    return table


def component_digraph(d: GradingDatum, g: int) -> Digraph:
    """The digraph on tuple positions with an edge (i, j) iff some h in H has
    g_i^-1 * h * g_j = g.  Such an h is unique, so the edge count equals
    component_dimension(d, g); that equality is asserted here."""
    grp = d.group
    if not 0 <= g < grp.order:
        raise ValueError(f"element index {g} out of range for order {grp.order}")
    triples = 0
    edges: set[tuple[int, int]] = set()
    for i, gi in enumerate(d.tup):
        left = grp.inverse[gi]
        for h in d.h.elements:
            lh = grp.table[left][h]
            for j, gj in enumerate(d.tup):
                if grp.table[lh][gj] == g:
                    triples += 1
                    edges.add((i, j))
    if triples != len(edges):
        raise RuntimeError(
            f"witness h is not unique at g={grp.name(g)}: {triples} triples "
            f"but {len(edges)} edges"
        )
    return Digraph(d.n, frozenset(edges))


def _mutual_pairs_of_edges(n: int, edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Mutually-neighbored ordered pairs of a small edge set, via degree masks."""
    in_masks, out_masks = adjacency_masks(n, edges)
    pairs: set[tuple[int, int]] = set()
    for a in range(n):
        ia, oa = in_masks[a], out_masks[a]
        if not (ia | oa):
            continue
        for b in range(n):
            if (ia & in_masks[b]) or (oa & out_masks[b]):
                pairs.add((a, b))
    return pairs


@dataclass(frozen=True)
class TheoremBReport:
    dims: DimensionTable
    trivial_is_max: bool
    witness: int | None

    def to_json_dict(self) -> dict:
        grp = self.dims.group
        return {
            "dims": self.dims.to_json_dict(),
            "trivial_is_max": self.trivial_is_max,
            "witness": None if self.witness is None else grp.element_names[self.witness],
        }


def verify_theorem_b(d: GradingDatum) -> TheoremBReport:
    """Is the identity component's dimension maximal?  witness = a violating g."""
    dims = dimension_table(d)
    top = dims[d.group.identity]
    witness = next((g for g in d.group.elements if dims[g] > top), None)
    return TheoremBReport(dims=dims, trivial_is_max=witness is None, witness=witness)


@dataclass(frozen=True)
class InjectionReport:
    contained: bool
    missing_pairs: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "contained": self.contained,
            "missing_pairs": [list(p) for p in self.missing_pairs],
        }


def verify_injection(d: GradingDatum, g: int) -> InjectionReport:
    """Every mutually-neighbored pair of the g-component digraph must be an
    edge of the identity component."""
    gamma_g = component_digraph(d, g)
    gamma_e = component_digraph(d, d.group.identity)
    pairs = _mutual_pairs_of_edges(gamma_g.n, set(gamma_g.edges))
    missing = tuple(sorted(pairs - gamma_e.edges))
    return InjectionReport(contained=not missing, missing_pairs=missing)


@dataclass(frozen=True)
class ComponentCheck:
    """Per-element audit: sizes of E_e, T(Gamma_g), E_g and both verdicts."""

    g: int
    e_size: int
    t_size: int
    injection_ok: bool
    missing_pairs: tuple[tuple[int, int], ...]
    chain_ok: bool


@dataclass(frozen=True)
class GradingReport:
    datum: GradingDatum
    dims: DimensionTable
    total: int
    expected_total: int
    total_ok: bool
    trivial_is_max: bool
    witness: int | None
    components: tuple[ComponentCheck, ...]

    @property
    def ok(self) -> bool:
        return (
            self.total_ok
            and self.trivial_is_max
            and all(c.injection_ok and c.chain_ok for c in self.components)
        )

    def to_json_dict(self) -> dict:
        grp = self.datum.group
        names = grp.element_names
        return {
            "group_order": grp.order,
            "H": [names[a] for a in self.datum.h.elements],
            "tuple": [names[x] for x in self.datum.tup],
            "dims": self.dims.to_json_dict(),
            "total": self.total,
            "expected_total": self.expected_total,
            "total_ok": self.total_ok,
            "theorem_b": {
                "trivial_is_max": self.trivial_is_max,
                "witness": None if self.witness is None else names[self.witness],
            },
            "components": [
                {
                    "g": names[c.g],
                    "e_size": c.e_size,
                    "t_size": c.t_size,
                    "injection_ok": c.injection_ok,
                    "missing_pairs": [list(p) for p in c.missing_pairs],
                    "chain_ok": c.chain_ok,
                }
                for c in self.components
            ],
            "ok": self.ok,
        }


def grading_report(d: GradingDatum) -> GradingReport:
    """Full audit of one datum in a single pass: dimension table, identity
    maximality, pair-injection into the identity component, and the size chain
    |E_e| >= |T(Gamma_g)| >= |E_g| for every g."""
    counts, edges = _component_edges(d)
    grp = d.group
    for g in grp.elements:
        if counts[g] != len(edges[g]):
            raise RuntimeError(
                f"witness h is not unique at g={grp.name(g)}: {counts[g]} triples "
                f"but {len(edges[g])} edges"
            )
    dims = DimensionTable(grp, tuple(counts))
    total = dims.total
    expected = d.expected_total_dimension
    e = grp.identity
    e_edges = edges[e]
    e_size = counts[e]
    witness = next((g for g in grp.elements if counts[g] > e_size), None)

    components = []
    for g in grp.elements:
        if edges[g]:
            pairs = _mutual_pairs_of_edges(d.n, edges[g])
            missing = tuple(sorted(pairs - e_edges))
            t_size = len(pairs)
        else:
            missing = ()
            t_size = 0
        components.append(
            ComponentCheck(
                g=g,
                e_size=e_size,
                t_size=t_size,
                injection_ok=not missing,
                missing_pairs=missing,
                chain_ok=e_size >= t_size >= counts[g],
            )
        )
    return GradingReport(
        datum=d,
        dims=dims,
        total=total,
        expected_total=expected,
        total_ok=total == expected,
        trivial_is_max=witness is None,
        witness=witness,
        components=tuple(components),
    )


def enumeration_size(g: FiniteGroup, n_max: int, subgroup_count: int) -> int:
    per_subgroup = sum(g.order**n for n in range(1, n_max + 1))
    return subgroup_count * per_subgroup


def enumerate_data(g: FiniteGroup, n_max: int) -> Iterator[GradingDatum]:
    """Every (H, tuple) with H a subgroup and 1 <= len(tuple) <= n_max, in
    deterministic order: subgroups as listed by all_subgroups, then tuple
    length, then row-major tuples.  Guarded by ENUMERATION_BUDGET."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    subgroups = all_subgroups(g)
    total = enumeration_size(g, n_max, len(subgroups))
    if total > ENUMERATION_BUDGET:
        raise TooLarge(
            f"enumeration would produce {total} data, above the "
            f"{ENUMERATION_BUDGET} budget"
        )
    return _enumerate_data(g, n_max, subgroups)


def _enumerate_data(
    g: FiniteGroup, n_max: int, subgroups: list[Subgroup]
) -> Iterator[GradingDatum]:
    import itertools

    for h in subgroups:
        for n in range(1, n_max + 1):
            for tup in itertools.product(range(g.order), repeat=n):
                yield GradingDatum(group=g, h=h, tup=tup)


# --- serialization --------------------------------------------------------------


def datum_to_json_dict(d: GradingDatum, group_spec: str | None = None) -> dict:
    """The "group" key carries a builtin spec string when one is known,
    otherwise the full validated table."""
    from .groups import group_to_json_dict

    names = d.group.element_names
    group_repr = group_spec if group_spec is not None else group_to_json_dict(d.group)
    return {
        "group": group_repr,
        "H": [names[a] for a in d.h.elements],
        "tuple": [names[x] for x in d.tup],
    }


def datum_from_json_dict(obj: dict) -> GradingDatum:
    """Accepts {"group": spec-string-or-table, "H": [names], "tuple": [names]};
    H entries are closed into a subgroup, so generators suffice."""
    from .groups import (
        ParseError,
        builtin_group,
        element_index_from_text,
        group_from_json_dict,
        subgroup_from_generators,
    )

    if not isinstance(obj, dict):
        raise ParseError("grading datum JSON must be an object")
    for key in ("group", "H", "tuple"):
        if key not in obj:
            raise ParseError(f"grading datum JSON missing key {key!r}")
    raw_group = obj["group"]
    if isinstance(raw_group, str):
        group = builtin_group(raw_group)
    else:
        group = group_from_json_dict(raw_group)
    gens = [element_index_from_text(group, str(t)) for t in obj["H"]]
    h = subgroup_from_generators(group, gens)
    tup = tuple(element_index_from_text(group, str(t)) for t in obj["tuple"])
    if not tup:
        raise ParseError('"tuple" must have at least one entry')
    return GradingDatum(group=group, h=h, tup=tup)
