"""Finite digraphs as binary relations.

Vertices are dense 0-based indices; the edge set is a *set* of ordered
pairs, so parallel edges cannot be represented (loops can).  On top of
that sit neighborhoods, relation composition, the mutual-neighbor pair
relation, degree profiles, shortest directed cycles and vertex removal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

Pair = tuple[int, int]


def _validate_pairs(n: int, pairs: Iterable[Pair], what: str) -> None:
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"{what} ({i}, {j}) out of range for n={n}")


def _normalized_pairs(pairs: Iterable, what: str) -> list[Pair]:
    """Coerce to int pairs, rejecting duplicates (set semantics is a contract,
    so silently collapsing repeated input pairs would hide caller bugs)."""
    seen: set[Pair] = set()
    out: list[Pair] = []
    for raw in pairs:
        i, j = raw
        p = (int(i), int(j))
        if p in seen:
            raise ValueError(f"duplicate {what} ({p[0]}, {p[1]})")
        seen.add(p)
        out.append(p)
    return out


@dataclass(frozen=True)
class Digraph:
    """A digraph on vertices 0..n-1; ``edges`` is a frozenset of (tail, head)."""

    n: int
    edges: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        _validate_pairs(self.n, self.edges, "edge")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable) -> "Digraph":
        """Build from an explicit pair sequence, rejecting duplicate pairs."""
        return cls(n, frozenset(_normalized_pairs(pairs, "edge")))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges


@dataclass(frozen=True)
class PairRelation:
    """A set of ordered vertex pairs over vertices 0..n-1."""

    n: int
    pairs: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if not isinstance(self.pairs, frozenset):
            object.__setattr__(self, "pairs", frozenset(self.pairs))
        _validate_pairs(self.n, self.pairs, "pair")

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex in/out degree counts; loops count once toward each side."""

    in_degrees: tuple[int, ...]
    out_degrees: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(self.in_degrees)


def _check_vertex(g: Digraph, v: int) -> None:
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")


def in_neighbors(g: Digraph, v: int) -> frozenset[int]:
    """All u with an edge (u, v)."""
    _check_vertex(g, v)
    return frozenset(u for (u, w) in g.edges if w == v)


def out_neighbors(g: Digraph, v: int) -> frozenset[int]:
    """All u with an edge (v, u)."""
    _check_vertex(g, v)
    return frozenset(u for (w, u) in g.edges if w == v)


def opposite(r: PairRelation) -> PairRelation:
    """Reverse every pair."""
    return PairRelation(r.n, frozenset((j, i) for (i, j) in r.pairs))


def compose(r: PairRelation, s: PairRelation) -> PairRelation:
    """Relation composition: (a, c) present iff some b has (a, b) in r and (b, c) in s."""
    if r.n != s.n:
        raise ValueError(f"cannot compose relations on {r.n} and {s.n} vertices")
    by_first: dict[int, set[int]] = {}
    for b, c in s.pairs:
        by_first.setdefault(b, set()).add(c)
    out: set[Pair] = set()
    for a, b in r.pairs:
        targets = by_first.get(b)
        if targets:
            for c in targets:
                out.add((a, c))
    return PairRelation(r.n, frozenset(out))


def edge_relation(g: Digraph) -> PairRelation:
    """The edge set of g viewed as a pair relation."""
    return PairRelation(g.n, g.edges)


def mutual_pairs(g: Digraph) -> PairRelation:
    """The mutual-neighbor relation: E∘Eᵒᵖ ∪ Eᵒᵖ∘E.

    (i, j) is present iff i and j share a common in-neighbor or a common
    out-neighbor.  Computed here as the composition union; see
    ``mutual_pairs_via_neighborhoods`` for the equivalent neighborhood
    characterization used as a cross-check.
    """
    e = edge_relation(g)
    eop = opposite(e)
    return PairRelation(g.n, compose(e, eop).pairs | compose(eop, e).pairs)


def mutual_pairs_via_neighborhoods(g: Digraph) -> PairRelation:
    """Same relation as ``mutual_pairs``, from the neighborhood definition:
    (i, j) present iff D⁻(i)∩D⁻(j) ≠ ∅ or D⁺(i)∩D⁺(j) ≠ ∅."""
    in_masks, out_masks = adjacency_masks(g.n, g.edges)
    pairs: set[Pair] = set()
    for i in range(g.n):
        mi_in = in_masks[i]
        mi_out = out_masks[i]
        if not (mi_in or mi_out):
            continue
        for j in range(g.n):
            if (mi_in & in_masks[j]) or (mi_out & out_masks[j]):
                pairs.add((i, j))
    return PairRelation(g.n, frozenset(pairs))


def degree_profile(g: Digraph) -> DegreeProfile:
    ins = [0] * g.n
    outs = [0] * g.n
    for i, j in g.edges:
        outs[i] += 1
        ins[j] += 1
    return DegreeProfile(tuple(ins), tuple(outs))


def is_balanced(g: Digraph) -> bool:
    """True iff every vertex has equal in- and out-degree (degree condition
    only; connectivity is deliberately not required)."""
    p = degree_profile(g)
    return p.in_degrees == p.out_degrees


def shortest_directed_cycle(g: Digraph) -> Optional[list[int]]:
    """A shortest directed cycle as a vertex list, or None if acyclic.

    Requires a loop-free graph, so any cycle has length >= 2.  Determinism:
    BFS runs from each vertex in index order exploring out-neighbors in
    index order; the first cycle of globally minimal length wins and is
    reported starting from its smallest vertex.
    """
    for i, j in g.edges:
        if i == j:
            raise ValueError(f"graph has a loop at vertex {i}; loops are not allowed here")
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, j in g.edges:
        adj[i].append(j)
    for v in adj:
        adj[v].sort()
    return _shortest_cycle_in_adjacency(sorted(adj), adj)


def _shortest_cycle_in_adjacency(
    vertices: list[int], adj: Mapping[int, Iterable[int]]
) -> Optional[list[int]]:
    """Core shortest-cycle search over an out-adjacency map (loop-free)."""
    best: Optional[list[int]] = None
    for start in vertices:
        if best is not None and len(best) == 2:
            break
        dist = {start: 0}
        parent: dict[int, int] = {}
        queue = deque([start])
        found_tail = None
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best is not None and du + 1 >= len(best):
                break
            for w in adj[u]:
                if w == start:
                    found_tail = u
                    break
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
            if found_tail is not None:
                break
        if found_tail is not None:
            path = [found_tail]
            while path[-1] != start:
                path.append(parent[path[-1]])
            cycle = list(reversed(path))
            if best is None or len(cycle) < len(best):
                best = cycle
    if best is None:
        return None
    pivot = best.index(min(best))
    return best[pivot:] + best[:pivot]


def remove_vertices(g: Digraph, f: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Induced subgraph on the complement of f, densely re-indexed.

    Returns the new graph and the old-index -> new-index map for the
    surviving vertices.
    """
    removed = set(f)
    for v in removed:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    survivors = [v for v in range(g.n) if v not in removed]
    index_map = {old: new for new, old in enumerate(survivors)}
    edges = frozenset(
        (index_map[i], index_map[j])
        for (i, j) in g.edges
        if i not in removed and j not in removed
    )
    return Digraph(len(survivors), edges), index_map


def induced_subgraph_edges(edges: Iterable[Pair], keep: set[int]) -> set[Pair]:
    """Edges among a surviving vertex set, in original labels."""
    return {(i, j) for (i, j) in edges if i in keep and j in keep}


def adjacency_masks(n: int, edges: Iterable[Pair]) -> tuple[list[int], list[int]]:
    """Per-vertex neighbor bitmasks: (in_masks, out_masks)."""
    in_masks = [0] * n
    out_masks = [0] * n
    for i, j in edges:
        out_masks[i] |= 1 << j
        in_masks[j] |= 1 << i
    return in_masks, out_masks


def mutual_pair_count(n: int, in_masks: list[int], out_masks: list[int]) -> int:
    """Size of the mutual-neighbor relation, straight from neighbor bitmasks."""
    count = 0
    for i in range(n):
        mi_in = in_masks[i]
        mi_out = out_masks[i]
        if not (mi_in or mi_out):
            continue
        for j in range(n):
            if (mi_in & in_masks[j]) or (mi_out & out_masks[j]):
                count += 1
    return count


# --- serialization ---------------------------------------------------------


def digraph_to_json_dict(g: Digraph) -> dict:
    return {"n": g.n, "edges": [list(p) for p in sorted(g.edges)]}


def digraph_from_json_dict(obj: dict) -> Digraph:
    if not isinstance(obj, dict):
        raise ValueError("digraph JSON must be an object")
    if obj.get("undirected"):
        raise ValueError("expected a digraph, got an undirected graph object")
    try:
        n = int(obj["n"])
        raw_edges = obj["edges"]
    except KeyError as exc:
        raise ValueError(f"digraph JSON missing key {exc.args[0]!r}") from None
    if not isinstance(raw_edges, list):
        raise ValueError('"edges" must be a list of [i, j] pairs')
    return Digraph.from_pairs(n, raw_edges)


def digraph_to_text(g: Digraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in sorted(g.edges))
    return "\n".join(lines) + "\n"


def digraph_from_text(text: str) -> Digraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty digraph text: expected a vertex count on the first line")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"expected 'i j' edge line, got {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return Digraph.from_pairs(n, pairs)


def digraph_to_dot(
    g: Digraph, overlay: Optional[PairRelation] = None, name: str = "G"
) -> str:
    """DOT rendering; an optional pair-relation overlay is drawn dashed."""
    if overlay is not None and overlay.n != g.n:
        raise ValueError("overlay relation must live on the same vertex set")
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for i, j in sorted(g.edges):
        lines.append(f"  {i} -> {j};")
    if overlay is not None:
        for i, j in sorted(overlay.pairs):
            lines.append(f"  {i} -> {j} [style=dashed, color=blue, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
