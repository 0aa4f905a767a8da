"""Two consequences of the mutual-neighbor bound.

For an undirected graph viewed as a symmetric digraph, the ordered pairs
joined by a length-2 walk are exactly the mutual-neighbor pairs, so they are
at least as numerous as the ordered pairs joined by an edge.

For a square nonnegative matrix A, the support of A*Aᵗ + Aᵗ*A is exactly the
mutual-neighbor relation of the digraph of Supp(A) — nonnegative entries
cannot cancel — so it is at least as large as Supp(A) itself.  ``gram_support``
computes the support symbolically over that digraph; ``gram_support_numeric``
is the independent floating-point route kept for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .digraph import (
    Digraph,
    Pair,
    PairRelation,
    edge_relation,
    mutual_pairs,
    mutual_pairs_via_neighborhoods,
)

#: Positive entries smaller than this are rejected as ambiguous rather than
#: silently treated as zero or nonzero.
SUPPORT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class UndirectedGraph:
    """Vertices 0..n-1 and a set of unordered edges stored as (min, max); loops allowed."""

    n: int
    edges: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            if i > j:
                raise ValueError(f"edge ({i}, {j}) not in canonical (min, max) form")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable) -> "UndirectedGraph":
        """Canonicalize and deduplicate-check unordered pairs ({i,j} equals {j,i})."""
        seen: set[Pair] = set()
        for raw in pairs:
            i, j = raw
            p = (min(int(i), int(j)), max(int(i), int(j)))
            if p in seen:
                raise ValueError(f"duplicate undirected edge {{{p[0]}, {p[1]}}}")
            seen.add(p)
        return cls(n, frozenset(seen))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class NonnegMatrix:
    """A square matrix with nonnegative entries; rejects negative or ambiguously
    tiny positive values at construction."""

    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if not isinstance(self.entries, tuple):
            object.__setattr__(
                self, "entries", tuple(tuple(float(x) for x in row) for row in self.entries)
            )
            n = len(self.entries)
        for r, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(
                    f"matrix must be square: row {r} has {len(row)} entries, expected {n}"
                )
            for c, value in enumerate(row):
                if value < 0:
                    raise ValueError(f"negative entry {value} at cell ({r}, {c})")
                if 0 < value < SUPPORT_THRESHOLD:
                    raise ValueError(
                        f"entry {value} at cell ({r}, {c}) is below the support "
                        f"threshold {SUPPORT_THRESHOLD} and ambiguous"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "NonnegMatrix":
        return cls(tuple(tuple(float(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)


def symmetrize(g: UndirectedGraph) -> Digraph:
    """Each undirected edge {i, j} becomes both (i, j) and (j, i); a loop stays single."""
    edges: set[Pair] = set()
    for i, j in g.edges:
        edges.add((i, j))
        edges.add((j, i))
    return Digraph(g.n, frozenset(edges))


def gamma(g: UndirectedGraph, k: int) -> PairRelation:
    """Ordered pairs joined by a length-k walk (k in {1, 2}) in the symmetrized graph."""
    if k == 1:
        return edge_relation(symmetrize(g))
    if k == 2:
        return mutual_pairs(symmetrize(g))
    raise ValueError(f"walk length must be 1 or 2, got {k}")


@dataclass(frozen=True)
class UndirectedReport:
    g2_size: int
    g1_size: int
    holds: bool

    def to_json_dict(self) -> dict:
        return {"g2_size": self.g2_size, "g1_size": self.g1_size, "holds": self.holds}


def corollary_undirected_check(g: UndirectedGraph) -> UndirectedReport:
    """|walk-2 pairs| >= |walk-1 pairs| for an undirected graph without parallel edges."""
    g1 = len(gamma(g, 1))
    g2 = len(gamma(g, 2))
    return UndirectedReport(g2_size=g2, g1_size=g1, holds=g2 >= g1)


def support(a: NonnegMatrix) -> PairRelation:
    """Positions of nonzero entries."""
    pairs = frozenset(
        (i, j)
        for i, row in enumerate(a.entries)
        for j, value in enumerate(row)
        if value != 0.0
    )
    return PairRelation(a.n, pairs)


def support_digraph(a: NonnegMatrix) -> Digraph:
    """The digraph with an edge (i, j) exactly where the matrix is nonzero."""
    return Digraph(a.n, support(a).pairs)


def gram_support(a: NonnegMatrix) -> PairRelation:
    """Supp(A*Aᵗ + Aᵗ*A), computed symbolically as the mutual-neighbor relation
    of the support digraph (no floating-point products involved)."""
    return mutual_pairs_via_neighborhoods(support_digraph(a))


def gram_support_numeric(a: NonnegMatrix) -> PairRelation:
    """Supp(A*Aᵗ + Aᵗ*A) by actually multiplying the matrices — the independent
    cross-check route for gram_support."""
    m = np.array(a.entries, dtype=float)
    gram = m @ m.T + m.T @ m
    pairs = frozenset((int(i), int(j)) for i, j in np.argwhere(gram != 0.0))
    return PairRelation(a.n, pairs)


@dataclass(frozen=True)
class MatrixReport:
    gram_size: int
    supp_size: int
    holds: bool

    def to_json_dict(self) -> dict:
        return {
            "gram_size": self.gram_size,
            "supp_size": self.supp_size,
            "holds": self.holds,
        }


def corollary_matrix_check(a: NonnegMatrix) -> MatrixReport:
    """|Supp(A*Aᵗ + Aᵗ*A)| >= |Supp(A)| for square nonnegative A."""
    gram = len(gram_support(a))
    supp = len(support(a))
    return MatrixReport(gram_size=gram, supp_size=supp, holds=gram >= supp)


# --- serialization -----------------------------------------------------------


def undirected_to_json_dict(g: UndirectedGraph) -> dict:
    return {
        "undirected": True,
        "n": g.n,
        "edges": [list(p) for p in sorted(g.edges)],
    }


def undirected_from_json_dict(obj: dict) -> UndirectedGraph:
    if not isinstance(obj, dict):
        raise ValueError("undirected graph JSON must be an object")
    if not obj.get("undirected"):
        raise ValueError('undirected graph JSON must carry "undirected": true')
    try:
        n = int(obj["n"])
        raw_edges = obj["edges"]
    except KeyError as exc:
        raise ValueError(f"undirected graph JSON missing key {exc.args[0]!r}") from None
    if not isinstance(raw_edges, list):
        raise ValueError('"edges" must be a list of [i, j] pairs')
    return UndirectedGraph.from_pairs(n, raw_edges)


def matrix_from_csv_text(text: str) -> NonnegMatrix:
    """Parse n rows of n comma-separated decimals."""
    import csv
    import io

    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [cell.strip() for cell in row if cell.strip() != ""]
        if not cells:
            continue
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("empty matrix input")
    return NonnegMatrix.from_rows(rows)


def matrix_from_json_obj(obj) -> NonnegMatrix:
    """Accept a plain 2D array or an object carrying it under "matrix"."""
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise ValueError('matrix JSON object must carry a "matrix" key')
        obj = obj["matrix"]
    if not isinstance(obj, list) or not all(isinstance(row, list) for row in obj):
        raise ValueError("matrix JSON must be a 2D array")
    return NonnegMatrix.from_rows(obj)


def matrix_to_json_dict(a: NonnegMatrix) -> dict:
    return {"matrix": [list(row) for row in a.entries]}
