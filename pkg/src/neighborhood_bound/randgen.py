"""Seeded random instance generators.

Digraphs use the independent-edge model: every ordered pair (optionally
including loops) is an edge with probability ``edge_prob``.  Matrices are
square and sparse-nonnegative: each entry is zero with probability
``zero_prob`` and otherwise uniform in [0.5, 2.0], keeping all nonzero values
far from the support-ambiguity threshold.

Generation always consumes a single ``random.Random`` stream in a fixed
iteration order, so a seed fully determines every instance; consumers may
check the generated instances in parallel afterwards.
"""

from __future__ import annotations

import random

from .digraph import Digraph


def random_digraph(
    rng: random.Random, n: int, edge_prob: float, allow_loops: bool = True
) -> Digraph:
    """One independent-edge digraph, consuming rng in row-major pair order."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must be in [0, 1], got {edge_prob}")
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    edges = []
    for i in range(n):
        for j in range(n):
            if not allow_loops and i == j:
                continue
            if rng.random() < edge_prob:
                edges.append((i, j))
    return Digraph(n, frozenset(edges))


def random_digraphs(
    seed: int, count: int, n: int, edge_prob: float, allow_loops: bool = True
) -> list[Digraph]:
    """A reproducible batch drawn from one stream seeded with ``seed``."""
    rng = random.Random(seed)
    return [random_digraph(rng, n, edge_prob, allow_loops) for _ in range(count)]


def random_sparse_matrix(
    rng: random.Random, n: int, zero_prob: float = 0.7
) -> list[list[float]]:
    """An n-by-n nonnegative matrix with the given expected sparsity."""
    return [
        [0.0 if rng.random() < zero_prob else rng.uniform(0.5, 2.0) for _ in range(n)]
        for _ in range(n)
    ]
