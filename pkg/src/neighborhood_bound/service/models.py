"""Request and response bodies for the verification service.

Graph, matrix, and grading payloads mirror the on-disk file formats one to
one, so the CLI can forward file contents untouched.  Deeply nested report
payloads (certificates, per-step verification) stay as plain dicts — their
schema is documented where they are produced.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class GraphBody(BaseModel):
    """The digraph file format; set `undirected` for unordered edges."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list)
    undirected: bool = False


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    graph: GraphBody
    strict: bool = False


class CheckResponse(BaseModel):
    kind: Literal["digraph", "undirected"]
    oracle: Optional[dict] = None
    corollary: Optional[dict] = None
    certificate: Optional[dict] = None
    verify: Optional[dict] = None
    certificate_error: Optional[str] = None
    holds: bool
    cross_checks_ok: bool
    ok: bool


class FuzzRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    count: int = Field(default=100, ge=1)
    n: int = Field(default=6, ge=0)
    edge_prob: float = Field(default=0.3, ge=0.0, le=1.0)
    allow_loops: bool = True
    strict: bool = False


class FuzzResponse(BaseModel):
    seed: int
    count: int
    n: int
    edge_prob: float
    allow_loops: bool
    holds: int
    certified: int
    violations: list[dict]
    violation_count: int
    cross_check_mismatches: list[dict]
    mismatch_count: int
    ok: bool


class ExhaustiveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_max: int = Field(default=4, ge=0)
    allow_loops: bool = True
    with_certificates: bool = True
    allow_large: bool = False
    undirected: bool = False


class ExhaustiveResponse(BaseModel):
    n_max: int
    allow_loops: bool
    with_certificates: bool
    per_n: dict[str, dict[str, int]]
    total_graphs: int
    violations: list[dict]
    ok: bool


class UndirectedSweepResponse(BaseModel):
    n_max: int
    per_n: dict[str, dict[str, int]]
    total_graphs: int
    violations: list[dict]
    violation_count: int
    ok: bool


class MatrixRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    matrix: list[list[float]]


class MatrixResponse(BaseModel):
    n: int
    gram_size: int
    supp_size: int
    holds: bool
    support: list[tuple[int, int]]
    gram: list[tuple[int, int]]
    numeric_agrees: bool
    support_graph: dict
    ok: bool


class GradingRequest(BaseModel):
    """`group` is a builtin spec string ("C2", "D4", "S3", "Q8", products) or a
    full Cayley-table object; `H` lists subgroup generators by element name
    (empty = trivial subgroup); `tuple` lists the grading tuple entries."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    group: Union[str, list, dict]
    H: list[str] = Field(default_factory=list)
    tuple_: list[str] = Field(alias="tuple", min_length=1)


class GradingResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group: Optional[str] = None
    group_order: int
    H: list[str]
    tuple_: list[str] = Field(alias="tuple")
    dims: dict[str, int]
    total: int
    expected_total: int
    total_ok: bool
    theorem_b: dict
    components: list[dict]
    component_edges: dict[str, list[tuple[int, int]]]
    ok: bool


class GradingSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: Union[str, list, dict]
    n_max: int = Field(default=2, ge=1)


class GradingSweepResponse(BaseModel):
    group: str
    group_order: int
    n_max: int
    subgroup_count: int
    data_count: int
    violations: list[dict]
    violation_count: int
    ok: bool


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str


class ErrorBody(BaseModel):
    detail: str
    error: str


__all__ = [
    "GraphBody",
    "CheckRequest",
    "CheckResponse",
    "FuzzRequest",
    "FuzzResponse",
    "ExhaustiveRequest",
    "ExhaustiveResponse",
    "UndirectedSweepResponse",
    "MatrixRequest",
    "MatrixResponse",
    "GradingRequest",
    "GradingResponse",
    "GradingSweepRequest",
    "GradingSweepResponse",
    "HealthResponse",
    "ErrorBody",
]
