"""Certified verification that a finite digraph without parallel edges has at
least as many mutually-neighbored ordered vertex pairs as edges — plus the
corollaries of that bound for undirected graphs and nonnegative matrices, and
dimension audits for gradings of matrix algebras by finite groups.

The HTTP layer lives in :mod:`neighborhood_bound.service` and the command-line
client in :mod:`neighborhood_bound.cli`; neither is imported here, so plain
library use never pulls in FastAPI.
"""

from .certificates import (
    Certificate,
    CertificateError,
    CertStep,
    ExhaustiveSummary,
    MalformedCertificate,
    OracleReport,
    SoundnessViolation,
    StepKind,
    StepSelectionFailed,
    StepUnsound,
    VerifyReport,
    build_certificate,
    certificate_from_json_dict,
    certificate_to_json_dict,
    exhaustive_verify,
    mutual_pairs_agree,
    oracle_check,
    tightness_scan,
    verify_certificate,
)
from .corollaries import (
    NonnegMatrix,
    UndirectedGraph,
    corollary_matrix_check,
    corollary_undirected_check,
    gamma,
    gram_support,
    gram_support_numeric,
    support,
    support_digraph,
    symmetrize,
)
from .digraph import (
    Digraph,
    PairRelation,
    compose,
    degree_profile,
    digraph_from_json_dict,
    digraph_from_text,
    digraph_to_dot,
    digraph_to_json_dict,
    digraph_to_text,
    edge_relation,
    is_balanced,
    mutual_pair_count,
    mutual_pairs,
    mutual_pairs_via_neighborhoods,
    opposite,
    shortest_directed_cycle,
)
from .gradings import (
    DimensionTable,
    GradingDatum,
    GradingReport,
    component_digraph,
    component_dimension,
    datum_from_json_dict,
    datum_to_json_dict,
    dimension_table,
    enumerate_data,
    grading_report,
    verify_injection,
    verify_theorem_b,
)
from .groups import (
    FiniteGroup,
    GroupError,
    MissingInverse,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    ParseError,
    Subgroup,
    TooLarge,
    all_subgroups,
    builtin_group,
    element_index_from_text,
    group_from_json_dict,
    group_from_table,
    group_to_json_dict,
    subgroup_from_generators,
)
from .randgen import random_digraph, random_digraphs, random_sparse_matrix
from .sweeps import (
    FuzzSummary,
    GradingSweepSummary,
    UndirectedSummary,
    fuzz_digraphs,
    grading_sweep,
    undirected_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # digraph core
    "Digraph",
    "PairRelation",
    "compose",
    "degree_profile",
    "digraph_from_json_dict",
    "digraph_from_text",
    "digraph_to_dot",
    "digraph_to_json_dict",
    "digraph_to_text",
    "edge_relation",
    "is_balanced",
    "mutual_pair_count",
    "mutual_pairs",
    "mutual_pairs_via_neighborhoods",
    "opposite",
    "shortest_directed_cycle",
    # certificates
    "Certificate",
    "CertificateError",
    "CertStep",
    "ExhaustiveSummary",
    "MalformedCertificate",
    "OracleReport",
    "SoundnessViolation",
    "StepKind",
    "StepSelectionFailed",
    "StepUnsound",
    "VerifyReport",
    "build_certificate",
    "certificate_from_json_dict",
    "certificate_to_json_dict",
    "exhaustive_verify",
    "mutual_pairs_agree",
    "oracle_check",
    "tightness_scan",
    "verify_certificate",
    # corollaries
    "NonnegMatrix",
    "UndirectedGraph",
    "corollary_matrix_check",
    "corollary_undirected_check",
    "gamma",
    "gram_support",
    "gram_support_numeric",
    "support",
    "support_digraph",
    "symmetrize",
    # groups
    "FiniteGroup",
    "GroupError",
    "MissingInverse",
    "NoIdentity",
    "NotAssociative",
    "NotLatinSquare",
    "ParseError",
    "Subgroup",
    "TooLarge",
    "all_subgroups",
    "builtin_group",
    "element_index_from_text",
    "group_from_json_dict",
    "group_from_table",
    "group_to_json_dict",
    "subgroup_from_generators",
    # gradings
    "DimensionTable",
    "GradingDatum",
    "GradingReport",
    "component_digraph",
    "component_dimension",
    "datum_from_json_dict",
    "datum_to_json_dict",
    "dimension_table",
    "enumerate_data",
    "grading_report",
    "verify_injection",
    "verify_theorem_b",
    # generation and sweeps
    "random_digraph",
    "random_digraphs",
    "random_sparse_matrix",
    "FuzzSummary",
    "GradingSweepSummary",
    "UndirectedSummary",
    "fuzz_digraphs",
    "grading_sweep",
    "undirected_sweep",
]
