"""FastAPI wrapper around the verification core.

One endpoint per CLI subcommand plus a health probe.  Domain errors
(unparsable groups, malformed graphs, budget guards) come back as 400 with the
offending detail; genuine property violations never error — they are reported
in the response body with ``ok: false`` so batch callers can distinguish
"input was bad" from "the mathematics failed".
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..certificates import (
    CertificateError,
    MalformedCertificate,
    build_certificate,
    certificate_to_json_dict,
    exhaustive_verify,
    oracle_check,
    verify_certificate,
)
from ..corollaries import (
    NonnegMatrix,
    UndirectedGraph,
    corollary_matrix_check,
    corollary_undirected_check,
    gram_support,
    gram_support_numeric,
    support,
    support_digraph,
    symmetrize,
)
from ..digraph import Digraph, digraph_to_json_dict, mutual_pairs
from ..gradings import GradingDatum, component_digraph, grading_report
from ..groups import (
    FiniteGroup,
    GroupError,
    builtin_group,
    element_index_from_text,
    group_from_json_dict,
    subgroup_from_generators,
)
from ..sweeps import fuzz_digraphs, grading_sweep, undirected_sweep
from .models import (
    CheckRequest,
    CheckResponse,
    ExhaustiveRequest,
    ExhaustiveResponse,
    FuzzRequest,
    FuzzResponse,
    GradingRequest,
    GradingResponse,
    GradingSweepRequest,
    GradingSweepResponse,
    HealthResponse,
    MatrixRequest,
    MatrixResponse,
    UndirectedSweepResponse,
)


def _resolve_group(raw) -> tuple[FiniteGroup, str | None]:
    """Spec string, bare table, or {"table": ..., "names": ...} object."""
    if isinstance(raw, str):
        return builtin_group(raw), raw
    if isinstance(raw, list):
        return group_from_json_dict({"table": raw}), None
    return group_from_json_dict(raw), None


def create_app() -> FastAPI:
    app = FastAPI(
        title="neighborhood-bound",
        version=__version__,
        description=(
            "Checks that every finite digraph without parallel edges has at "
            "least as many mutually-neighbored ordered vertex pairs as edges, "
            "with replayable elimination certificates, plus the undirected and "
            "matrix-support corollaries and dimension audits for group-graded "
            "matrix data."
        ),
    )

    @app.exception_handler(GroupError)
    @app.exception_handler(MalformedCertificate)
    @app.exception_handler(ValueError)
    async def _bad_input(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "error": type(exc).__name__},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/check", response_model=CheckResponse)
    def check(req: CheckRequest) -> CheckResponse:
        if req.graph.undirected:
            undirected = UndirectedGraph.from_pairs(req.graph.n, req.graph.edges)
            corollary = corollary_undirected_check(undirected)
            g = symmetrize(undirected)
            kind = "undirected"
            holds = corollary.holds
            oracle_json = None
            corollary_json = corollary.to_json_dict()
        else:
            g = Digraph.from_pairs(req.graph.n, req.graph.edges)
            oracle = oracle_check(g)
            kind = "digraph"
            holds = oracle.holds
            oracle_json = oracle.to_json_dict()
            corollary_json = None

        certificate_json = None
        verify_json = None
        certificate_error = None
        cross_checks_ok = True
        certificate_ok = False
        try:
            cert = build_certificate(g)
            verified = verify_certificate(g, cert)
            certificate_json = certificate_to_json_dict(cert)
            verify_json = verified.to_json_dict()
            cross_checks_ok = verified.cross_checks_ok
            certificate_ok = verified.ok
        except CertificateError as exc:
            certificate_error = f"{type(exc).__name__}: {exc}"

        ok = (
            holds
            and certificate_ok
            and certificate_error is None
            and (cross_checks_ok or not req.strict)
        )
        return CheckResponse(
            kind=kind,
            oracle=oracle_json,
            corollary=corollary_json,
            certificate=certificate_json,
            verify=verify_json,
            certificate_error=certificate_error,
            holds=holds,
            cross_checks_ok=cross_checks_ok,
            ok=ok,
        )

    @app.post("/fuzz", response_model=FuzzResponse)
    def fuzz(req: FuzzRequest) -> FuzzResponse:
        summary = fuzz_digraphs(
            seed=req.seed,
            count=req.count,
            n=req.n,
            edge_prob=req.edge_prob,
            allow_loops=req.allow_loops,
        )
        body = summary.to_json_dict()
        if req.strict and summary.mismatch_count:
            body["ok"] = False
        return FuzzResponse(**body)

    @app.post("/exhaustive", response_model=ExhaustiveResponse | UndirectedSweepResponse)
    def exhaustive(req: ExhaustiveRequest):
        if req.undirected:
            summary = undirected_sweep(req.n_max)
            return UndirectedSweepResponse(**summary.to_json_dict())
        summary = exhaustive_verify(
            n_max=req.n_max,
            allow_loops=req.allow_loops,
            with_certificates=req.with_certificates,
            allow_large=req.allow_large,
        )
        return ExhaustiveResponse(**summary.to_json_dict())

    @app.post("/matrix", response_model=MatrixResponse)
    def matrix(req: MatrixRequest) -> MatrixResponse:
        a = NonnegMatrix.from_rows(req.matrix)
        report = corollary_matrix_check(a)
        supp = support(a)
        gram = gram_support(a)
        numeric = gram_support_numeric(a)
        numeric_agrees = gram.pairs == numeric.pairs
        return MatrixResponse(
            n=a.n,
            gram_size=report.gram_size,
            supp_size=report.supp_size,
            holds=report.holds,
            support=sorted(supp.pairs),
            gram=sorted(gram.pairs),
            numeric_agrees=numeric_agrees,
            support_graph=digraph_to_json_dict(support_digraph(a)),
            ok=report.holds and numeric_agrees,
        )

    @app.post("/grading", response_model=GradingResponse)
    def grading(req: GradingRequest) -> GradingResponse:
        group, spec = _resolve_group(req.group)
        gens = [element_index_from_text(group, t) for t in req.H]
        h = subgroup_from_generators(group, gens)
        tup = tuple(element_index_from_text(group, t) for t in req.tuple_)
        datum = GradingDatum(group=group, h=h, tup=tup)
        report = grading_report(datum)
        body = report.to_json_dict()
        component_edges = {
            group.element_names[g]: sorted(component_digraph(datum, g).edges)
            for g in group.elements
        }
        return GradingResponse(
            group=spec,
            group_order=body["group_order"],
            H=body["H"],
            tuple_=body["tuple"],
            dims=body["dims"],
            total=body["total"],
            expected_total=body["expected_total"],
            total_ok=body["total_ok"],
            theorem_b=body["theorem_b"],
            components=body["components"],
            component_edges=component_edges,
            ok=body["ok"],
        )

    @app.post("/grading-sweep", response_model=GradingSweepResponse)
    def grading_sweep_route(req: GradingSweepRequest) -> GradingSweepResponse:
        group, spec = _resolve_group(req.group)
        summary = grading_sweep(group, req.n_max, label=spec)
        return GradingSweepResponse(**summary.to_json_dict())

    return app


app = create_app()
