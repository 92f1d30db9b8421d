"""HTTP front end and the handler functions behind each endpoint.

Handlers are plain request-model -> response-model functions; the CLI
calls them in-process and the FastAPI routes expose them over HTTP, so
both paths produce identical bytes. Domain violations surface as
ValueError and map to HTTP 400.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from fastapi import FastAPI, HTTPException

from .. import datapath, sweep
from ..fixedpoint import parse_value
from ..goldschmidt import (
    DivisionProblem,
    GoldschmidtConfig,
    relative_error,
    render_trace,
    run_division,
)
from ..recip_table import ReciprocalTable, build_table, dump_table, verify_table
from .schemas import (
    AreaModel,
    CompareRequest,
    CompareResponse,
    DivideRequest,
    DivideResponse,
    FixedValueModel,
    ProblemModel,
    RationalModel,
    ScheduleModel,
    SimulateRequest,
    SimulateResponse,
    SweepRequest,
    SweepResponse,
    TableRequest,
    TableResponse,
    TimingModel,
)

P_DEGENERATE_WARNING = (
    "p=1 is degenerate: its lower table entry is exactly 1/2 and the seed "
    "error bound 2^-p is at its weakest; p >= 2 is the supported range"
)


@lru_cache(maxsize=32)
def verified_table(p: int) -> ReciprocalTable:
    """Build-and-verify is pure in p, so one copy serves every request."""
    table = build_table(p)
    verify_table(table)
    return table


def _parse_arg(name: str, text: str):
    try:
        return parse_value(text)
    except ValueError as e:
        raise ValueError(f"argument {name}: {e}") from e


def handle_table(req: TableRequest) -> TableResponse:
    if req.verify:
        table = verified_table(req.p)
        max_err = RationalModel.from_fraction(table.max_seed_error)
    else:
        table = build_table(req.p)
        max_err = None
    return TableResponse(
        p=req.p,
        entries=[FixedValueModel.from_fixed(e) for e in table.entries],
        max_seed_error=max_err,
        text=dump_table(table),
        warning=P_DEGENERATE_WARNING if req.p == 1 else None,
    )


def handle_divide(req: DivideRequest) -> DivideResponse:
    problem = DivisionProblem(n=_parse_arg("n", req.n), d=_parse_arg("d", req.d))
    config = GoldschmidtConfig(
        p=req.p,
        iterations=req.iterations,
        mult_frac_bits=req.mult_frac_bits,
        complement_mode=req.complement_mode,
    )
    if req.seed is not None:
        trace = run_division(problem, config, seed=_parse_arg("seed", req.seed))
    else:
        trace = run_division(problem, config, table=verified_table(config.p))
    errors = [relative_error(trace, i) for i in range(1, len(trace.q) + 1)]
    return DivideResponse(
        problem=ProblemModel(
            n=FixedValueModel.from_fixed(problem.n),
            d=FixedValueModel.from_fixed(problem.d),
        ),
        k=[FixedValueModel.from_fixed(v) for v in trace.k],
        q=[FixedValueModel.from_fixed(v) for v in trace.q],
        r=[FixedValueModel.from_fixed(v) for v in trace.r],
        exact_quotient=RationalModel.from_fraction(trace.exact_quotient),
        relative_error=[RationalModel.from_fraction(e) for e in errors],
        text=render_trace(trace),
    )


def handle_sweep(req: SweepRequest) -> SweepResponse:
    config = GoldschmidtConfig(
        p=req.p,
        iterations=req.iterations,
        mult_frac_bits=req.mult_frac_bits,
        complement_mode=req.complement_mode,
    )
    target = None
    if req.target is not None:
        try:
            target = Fraction(req.target)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"argument target: {e}") from e
    result, rows = sweep.run_sweep(
        config, table=verified_table(config.p), density=req.density, target=target
    )
    echo = dict(result.config)
    echo["target_rel_error"] = str(echo["target_rel_error"])
    return SweepResponse(
        config=echo,
        total_pairs=result.total_pairs,
        worst_rel_error=RationalModel.from_fraction(result.worst_rel_error),
        mean_rel_error=RationalModel.from_fraction(result.mean_rel_error),
        pairs_exceeding_target=result.pairs_exceeding_target,
        max_one_minus_r=RationalModel.from_fraction(result.max_one_minus_r),
        csv=sweep.render_csv(rows),
        text=sweep.render_summary(result),
    )


def _schedule_model(report: datapath.ScheduleReport) -> ScheduleModel:
    return ScheduleModel(
        topology=report.topology,
        iterations=report.iterations,
        node_issue=report.node_issue,
        node_complete=report.node_complete,
        node_unit=report.node_unit,
        unit_occupancy=report.unit_occupancy,
        total_cycles=report.total_cycles,
    )


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    timing = datapath.TimingParams(**req.timing.model_dump())
    dag = datapath.build_dag(req.iterations)
    spec = datapath.build_topology(req.topology, req.iterations, timing)
    report = datapath.schedule(dag, spec)
    return SimulateResponse(
        schedule=_schedule_model(report),
        text=datapath.render_schedule(report),
    )


def handle_compare(req: CompareRequest) -> CompareResponse:
    timing = datapath.TimingParams(**req.timing.model_dump())
    report = datapath.compare(req.iterations, timing)
    return CompareResponse(
        iterations=report.iterations,
        timing=TimingModel(
            mult_latency=timing.mult_latency,
            mult_initiation_interval=timing.mult_initiation_interval,
            rom_latency=timing.rom_latency,
            complement_latency=timing.complement_latency,
            logic_block_latency=timing.logic_block_latency,
        ),
        original_schedule=_schedule_model(report.original_schedule),
        feedback_schedule=_schedule_model(report.feedback_schedule),
        original_area=AreaModel(**report.original_area.__dict__),
        feedback_area=AreaModel(**report.feedback_area.__dict__),
        cycle_delta=report.cycle_delta,
        area_savings=report.area_savings,
        one_cycle_tradeoff=report.one_cycle_tradeoff,
        claims_applicable=report.claims_applicable,
        claims_pass=report.claims_pass,
        note=report.note,
        text=datapath.render_comparison(report),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="golddiv", description="Fixed-point divider lab: table, trace, schedule")

    def run(handler, req):
        try:
            return handler(req)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e)) from e

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/table", response_model=TableResponse)
    def table(req: TableRequest):
        return run(handle_table, req)

    @app.post("/divide", response_model=DivideResponse)
    def divide(req: DivideRequest):
        return run(handle_divide, req)

    @app.post("/sweep", response_model=SweepResponse)
    def sweep_endpoint(req: SweepRequest):
        return run(handle_sweep, req)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        return run(handle_simulate, req)

    @app.post("/compare", response_model=CompareResponse)
    def compare_endpoint(req: CompareRequest):
        return run(handle_compare, req)

    return app
