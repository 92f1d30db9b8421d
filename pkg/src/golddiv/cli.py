"""Command-line front end.

Every data subcommand builds a service request model and either calls
the handler in-process or posts it to a running server (--server URL);
both paths print the same bytes. Exit codes: 0 success, 1 usage error,
2 domain or verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import datapath
from .service import app as service
from .service.schemas import (
    CompareRequest,
    CompareResponse,
    DivideRequest,
    DivideResponse,
    ScheduleModel,
    SimulateRequest,
    SimulateResponse,
    SweepRequest,
    SweepResponse,
    TableRequest,
    TableResponse,
    TimingModel,
)


class _ArgumentParser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for
    # domain failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _mult_bits(text: str):
    if text.lower() == "exact":
        return None
    return int(text)


_HANDLERS = {
    "/table": (service.handle_table, TableResponse),
    "/divide": (service.handle_divide, DivideResponse),
    "/sweep": (service.handle_sweep, SweepResponse),
    "/simulate": (service.handle_simulate, SimulateResponse),
    "/compare": (service.handle_compare, CompareResponse),
}


def _call(args, path, request):
    handler, resp_cls = _HANDLERS[path]
    if not args.server:
        return handler(request)
    import httpx

    try:
        resp = httpx.post(args.server.rstrip("/") + path, json=request.model_dump(), timeout=300)
    except httpx.HTTPError as e:
        raise ValueError(f"server request failed: {e}") from e
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise ValueError(f"server: {detail}")
    return resp_cls.model_validate(resp.json())


def _write_out(path: str, content: str) -> None:
    if not content.endswith("\n"):
        content += "\n"
    Path(path).write_text(content)


def cmd_table(args) -> int:
    resp = _call(args, "/table", TableRequest(p=args.p, verify=args.verify))
    if resp.warning:
        print(f"warning: {resp.warning}", file=sys.stderr)
    if args.format == "json":
        if args.out:
            _write_out(args.out, resp.text)
        print(resp.model_dump_json(indent=2))
        return 0
    if args.out:
        _write_out(args.out, resp.text)
        print(f"wrote {args.out} ({len(resp.entries)} entries)")
    else:
        sys.stdout.write(resp.text)
    if resp.max_seed_error is not None:
        err = resp.max_seed_error.to_fraction()
        print(f"max_seed_error = {err} ({float(err):.6e})")
    return 0


def cmd_divide(args) -> int:
    req = DivideRequest(
        n=args.n,
        d=args.d,
        p=args.p,
        iterations=args.iters,
        mult_frac_bits=args.mult_bits,
        complement_mode=args.complement,
        seed=args.seed,
    )
    resp = _call(args, "/divide", req)
    content = resp.model_dump_json(indent=2) if args.format == "json" else resp.text
    if args.out:
        _write_out(args.out, content)
        print(f"wrote {args.out}")
    else:
        print(content)
    return 0


def cmd_sweep(args) -> int:
    req = SweepRequest(
        p=args.p,
        iterations=args.iters,
        mult_frac_bits=args.mult_bits,
        complement_mode=args.complement,
        density=args.density,
        target=args.target,
    )
    resp = _call(args, "/sweep", req)
    if args.out:
        _write_out(args.out, resp.csv)
    if args.format == "json":
        print(resp.model_dump_json(indent=2))
    elif args.format == "csv":
        if args.out:
            print(f"wrote {args.out} ({resp.total_pairs} rows)")
        else:
            sys.stdout.write(resp.csv)
    else:
        print(resp.text)
        if args.out:
            print(f"wrote {args.out} ({resp.total_pairs} rows)")
    return 0


def _timing_model(args) -> TimingModel:
    return TimingModel(
        mult_latency=args.mult_latency,
        mult_initiation_interval=args.mult_ii,
        rom_latency=args.rom_latency,
        complement_latency=args.compl_latency,
        logic_block_latency=args.logic_latency,
    )


def _schedule_report(model: ScheduleModel) -> datapath.ScheduleReport:
    return datapath.ScheduleReport(
        topology=model.topology,
        iterations=model.iterations,
        node_issue=model.node_issue,
        node_complete=model.node_complete,
        node_unit=model.node_unit,
        unit_occupancy={u: [tuple(s) for s in spans] for u, spans in model.unit_occupancy.items()},
        total_cycles=model.total_cycles,
    )


def cmd_simulate(args) -> int:
    req = SimulateRequest(topology=args.topology, iterations=args.iters, timing=_timing_model(args))
    resp = _call(args, "/simulate", req)
    if args.format == "json":
        content = resp.model_dump_json(indent=2)
    elif args.format == "csv":
        content = datapath.render_schedule(_schedule_report(resp.schedule), fmt="csv")
    else:
        content = resp.text
    if args.out:
        _write_out(args.out, content)
        print(f"wrote {args.out}")
    else:
        print(content, end="" if content.endswith("\n") else "\n")
    return 0


def cmd_compare(args) -> int:
    req = CompareRequest(iterations=args.iters, timing=_timing_model(args))
    resp = _call(args, "/compare", req)
    content = resp.model_dump_json(indent=2) if args.format == "json" else resp.text
    if args.out:
        _write_out(args.out, content)
        print(f"wrote {args.out}")
    else:
        print(content)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.create_app(), host=args.host, port=args.port)
    return 0


def _add_common(sub, formats=("text", "json")) -> None:
    sub.add_argument("--format", choices=formats, default="text")
    sub.add_argument("--out", help="write the primary output to this path")
    sub.add_argument("--server", help="base URL of a running service; default runs in-process")


def _add_timing(sub) -> None:
    sub.add_argument("--mult-latency", type=int, default=4)
    sub.add_argument("--mult-ii", type=int, default=1, help="multiplier initiation interval")
    sub.add_argument("--rom-latency", type=int, default=1)
    sub.add_argument("--compl-latency", type=int, default=0)
    sub.add_argument("--logic-latency", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="golddiv",
        description="Fixed-point divider lab: seed tables, division traces, "
        "accuracy sweeps, and cycle/area datapath comparison.",
    )
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    table = subs.add_parser("table", help="generate (and verify) a reciprocal seed table")
    table.add_argument("--p", type=int, default=4, help="index width in bits")
    table.add_argument("--verify", action="store_true", help="measure the worst seed error exhaustively")
    _add_common(table)
    table.set_defaults(func=cmd_table)

    divide = subs.add_parser("divide", help="run one division and print the full trace")
    divide.add_argument("--n", required=True, help="numerator in [1,2): '1.25' or '1.01b'")
    divide.add_argument("--d", required=True, help="denominator in [1,2)")
    divide.add_argument("--p", type=int, default=4)
    divide.add_argument("--iters", type=int, default=3)
    divide.add_argument("--mult-bits", type=_mult_bits, default=None,
                        help="fraction bits kept per multiply, or 'exact' (default)")
    divide.add_argument("--complement", choices=("exact", "ones"), default="exact")
    divide.add_argument("--seed", help="override the table seed, e.g. '0.75'")
    _add_common(divide)
    divide.set_defaults(func=cmd_divide)

    swp = subs.add_parser("sweep", help="run an (N, D) grid against the exact quotient")
    swp.add_argument("--p", type=int, default=4)
    swp.add_argument("--iters", type=int, default=3)
    swp.add_argument("--mult-bits", type=_mult_bits, default=None)
    swp.add_argument("--complement", choices=("exact", "ones"), default="exact")
    swp.add_argument("--density", type=int, help="samples per axis when p > 8 (stratified)")
    swp.add_argument("--target", help="relative-error target as a fraction, e.g. '1/4294967296'")
    _add_common(swp, formats=("text", "json", "csv"))
    swp.set_defaults(func=cmd_sweep)

    sim = subs.add_parser("simulate", help="schedule one topology and print the cycle table")
    sim.add_argument("--topology", required=True, choices=datapath.TOPOLOGIES)
    sim.add_argument("--iters", type=int, default=3)
    _add_timing(sim)
    _add_common(sim, formats=("text", "json", "csv"))
    sim.set_defaults(func=cmd_simulate)

    cmp_ = subs.add_parser("compare", help="original vs feedback: cycles, units, savings")
    cmp_.add_argument("--iters", type=int, default=3)
    _add_timing(cmp_)
    _add_common(cmp_)
    cmp_.set_defaults(func=cmd_compare)

    serve = subs.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve, server=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
