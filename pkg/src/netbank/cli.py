"""Command-line entry points: seed, enquire, analyze, serve.

Exit codes: 0 success, 1 runtime error, 2 usage error (argparse).
Runtime errors print ``{"error": <code>, "message": <text>}`` to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .api import ApiConfig, create_app
from .enquiry import EnquiryRequest, builtin_registry, resolve_family, resolve_service
from .errors import InvalidPeriod, NetBankError
from .jsonio import parse_timestamp
from .process_model import (
    analyze,
    load_bundled_model,
    load_model,
    report_to_json,
    report_to_text,
)
from .seed import DEFAULT_SEED, seed_store
from .store import open_store


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netbank",
        description="Simulated internet-banking backend with a double-dispatch enquiry engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seed = sub.add_parser("seed", help="write the deterministic demo fixture")
    p_seed.add_argument("--dir", required=True, type=Path, help="store directory")
    p_seed.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed")

    p_enq = sub.add_parser("enquire", help="run one enquiry directly against a store")
    p_enq.add_argument("--dir", required=True, type=Path)
    p_enq.add_argument("--family", required=True, help="family selector (int) or name")
    p_enq.add_argument("--service", required=True, help="service index (int) or name")
    p_enq.add_argument("--account", required=True)
    p_enq.add_argument("--from", dest="period_from", help="statement period start (ISO-8601)")
    p_enq.add_argument("--to", dest="period_to", help="statement period end (ISO-8601)")
    p_enq.add_argument("--depth", type=int, help="mini-statement depth")

    p_ana = sub.add_parser("analyze", help="crosscutting report for a process model")
    p_ana.add_argument("model", nargs="?", type=Path, help="path to a .bpm file (default: bundled)")
    p_ana.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p_srv = sub.add_parser("serve", help="start the HTTP API")
    p_srv.add_argument("--dir", required=True, type=Path)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8435)
    p_srv.add_argument("--depth", type=int, default=5, help="default mini-statement depth")
    p_srv.add_argument("--session-lifetime", type=int, default=3600, help="seconds")
    p_srv.add_argument("--cors", action="append", default=None, help="allowed UI origin (repeatable)")
    p_srv.add_argument("--static", type=Path, help="directory of built UI files to serve at /ui")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NetBankError as exc:
        json.dump({"error": exc.code, "message": exc.message}, sys.stderr)
        sys.stderr.write("\n")
        return 1


def _cmd_seed(args) -> int:
    store = seed_store(args.dir, seed=args.seed)
    snapshot = store.snapshot()
    print(
        f"seeded {len(snapshot.accounts)} accounts, "
        f"{len(snapshot.transactions)} transactions into {args.dir}"
    )
    return 0


def _cmd_enquire(args) -> int:
    registry = builtin_registry()
    family = resolve_family(registry, args.family)
    service = resolve_service(registry, args.service)
    period = None
    if args.period_from or args.period_to:
        if not (args.period_from and args.period_to):
            raise InvalidPeriod("--from and --to must be given together")
        try:
            period = (parse_timestamp(args.period_from), parse_timestamp(args.period_to))
        except ValueError as exc:
            raise InvalidPeriod(f"bad timestamp: {exc}") from exc
    request = EnquiryRequest(
        family=family,
        service=service,
        account_id=args.account,
        period=period,
        depth=args.depth,
    )
    snapshot = open_store(args.dir).snapshot()
    result = registry.dispatch(request, snapshot)
    print(json.dumps(result.to_json(), indent=2))
    return 0


def _cmd_analyze(args) -> int:
    model = load_model(args.model) if args.model else load_bundled_model()
    report = analyze(model)
    if args.json:
        print(json.dumps(report_to_json(report), indent=2))
    else:
        print(report_to_text(report), end="")
    return 0


def _cmd_serve(args) -> int:
    host, port = args.host, args.port
    listen = os.environ.get("NETBANK_LISTEN")
    if listen:
        host, _, port_text = listen.rpartition(":")
        port = int(port_text)
    config = ApiConfig(
        store_dir=args.dir,
        host=host,
        port=port,
        mini_statement_depth=args.depth,
        session_lifetime_seconds=args.session_lifetime,
        cors_origins=tuple(args.cors) if args.cors else ("*",),
        static_dir=args.static,
    )
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


_COMMANDS = {
    "seed": _cmd_seed,
    "enquire": _cmd_enquire,
    "analyze": _cmd_analyze,
    "serve": _cmd_serve,
}


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
