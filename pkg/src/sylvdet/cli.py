"""Command-line front end: a thin client over the runner layer.

By default commands execute in-process; with ``--server URL`` the same
request is POSTed to a running service and the returned report rendered
identically. Exit codes: 0 all checks passed, 1 at least one mathematical
assertion failed, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .errors import SylvdetError
from .runner import UsageError, render_json, render_text, run
from .schemas import FAMILY_NAMES, Report, RunOptions

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _parse_param(text: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name or not value:
        raise argparse.ArgumentTypeError(f"expected name=rational, got {text!r}")
    return name, value


def _add_common(parser: argparse.ArgumentParser, with_dims: bool = True) -> None:
    if with_dims:
        parser.add_argument("--dim", type=int, help="single dimension (dim = N+1)")
        parser.add_argument("--dims", type=_parse_dims, metavar="A..B",
                            help="inclusive dimension range")
        parser.add_argument("--max-dim", type=int, dest="max_dim",
                            help="dimensions 1..K")
    parser.add_argument("--param", type=_parse_param, action="append", default=[],
                        metavar="NAME=RAT", help="explicit family parameter, repeatable")
    parser.add_argument("--samples", type=int, default=1,
                        help="seeded parameter sets per (family, dim)")
    parser.add_argument("--seed", type=int, default=0, help="base sampling seed")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--paper-literal", action="store_true", dest="paper_literal",
                        help="use the printed (pre-correction) formula variants")
    parser.add_argument("--variant", help="named identity variant (cn1 or cN1)")
    parser.add_argument("--out", help="write the report to this path as well")
    parser.add_argument("--server", help="POST to a running service instead of running in-process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylvdet",
        description="Exact verification of Sylvester-type tridiagonal determinant identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="characteristic polynomial and factored closed form")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES)
    _add_common(p)

    p = sub.add_parser("verify", help="closed-form / oracle / induction sweep")
    p.add_argument("--family", default="all", choices=FAMILY_NAMES + ("all",))
    _add_common(p)

    p = sub.add_parser("reduce", help="replay a block-triangularization")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p.add_argument("--trace", action="store_true", help="print intermediate matrices")
    _add_common(p)

    p = sub.add_parser("identity", help="q-racah scalar identity (randomized exact)")
    p.add_argument("--max-n", type=int, default=8, dest="max_n",
                   help="N; the sweep covers n = 0..N-1")
    p.add_argument("--trials", type=int, default=20)
    _add_common(p, with_dims=False)

    p = sub.add_parser("table", help="golden table of factored closed forms")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES)
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _options_from_args(args: argparse.Namespace) -> RunOptions:
    return RunOptions(
        family=getattr(args, "family", "all"),
        dim=getattr(args, "dim", None),
        dims=getattr(args, "dims", None),
        max_dim=getattr(args, "max_dim", None),
        params=dict(args.param),
        samples=args.samples,
        seed=args.seed,
        trials=getattr(args, "trials", 20),
        max_n=getattr(args, "max_n", 8),
        trace=getattr(args, "trace", False),
        paper_literal=args.paper_literal,
        variant=args.variant,
    )


def _run_remote(server: str, command: str, opts: RunOptions) -> Report:
    import httpx

    url = server.rstrip("/") + "/" + command
    response = httpx.post(url, json=opts.model_dump(mode="json"), timeout=300.0)
    if response.status_code == 400:
        raise UsageError(response.json().get("detail", "bad request"))
    response.raise_for_status()
    return Report.model_validate(response.json())


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("sylvdet.service:app", host=args.host, port=args.port)
        return EXIT_OK

    try:
        opts = _options_from_args(args)
        if args.server:
            report = _run_remote(args.server, args.command, opts)
        else:
            report = run(args.command, opts)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SylvdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    output = render_json(report) if args.format == "json" else render_text(report)
    sys.stdout.write(output)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(output)
    return EXIT_OK if report.summary.failed == 0 else EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
