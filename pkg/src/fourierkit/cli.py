"""Thin command-line client for the service.

Every subcommand builds one HTTP request and renders the response.  By
default the request runs against an in-process instance of the service
(through the ASGI transport, so it passes the full routing/validation
stack without a socket); ``--server URL`` points it at a live instance
instead.

Exit codes: 0 all requested checks passed, 1 a check failed, 2 usage or
parse error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import sys
from typing import List, Optional, Tuple

import httpx

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3

_KIND_EXIT = {
    "syntax": EXIT_USAGE,
    "constraint": EXIT_USAGE,
    "invalid-system": EXIT_USAGE,
    "excluded-point": EXIT_USAGE,
    "existence": EXIT_USAGE,
    "precondition": EXIT_USAGE,
    "unsupported": EXIT_USAGE,
    "unstable-system": EXIT_USAGE,
    "sim-config": EXIT_USAGE,
    "no-convergence": EXIT_NO_CONVERGENCE,
    "not-settled": EXIT_NO_CONVERGENCE,
    "root-finding": EXIT_NO_CONVERGENCE,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourierkit",
        description="Symbolic-numeric Fourier analysis: spectra, frequency responses, verification suites.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs the service in-process",
    )
    # accepted after the subcommand as well; SUPPRESS keeps the top-level
    # value when the subcommand form is absent
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--server", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    ft = sub.add_parser("ft", help="spectrum of a signal expression", parents=[shared])
    ft.add_argument("--signal", required=True, help="signal DSL text, e.g. 'rect(1)'")
    ft.add_argument("--omega", required=True, help="comma list or start:step:stop range")
    group = ft.add_mutually_exclusive_group()
    group.add_argument("--numeric", dest="numeric", action="store_true", default=True,
                       help="include the quadrature oracle column (default)")
    group.add_argument("--no-numeric", dest="numeric", action="store_false",
                       help="skip the oracle column")
    ft.add_argument("--check-tol", type=float, default=1e-6,
                    help="agreement tolerance between symbolic and numeric values")
    ft.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    ft.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
    ft.add_argument("--half-width", type=float, help="initial truncation half-width")
    ft.add_argument("--max-half-width", type=float, help="maximum truncation half-width")
    ft.add_argument("--out", choices=("json", "csv"), default="json")
    ft.add_argument("--output", help="write the report here instead of stdout")

    fr = sub.add_parser("freqresp", help="frequency response sweep of a system", parents=[shared])
    fr.add_argument("--system", required=True,
                    help="'builtin:<name>(...)' or 'out=[...]; in=[...]'")
    fr.add_argument("--omega", required=True, help="comma list or start:step:stop range")
    fr.add_argument("--out", choices=("json", "csv"), default="csv")
    fr.add_argument("--output", help="write the report here instead of stdout")

    vf = sub.add_parser("verify", help="run a verification suite", parents=[shared])
    vf.add_argument("--suite", required=True,
                    choices=("all", "table2", "relations", "catalog", "ode"))
    vf.add_argument("--tol", type=float, help="override the suite tolerance")
    vf.add_argument("--out", choices=("json", "csv"), default="json")
    vf.add_argument("--output", help="write the report here instead of stdout")

    cat = sub.add_parser("catalog", help="list the signal primitives and their spectra", parents=[shared])
    cat.add_argument("--out", choices=("json", "csv"), default="json")
    cat.add_argument("--output", help="write the report here instead of stdout")

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    return parser


async def _request(args, method: str, path: str, payload: Optional[dict]) -> Tuple[int, dict]:
    if args.server:
        client = httpx.AsyncClient(base_url=args.server, timeout=600.0)
    else:
        from .service.app import app

        client = httpx.AsyncClient(
            transport=httpx.ASGITransport(app=app),
            base_url="http://fourierkit.local",
            timeout=600.0,
        )
    async with client:
        if method == "GET":
            resp = await client.get(path)
        else:
            resp = await client.post(path, json=payload)
    return resp.status_code, resp.json()


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def _csv_rows(command: str, body: dict) -> Tuple[List[str], List[List], List[str]]:
    """(comment lines, rows, header) for the CSV rendering of a response."""
    comments: List[str] = []
    if command == "ft":
        comments.append(f"# signal: {body.get('signal', '')}")
        comments.append(f"# spectrum: {body.get('spectrum', '')}")
        header = ["omega", "symbolic_re", "symbolic_im", "numeric_re", "numeric_im",
                  "residual", "error_estimate", "tail_bound", "truncation_T"]
        rows = []
        for p in body.get("results", []):
            num = p.get("numeric") or {}
            q = p.get("quadrature") or {}
            rows.append([
                p["omega"], p["symbolic"]["re"], p["symbolic"]["im"],
                num.get("re"), num.get("im"), p.get("residual"),
                q.get("error_estimate"), q.get("tail_bound"), q.get("truncation_T"),
            ])
        return comments, rows, header
    if command == "freqresp":
        comments.append(f"# system: {body.get('system', '')}")
        comments.append(f"# stable: {_fmt_cell(body.get('stable'))}")
        pole_text = "; ".join(
            f"{p['value']['re']}{p['value']['im']:+}j (x{p['multiplicity']})"
            for p in body.get("poles", [])
        )
        comments.append(f"# poles: {pole_text}")
        header = ["omega", "re", "im", "magnitude", "phase_rad"]
        rows = [
            [p["omega"], p["response"]["re"], p["response"]["im"], p["magnitude"], p["phase"]]
            for p in body.get("results", [])
        ]
        return comments, rows, header
    if command == "verify":
        comments.append(f"# suite: {body.get('config', {}).get('suite', '')}")
        comments.append(f"# passed: {_fmt_cell(body.get('passed'))}")
        header = ["name", "subject", "residual", "tolerance", "passed", "note"]
        rows = [
            [r["name"], r["subject"], r["residual"], r["tolerance"], r["passed"], r["note"]]
            for r in body.get("results", [])
        ]
        return comments, rows, header
    # catalog
    header = ["name", "signature", "description", "spectrum", "identity", "oracle_only"]
    rows = [
        [e["name"], e["signature"], e["description"], e["spectrum"], e["identity"], e["oracle_only"]]
        for e in body.get("results", [])
    ]
    return comments, rows, header


def _render(command: str, body: dict, out: str) -> str:
    if out == "json":
        return json.dumps(body, indent=2)
    comments, rows, header = _csv_rows(command, body)
    for err in body.get("errors") or []:
        comments.append(f"# error[{err.get('kind')}]: {err.get('message')}")
    buf = io.StringIO()
    for line in comments:
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_cell(v) for v in row])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _exit_code(command: str, status: int, body: dict) -> int:
    errors = body.get("errors") or []
    if errors:
        kinds = [e.get("kind", "internal") for e in errors]
        codes = [_KIND_EXIT.get(k, EXIT_USAGE) for k in kinds]
        if EXIT_NO_CONVERGENCE in codes:
            return EXIT_NO_CONVERGENCE
        return max(codes)
    if status != 200:
        return EXIT_USAGE
    if command == "verify" and not body.get("passed", False):
        return EXIT_CHECK_FAILED
    if command == "ft":
        for p in body.get("results", []):
            if p.get("agrees") is False:
                return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    if args.command == "ft":
        quadrature = {}
        for key, attr in (
            ("rel_tol", "rel_tol"),
            ("abs_tol", "abs_tol"),
            ("initial_half_width", "half_width"),
            ("max_half_width", "max_half_width"),
        ):
            value = getattr(args, attr)
            if value is not None:
                quadrature[key] = value
        payload = {
            "signal": args.signal,
            "omega": args.omega,
            "numeric": args.numeric,
            "check_tol": args.check_tol,
        }
        if quadrature:
            payload["quadrature"] = quadrature
        method, path = "POST", "/ft"
    elif args.command == "freqresp":
        payload = {"system": args.system, "omega": args.omega}
        method, path = "POST", "/freqresp"
    elif args.command == "verify":
        payload = {"suite": args.suite}
        if args.tol is not None:
            payload["tol"] = args.tol
        method, path = "POST", "/verify"
    else:  # catalog
        payload, method, path = None, "GET", "/catalog"

    try:
        status, body = asyncio.run(_request(args, method, path, payload))
    except httpx.HTTPError as exc:
        sys.stderr.write(f"fourierkit: cannot reach service: {exc}\n")
        return EXIT_USAGE

    if status == 422:  # request model rejected before reaching a handler
        sys.stderr.write(json.dumps(body, indent=2) + "\n")
        return EXIT_USAGE

    _emit(_render(args.command, body, args.out), args.output)
    return _exit_code(args.command, status, body)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
