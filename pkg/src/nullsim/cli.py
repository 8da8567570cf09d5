"""Command-line front end: a thin client over the HTTP service.

Every subcommand builds a JSON request, sends it through the FastAPI
app (in-process by default, or to a remote server via ``--server``),
and renders the response as CSV or JSON.  Exit codes:

    0  success / criterion passed
    1  usage error (bad flags, bad spec, inapplicable criterion)
    2  degenerate frame (no Cartan frame exists for the input)
    3  criterion failed

Subcommands: ``frame``, ``check``, ``synthesize``, ``family``, ``serve``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_CRITERION_FAIL = 3

# library errors that mean "no frame exists", not "you called it wrong"
_DEGENERATE_ERRORS = {"GeodesicDegeneracy"}


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 by default; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


class Client:
    """HTTP client; talks to the in-process app unless a server is given."""

    def __init__(self, server: str | None = None):
        self._server = server

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self._server:
            with httpx.Client(base_url=self._server, timeout=300.0) as client:
                return client.post(path, json=payload)
        import asyncio

        from .service import app

        async def _run() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport,
                base_url="http://nullsim.internal",
                timeout=300.0,
            ) as client:
                return await client.post(path, json=payload)

        return asyncio.run(_run())


def load_curve_spec(arg: str) -> dict:
    """Load a curve spec from a file path or inline JSON text.

    ``samples`` specs pointing at a CSV file are inlined here so the
    service never reads the client filesystem.
    """
    base = "."
    if arg.lstrip().startswith("{"):
        text = arg
    else:
        base = os.path.dirname(os.path.abspath(arg))
        try:
            with open(arg, "r") as fh:
                text = fh.read()
        except OSError as exc:
            _fail_usage(f"cannot read curve spec {arg!r}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail_usage(f"bad JSON in curve spec: line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        _fail_usage("curve spec must be a JSON object")
    if data.get("kind") == "samples" and "path" in data:
        from .specs import load_samples_csv

        path = data.pop("path")
        if not os.path.isabs(path):
            path = os.path.join(base, path)
        try:
            grid, positions = load_samples_csv(path)
        except Exception as exc:
            _fail_usage(f"cannot load samples from {path!r}: {exc}")
        data["grid"] = grid.tolist()
        data["positions"] = positions.tolist()
    return data


def _fail_usage(message: str):
    sys.stderr.write(f"error: {message}\n")
    raise SystemExit(EXIT_USAGE)


def _fail_from_response(resp: httpx.Response):
    try:
        body = resp.json()
    except ValueError:
        body = {}
    name = body.get("error", "HTTPError")
    detail = body.get("detail", resp.text)
    if isinstance(detail, list):  # pydantic validation errors
        detail = "; ".join(str(d.get("msg", d)) for d in detail)
        name = "ValidationError"
    sys.stderr.write(f"error: {name}: {detail}\n")
    code = EXIT_DEGENERATE if name in _DEGENERATE_ERRORS else EXIT_USAGE
    raise SystemExit(code)


def format_csv(columns: list[str], rows: list[list[float]]) -> str:
    """Fixed column order, 17 significant digits, LF newlines."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def format_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_payload(args) -> dict:
    cfg = {}
    for flag, key in (("eps_null", "eps_null"), ("eps_frame", "eps_frame"),
                      ("eps_kappa", "eps_kappa"), ("tol", "tol")):
        value = getattr(args, flag, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "samples", None) is not None:
        cfg["samples"] = args.samples
    return cfg


def _table_output(resp: httpx.Response, args):
    body = resp.json()
    if args.format == "csv":
        text = format_csv(body["columns"], body["rows"])
    else:
        text = format_json(body)
    _write_out(text, args.out)


def cmd_frame(args) -> int:
    client = Client(args.server)
    payload = {"curve": load_curve_spec(args.curve), "config": _config_payload(args)}
    resp = client.post("/frame", payload)
    if resp.status_code != 200:
        _fail_from_response(resp)
    _table_output(resp, args)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    client = Client(args.server)
    payload = {
        "curve": load_curve_spec(args.curve),
        "lambda_spec": args.lambda_spec,
        "anchor": _parse_triple(args.origin),
        "config": _config_payload(args),
    }
    if args.domain:
        payload["domain"] = args.domain
    if args.samples:
        payload["samples"] = args.samples
    if args.anchor_a is not None:
        payload["start_a"] = args.anchor_a
    resp = client.post("/synthesize", payload)
    if resp.status_code != 200:
        _fail_from_response(resp)
    _table_output(resp, args)
    return EXIT_OK


def cmd_check(args) -> int:
    client = Client(args.server)
    payload = {
        "curve_a": load_curve_spec(args.curve_a),
        "curve_b": load_curve_spec(args.curve_b),
        "mode": args.mode,
        "tol": args.tol,
        "config": _config_payload(args),
    }
    if args.anchor_a is not None:
        payload["anchor_a"] = args.anchor_a
    if args.anchor_b is not None:
        payload["anchor_b"] = args.anchor_b
    if args.lambda_spec is not None:
        payload["lambda_spec"] = args.lambda_spec
    resp = client.post("/check", payload)
    if resp.status_code != 200:
        _fail_from_response(resp)
    body = resp.json()
    _write_out(format_json(body), args.out)
    return EXIT_OK if body["passed"] else EXIT_CRITERION_FAIL


def cmd_family(args) -> int:
    client = Client(args.server)
    params = {}
    if args.params:
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as exc:
            _fail_usage(f"bad JSON in --params: {exc.msg}")
    payload = {
        "kind": args.kind,
        "params": params,
        "lambda_spec": args.lambda_spec,
        "tol": args.tol,
    }
    if args.samples:
        payload["samples"] = args.samples
    resp = client.post("/family", payload)
    if resp.status_code != 200:
        _fail_from_response(resp)
    body = resp.json()
    _write_out(format_json(body), args.out)
    return EXIT_OK if body["passed"] else EXIT_CRITERION_FAIL


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        _fail_usage(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        _fail_usage(f"bad number in triple {text!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="nullsim", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--server", help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--server", help="remote service URL (default: in-process)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--samples", type=int, help="grid resolution")
        p.add_argument("--tol", type=float, default=1e-5, help="criterion tolerance")
        p.add_argument("--eps-null", type=float, dest="eps_null")
        p.add_argument("--eps-frame", type=float, dest="eps_frame")
        p.add_argument("--eps-kappa", type=float, dest="eps_kappa")

    p = sub.add_parser("frame", help="emit the frame table of a curve")
    add_common(p)
    p.add_argument("--curve", required=True, help="curve spec file or inline JSON")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("check", help="run a similarity criterion on two curves")
    add_common(p)
    p.add_argument("--curve-a", required=True, dest="curve_a")
    p.add_argument("--curve-b", required=True, dest="curve_b")
    p.add_argument("--mode", required=True,
                   choices=("tangent", "normal", "binormal", "ratio", "bertrand"))
    p.add_argument("--anchor-a", type=float, dest="anchor_a")
    p.add_argument("--anchor-b", type=float, dest="anchor_b")
    p.add_argument("--lambda", dest="lambda_spec",
                   help="density profile for tangent/bertrand modes")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("synthesize", help="build the similar partner of a curve")
    add_common(p)
    p.add_argument("--curve", required=True)
    p.add_argument("--lambda", dest="lambda_spec", required=True,
                   help="density: a number, '2+sin', 'affine:a,b', 'sin_offset:c,a'")
    p.add_argument("--domain", type=float, nargs=2, metavar=("T0", "T1"),
                   help="target parameter interval (default: source domain)")
    p.add_argument("--origin", default="0,0,0",
                   help="position anchor of the new curve, as 'x,y,z'")
    p.add_argument("--anchor-a", type=float, dest="anchor_a",
                   help="source parameter the map starts from")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("family", help="closure check of a curve family")
    add_common(p)
    p.add_argument("--kind", required=True,
                   choices=("geodesic", "torsion_free", "helix"))
    p.add_argument("--params", help="family parameters as inline JSON")
    p.add_argument("--lambda", dest="lambda_spec", default="1.0")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except httpx.HTTPError as exc:
        sys.stderr.write(f"error: transport failure: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
