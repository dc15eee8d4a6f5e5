"""Command-line front end.

The CLI is a thin client over the HTTP API: every computation goes
through the FastAPI application, by default mounted in-process (no
server needed), or remotely with --server.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 mathematical validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_MATH = 3


def _fmt(v: float) -> str:
    return f"{v:.17g}"


class _InProcessClient:
    """Sync facade over the ASGI app; one event loop per request."""

    def __init__(self):
        from .service import create_app

        self._app = create_app()

    def post(self, path: str, json):
        import asyncio

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(transport=transport, timeout=None,
                                         base_url="http://rifrange.local") as client:
                return await client.post(path, json=json)

        return asyncio.run(go())

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    return _InProcessClient()


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _post(client: httpx.Client, path: str, payload: dict):
    resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = resp.text
    if isinstance(detail, dict):
        kind = detail.get("kind")
        message = detail.get("message", str(detail))
        code = EXIT_MATH if kind == "math-validation" else EXIT_USAGE
        raise CliFailure(code, message)
    if resp.status_code in (400, 422):
        raise CliFailure(EXIT_USAGE, f"invalid request: {detail}")
    raise CliFailure(EXIT_VERIFY_FAIL, f"service error {resp.status_code}: {detail}")


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliFailure(EXIT_USAGE, f"cannot read config {path}: {exc}")
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliFailure(EXIT_USAGE, f"malformed JSON in {path}: {exc}")
    if not isinstance(cfg, dict) or not isinstance(cfg.get("factors"), list):
        raise CliFailure(EXIT_USAGE, 'config must be an object with a "factors" list')
    return cfg


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliFailure(EXIT_USAGE, f"{what} must be re,im")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise CliFailure(EXIT_USAGE, f"{what} must be re,im numbers")


def _write_csv(path: str, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


# --- subcommands ---------------------------------------------------------------

def cmd_symbol(args) -> int:
    cfg = _load_config(args.config)
    payload = {"factors": cfg["factors"]}
    if args.at:
        payload["at"] = _parse_pair(args.at, "--at")
    with _client(args.server) as client:
        data = _post(client, "/symbol", payload)
    if args.at:
        for row in data["matrix"]:
            print("  ".join(_render_pair(p) for p in row))
    else:
        print(data["rendered"])
    return EXIT_OK


def _render_pair(p) -> str:
    re, im = p
    if im == 0:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"


def cmd_range(args) -> int:
    cfg = _load_config(args.config)
    payload = {
        "factors": cfg["factors"],
        "tau_samples": args.tau_samples,
        "angle_samples": args.angle_samples,
        "dense": args.dense,
        "seed": args.seed,
    }
    with _client(args.server) as client:
        data = _post(client, "/range", payload)
    out = args.out or f"range.{args.format}"
    if args.format == "json":
        doc = {"hull": data["hull"], "radius": data["radius"]}
        if data.get("points"):
            doc["points"] = data["points"]
        Path(out).write_text(json.dumps(doc) + "\n")
    elif args.format == "svg":
        from .svgplot import render_scene

        Path(out).write_text(render_scene(curve=data["hull"]) + "\n")
    else:
        rows = list(data["hull"])
        if data.get("points"):
            rows.extend(data["points"])
        _write_csv(out, "x,y", rows)
    print(f"radius={data['radius']:.9f}")
    return EXIT_OK


def cmd_boundary(args) -> int:
    payload = {"a": args.a, "c": args.c, "samples": args.samples,
               "inner": args.inner, "check": args.check}
    with _client(args.server) as client:
        data = _post(client, "/boundary", payload)
    rows = [(r["theta"], r["x"], r["y"]) for r in data["outer"]]
    if args.inner and data.get("inner"):
        rows.extend((r["theta"], r["x"], r["y"]) for r in data["inner"])
    _write_csv(args.out, "theta,x,y", rows)
    if args.check and data.get("check"):
        chk = data["check"]
        print(f"envelope_f_residual={chk['outer_f_residual']:.3e}")
        print(f"envelope_ftheta_residual={chk['outer_ftheta_residual']:.3e}")
        print(f"convex={'true' if chk['convex'] else 'false'}")
        print(f"gap={chk['gap']:.15g}")
        print(f"reparam_dev={chk['reparam_dev']:.3e}")
    return EXIT_OK


def cmd_zero_test(args) -> int:
    payload: dict = {"tau_samples": args.tau_samples}
    if args.config:
        if args.c1 is not None or args.c2 is not None:
            raise CliFailure(EXIT_USAGE, "give either --c1/--c2 or --config, not both")
        payload["factors"] = _load_config(args.config)["factors"]
    elif args.c1 is not None or args.c2 is not None:
        if args.c1 is None or args.c2 is None:
            raise CliFailure(EXIT_USAGE, "both --c1 and --c2 are required")
        payload["c1"] = args.c1
        payload["c2"] = args.c2
    else:
        raise CliFailure(EXIT_USAGE, "give --c1/--c2 or --config")
    with _client(args.server) as client:
        data = _post(client, "/zero-test", payload)
    print(f"verdict={data['verdict']}")
    if data.get("product") is not None:
        print(f"product={data['product']:.15g}")
    if data.get("quad_zeros") is not None:
        lo, hi = data["quad_zeros"]
        print(f"quad_zeros={lo:.15g},{hi:.15g}")
    print(f"witnesses={data['witness_count']}/{args.tau_samples}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    with _client(args.server) as client:
        data = _post(client, "/verify", {"factors": cfg["factors"], "seed": args.seed})
    for chk in data["checks"]:
        status = "PASS" if chk["passed"] else "FAIL"
        print(f"{chk['name']} max_dev={chk['max_dev']:.3e} tol={chk['tol']:.0e} {status}")
    return EXIT_OK if data["all_pass"] else EXIT_VERIFY_FAIL


def cmd_plot(args) -> int:
    try:
        text = Path(args.infile).read_text()
    except OSError as exc:
        raise CliFailure(EXIT_USAGE, f"cannot read {args.infile}: {exc}")
    rows = _parse_curve_csv(text)
    payload: dict = {"rows": rows, "with_circles": args.with_circles}
    if args.a is not None:
        payload["a"] = args.a
    if args.c is not None:
        payload["c"] = args.c
    if args.style:
        styles = {}
        for item in args.style:
            key, _, value = item.partition("=")
            if not value:
                raise CliFailure(EXIT_USAGE, "--style needs key=fill:stroke:width")
            styles[key] = value
        payload["styles"] = styles
    with _client(args.server) as client:
        data = _post(client, "/plot", payload)
    Path(args.out).write_text(data["svg"] + "\n")
    return EXIT_OK


def _parse_curve_csv(text: str) -> list[list[float]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CliFailure(EXIT_USAGE, "empty CSV")
    header = [h.strip() for h in lines[0].split(",")]
    if header not in (["x", "y"], ["theta", "x", "y"]):
        raise CliFailure(EXIT_USAGE, "CSV header must be x,y or theta,x,y")
    rows = []
    for ln in lines[1:]:
        try:
            rows.append([float(v) for v in ln.split(",")])
        except ValueError:
            raise CliFailure(EXIT_USAGE, f"bad CSV row: {ln}")
        if len(rows[-1]) != len(header):
            raise CliFailure(EXIT_USAGE, f"bad CSV row: {ln}")
    if not rows:
        raise CliFailure(EXIT_USAGE, "CSV has no data rows")
    return rows


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rifrange",
                                 description="Numerical ranges of compressed shifts "
                                             "for products of rational inner factors")
    ap.add_argument("--server", default=None,
                    help="URL of a running service (default: run in-process)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="print the exact matrix symbol")
    p.add_argument("--config", required=True, help="JSON factor config")
    p.add_argument("--at", default=None, metavar="RE,IM",
                   help="evaluate at tau instead of printing coefficients")
    p.set_defaults(fn=cmd_symbol)

    p = sub.add_parser("range", help="sample the numerical-range region")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--tau-samples", type=int, default=720)
    p.add_argument("--angle-samples", type=int, default=720)
    p.add_argument("--dense", action="store_true",
                   help="also write every sampled boundary point")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_range)

    p = sub.add_parser("boundary", help="closed-form boundary for the squared factor")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--out", default="boundary.csv")
    p.add_argument("--inner", action="store_true", help="include the inner branch")
    p.add_argument("--check", action="store_true",
                   help="print envelope residuals, convexity, and the non-circularity gap")
    p.set_defaults(fn=cmd_boundary)

    p = sub.add_parser("zero-test", help="is zero inside the numerical range?")
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--tau-samples", type=int, default=360)
    p.set_defaults(fn=cmd_zero_test)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", help="render a curve CSV as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--with-circles", type=int, default=0)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--style", action="append", default=[], metavar="KEY=FILL:STROKE:WIDTH",
                   help="override a stroke style (keys: unit, family, curve, extremes)")
    p.set_defaults(fn=cmd_plot)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
