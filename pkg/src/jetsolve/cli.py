"""Command line front-end.

A thin client: the system file and flags are packed into a request for the
HTTP service.  By default the service app is invoked in-process (no socket,
same determinism); --server points the client at a remote instance instead.
"""

import asyncio
import os
import sys

import click
import httpx

from .coeffs import DEFAULT_PRECISION
from .report import EXIT_INPUT, machine_output, text_output

PRECISION_ENV = "JETSOLVE_PRECISION"


def _default_precision():
    raw = os.environ.get(PRECISION_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_PRECISION


def _post_in_process(payload):
    from .service import app as service_app

    async def go():
        transport = httpx.ASGITransport(app=service_app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://jetsolve") as client:
            resp = await client.post("/solve", json=payload, timeout=None)
            return resp.json()

    return asyncio.run(go())


def _post_remote(server, payload):
    resp = httpx.post(server.rstrip("/") + "/solve", json=payload,
                      timeout=600.0)
    resp.raise_for_status()
    return resp.json()


@click.group()
def main():
    """Puiseux-series branches of polynomial systems near a degenerate
    zero, with per-level certificates."""


@main.command()
@click.argument("system_file", type=click.Path())
@click.option("--order", default="6", show_default=True,
              help="Target truncation order T (integer or p/q).")
@click.option("--trees", default="first", show_default=True,
              help="Tree strategy: first, all, or explicit Prüfer codes "
                   "per level ('1,1;2').")
@click.option("--precision", default=None, type=int,
              help=f"Working precision in bits (default {DEFAULT_PRECISION}"
                   f", or ${PRECISION_ENV}).")
@click.option("--verify-numeric", default=None,
              help="Comma-separated lambda samples for a Newton check.")
@click.option("--families", is_flag=True,
              help="Run the family (GCD-degree) scan first.")
@click.option("--real-only", is_flag=True,
              help="Report only branches real on some half-axis.")
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "machine"]))
@click.option("--server", default=None,
              help="URL of a running jetsolve service; default runs "
                   "in-process.")
def solve(system_file, order, trees, precision, verify_numeric, families,
          real_only, fmt, server):
    """Solve the system in SYSTEM_FILE and report its branches."""
    try:
        with open(system_file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    samples = []
    if verify_numeric:
        samples = [s.strip() for s in verify_numeric.split(",") if s.strip()]
    payload = {
        "system": text,
        "order": order,
        "trees": trees,
        "precision": precision if precision else _default_precision(),
        "verify_numeric": samples,
        "families": families,
        "real_only": real_only,
    }
    if server:
        data = _post_remote(server, payload)
    else:
        data = _post_in_process(payload)
    code, report = data["exit_code"], data["report"]
    if fmt == "machine":
        click.echo(machine_output(code, report), nl=False)
    else:
        click.echo(text_output(code, report), nl=False)
    sys.exit(code)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app as service_app
    uvicorn.run(service_app, host=host, port=port)


if __name__ == "__main__":
    main()
