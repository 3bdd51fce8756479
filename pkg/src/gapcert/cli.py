"""Thin command-line client for the certification service.

Every subcommand builds the same request model the HTTP API accepts and
dispatches it either to the in-process handlers (default: no server
needed) or, with --server, to a running instance.  Output is a table for
reading, or JSON/CSV for scripts; JSON output is byte-identical across
runs for identical arguments.

Exit codes: 0 success, 2 inconclusive or no-witness outcomes, 1 usage or
domain errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import click
from pydantic import BaseModel, ValidationError

from .errors import GapcertError
from .service import handlers, models

_PATHS = {
    "cert-tan": ("/v1/cert/tan", handlers.cert_tan, models.CertResponse),
    "cert-bessel": ("/v1/cert/bessel", handlers.cert_bessel, models.CertResponse),
    "trace": ("/v1/trace", handlers.trace, models.TraceResponse),
    "remainder": ("/v1/remainder", handlers.remainder, models.RemainderResponse),
    "convergent": ("/v1/convergent", handlers.convergent, models.ConvergentResponse),
    "ratio": ("/v1/ratio", handlers.ratio, models.RatioResponse),
    "decay": ("/v1/decay", handlers.decay, models.DecayResponse),
    "niven": ("/v1/niven", handlers.niven, models.NivenResponse),
    "verify-identities": (
        "/v1/identities",
        handlers.verify_identities,
        models.VerifyIdentitiesResponse,
    ),
    "lemma1": ("/v1/lemma1", handlers.lemma1, models.Lemma1Response),
    "nonzero": ("/v1/nonzero", handlers.nonzero, models.NonzeroResponse),
    "quad-check": ("/v1/quad", handlers.quad_check, models.QuadCheckResponse),
}

_EXIT_RETRY = 2
_EXIT_USAGE = 1


def _dispatch(command: str, request: BaseModel, server: str | None) -> BaseModel:
    path, handler, resp_cls = _PATHS[command]
    if server is None:
        return handler(request)
    import httpx

    resp = httpx.post(
        server.rstrip("/") + path, json=request.model_dump(), timeout=600.0
    )
    if resp.status_code != 200:
        raise GapcertError(f"server returned {resp.status_code}: {resp.text}")
    return resp_cls.model_validate(resp.json())


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, sort_keys=True, separators=(", ", ": ")))


def _emit_csv(rows: list[dict]) -> None:
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), quoting=csv.QUOTE_NONNUMERIC)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    click.echo(buf.getvalue().rstrip("\n"))


def _emit_table(rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0])
    widths = {c: max(len(str(c)), max(len(str(r.get(c, ""))) for r in rows)) for c in cols}
    click.echo("  ".join(str(c).ljust(widths[c]) for c in cols))
    for r in rows:
        click.echo("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols))


def _status_exit(status: str) -> None:
    if status in ("inconclusive", "no_witness"):
        sys.exit(_EXIT_RETRY)


def _cert_rows(resp: models.CertResponse) -> list[dict]:
    if resp.certificate is None:
        return [{"status": resp.status, "message": resp.message or ""}]
    c = resp.certificate
    return [
        {
            "status": resp.status,
            "kind": c.kind,
            "t": c.t,
            "s": c.s or "",
            "p": c.p,
            "q": c.q,
            "n": c.n,
            "W": c.W,
            "A_upper": c.A_upper,
            "gap_lower_bound": c.gap_lower_bound,
            "prec_bits": c.prec_bits,
        }
    ]


def _render(resp: BaseModel, fmt: str, rows: list[dict]) -> None:
    if fmt == "json":
        _emit_json(resp.model_dump())
    elif fmt == "csv":
        _emit_csv(rows)
    else:
        _emit_table(rows)


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    show_default=True,
)
_server_option = click.option(
    "--server", default=None, help="Base URL of a running service; default runs in-process."
)
_prec_option = click.option("--prec", type=int, default=256, show_default=True)


@click.group()
@click.version_option()
def cli() -> None:
    """Certified rational-approximation gaps for r*tan(r) and Bessel ratios."""


def _read_batch(path: str) -> list[list[str]]:
    out = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append(line.split())
    return out


def _run_batch(command: str, requests: list[BaseModel], server, fmt, jobs: int) -> None:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            responses = list(pool.map(lambda r: _dispatch(command, r, server), requests))
    else:
        responses = [_dispatch(command, r, server) for r in requests]
    worst = "ok"
    all_rows: list[dict] = []
    for resp in responses:
        if fmt == "json":
            _emit_json(resp.model_dump())
        else:
            all_rows.extend(_cert_rows(resp))
        if resp.status != "ok":
            worst = resp.status
    if fmt == "csv":
        _emit_csv(all_rows)
    elif fmt == "table":
        _emit_table(all_rows)
    _status_exit(worst)


@cli.command("cert-tan")
@click.option("--t", "t_text", default=None, help='t = r^2 as "a/b".')
@click.option("--pq", default=None, help='Candidate p/q as "p/q".')
@click.option("--nmax", type=int, default=64, show_default=True)
@_prec_option
@click.option("--verify", is_flag=True, help="Round-trip the emitted JSON and re-verify it.")
@click.option("--batch", "batch_path", default=None, help='File of "t p/q" lines; # comments.')
@click.option("--jobs", type=int, default=1, show_default=True)
@_format_option
@_server_option
def cert_tan_cmd(t_text, pq, nmax, prec, verify, batch_path, jobs, fmt, server):
    """Certify a lower bound on |r*tan(r) - p/q| for rational t = r^2."""
    if batch_path is not None:
        reqs = []
        for fields in _read_batch(batch_path):
            if len(fields) != 2:
                raise click.UsageError(
                    f"tan batch lines are 't p/q', got: {' '.join(fields)}"
                )
            reqs.append(
                models.CertTanRequest(
                    t=fields[0], pq=fields[1], n_max=nmax, prec=prec, verify=verify
                )
            )
        _run_batch("cert-tan", reqs, server, fmt, jobs)
        return
    if t_text is None or pq is None:
        raise click.UsageError("--t and --pq are required (or use --batch)")
    req = models.CertTanRequest(t=t_text, pq=pq, n_max=nmax, prec=prec, verify=verify)
    resp = _dispatch("cert-tan", req, server)
    _render(resp, fmt, _cert_rows(resp))
    _status_exit(resp.status)


@cli.command("cert-bessel")
@click.option("--s", "s_text", default=None, help='Order s as "c/d".')
@click.option("--t", "t_text", default=None)
@click.option("--pq", default=None)
@click.option("--nmax", type=int, default=64, show_default=True)
@_prec_option
@click.option("--verify", is_flag=True)
@click.option("--batch", "batch_path", default=None, help='File of "t p/q [s]" lines.')
@click.option("--jobs", type=int, default=1, show_default=True)
@_format_option
@_server_option
def cert_bessel_cmd(s_text, t_text, pq, nmax, prec, verify, batch_path, jobs, fmt, server):
    """Certify a lower bound on |r*J_{s+1}(r)/J_s(r) - p/q|."""
    if batch_path is not None:
        reqs = []
        for fields in _read_batch(batch_path):
            if len(fields) == 3:
                line_s = fields[2]
            elif len(fields) == 2 and s_text is not None:
                line_s = s_text
            else:
                raise click.UsageError(
                    f"bessel batch lines are 't p/q [s]' (or pass --s): {' '.join(fields)}"
                )
            reqs.append(
                models.CertBesselRequest(
                    s=line_s, t=fields[0], pq=fields[1], n_max=nmax, prec=prec, verify=verify
                )
            )
        _run_batch("cert-bessel", reqs, server, fmt, jobs)
        return
    if s_text is None or t_text is None or pq is None:
        raise click.UsageError("--s, --t and --pq are required (or use --batch)")
    req = models.CertBesselRequest(
        s=s_text, t=t_text, pq=pq, n_max=nmax, prec=prec, verify=verify
    )
    resp = _dispatch("cert-bessel", req, server)
    _render(resp, fmt, _cert_rows(resp))
    _status_exit(resp.status)


@cli.command("trace")
@click.option("--kind", type=click.Choice(["tan", "bessel"]), default="tan", show_default=True)
@click.option("--t", "t_text", required=True)
@click.option("--pq", required=True)
@click.option("--s", "s_text", default=None)
@click.option("--nmax", type=int, default=16, show_default=True)
@_prec_option
@_format_option
@_server_option
def trace_cmd(kind, t_text, pq, s_text, nmax, prec, fmt, server):
    """Emit the witness/enclosure table behind a certificate."""
    req = models.TraceRequest(kind=kind, t=t_text, pq=pq, s=s_text, n_max=nmax, prec=prec)
    resp = _dispatch("trace", req, server)
    rows = [
        {"n": r.n, "W": r.W, "A_abs_ub": r.A_abs_ub, "flagged": r.flagged}
        for r in resp.rows
    ]
    _render(resp, fmt, rows or [{"status": resp.status, "message": resp.message or ""}])
    _status_exit(resp.status)


@cli.command("remainder")
@click.option("--n", type=int, required=True)
@click.option("--t", "t_text", required=True)
@_prec_option
@_format_option
@_server_option
def remainder_cmd(n, t_text, prec, fmt, server):
    """Enclose G_n(t) = r*R_n(r), the scaled continued-fraction remainder."""
    req = models.RemainderRequest(n=n, t=t_text, prec=prec)
    resp = _dispatch("remainder", req, server)
    rows = [{"n": resp.n, "t": resp.t, "mid": resp.value.mid, "rad": resp.value.rad}]
    _render(resp, fmt, rows)


@cli.command("convergent")
@click.option("--n", type=int, required=True)
@click.option("--t", "t_text", default=None)
@_format_option
@_server_option
def convergent_cmd(n, t_text, fmt, server):
    """Print the n-th convergent P_n/Q_n of r*tan(r) in t = r^2."""
    req = models.ConvergentRequest(n=n, t=t_text)
    resp = _dispatch("convergent", req, server)
    row = {"n": resp.n, "P": resp.p_poly, "Q": resp.q_poly}
    if resp.value_at_t is not None:
        row.update({"P(t)": resp.p_at_t, "Q(t)": resp.q_at_t, "P/Q": resp.value_at_t})
    _render(resp, fmt, [row])


@cli.command("ratio")
@click.option("--s", "s_text", required=True)
@click.option("--t", "t_text", required=True)
@click.option("--cf", "cf_depth", type=int, default=None, help="Also evaluate the depth-k exact truncation.")
@_prec_option
@_format_option
@_server_option
def ratio_cmd(s_text, t_text, cf_depth, prec, fmt, server):
    """Enclose rho = r*J_{s+1}(r)/J_s(r) at t = r^2."""
    req = models.RatioRequest(s=s_text, t=t_text, prec=prec, cf_depth=cf_depth)
    resp = _dispatch("ratio", req, server)
    row = {"s": resp.s, "t": resp.t, "status": resp.status}
    if resp.value is not None:
        row.update({"mid": resp.value.mid, "rad": resp.value.rad, "prec_used": resp.prec_used})
    if resp.cf_value is not None:
        row.update({"cf_depth": resp.cf_depth, "cf_value": resp.cf_value})
    _render(resp, fmt, [row])
    _status_exit(resp.status)


@cli.command("decay")
@click.option("--t", "t_text", required=True)
@click.option("--s", "s_text", default=None, help="Present: Bessel-side table of |V_n|.")
@click.option("--nmax", type=int, default=64, show_default=True)
@_prec_option
@_format_option
@_server_option
def decay_cmd(t_text, s_text, nmax, prec, fmt, server):
    """Certified decay table of the scaled remainders."""
    req = models.DecayRequest(t=t_text, s=s_text, n_max=nmax, prec=prec)
    resp = _dispatch("decay", req, server)
    rows = []
    for r in resp.rows:
        row = {"n": r.n, "bound": r.bound}
        if r.poisson_ratio is not None:
            row["poisson_ratio"] = r.poisson_ratio
        row["decreasing"] = r.n >= resp.crossover
        rows.append(row)
    _render(resp, fmt, rows)


@cli.command("niven")
@click.option("--n", type=int, required=True)
@_prec_option
@_format_option
@_server_option
def niven_cmd(n, prec, fmt, server):
    """Enclose H_n = 2^(n+1) R_n(pi/2)."""
    req = models.NivenRequest(n=n, prec=prec)
    resp = _dispatch("niven", req, server)
    _render(resp, fmt, [{"n": resp.n, "mid": resp.value.mid, "rad": resp.value.rad}])


@cli.command("verify-identities")
@click.option("--nmax", type=int, default=8, show_default=True)
@click.option("--order", type=int, default=40, show_default=True)
@click.option("--coeff-count", type=int, default=30, show_default=True)
@_format_option
@_server_option
def verify_identities_cmd(nmax, order, coeff_count, fmt, server):
    """Re-verify the exact series and coefficient identities; prints PASS."""
    req = models.VerifyIdentitiesRequest(n_max=nmax, order=order, coeff_count=coeff_count)
    resp = _dispatch("verify-identities", req, server)
    if fmt == "json":
        _emit_json(resp.model_dump())
    else:
        click.echo(
            f"PASS: {', '.join(resp.series_families)} up to n={nmax} at order {order}; "
            f"coefficient identities ({', '.join(resp.bessel_families)}) for "
            f"orders {', '.join(resp.bessel_orders)}"
        )


@cli.command("lemma1")
@click.option("--nu", required=True)
@click.option("--t", "t_text", required=True)
@click.option("--lo", type=int, default=0, show_default=True)
@click.option("--hi", type=int, default=10, show_default=True)
@click.option("--prec-cap", type=int, default=16384, show_default=True)
@_format_option
@_server_option
def lemma1_cmd(nu, t_text, lo, hi, prec_cap, fmt, server):
    """Certify no two consecutive orders both vanish at t."""
    req = models.Lemma1Request(nu=nu, t=t_text, n_lo=lo, n_hi=hi, prec_cap=prec_cap)
    resp = _dispatch("lemma1", req, server)
    rows = [p.model_dump() for p in resp.pairs]
    _render(resp, fmt, rows)
    _status_exit(resp.status)


@cli.command("nonzero")
@click.option("--s", "s_text", required=True)
@click.option("--t", "t_text", required=True)
@click.option("--prec-cap", type=int, default=16384, show_default=True)
@_format_option
@_server_option
def nonzero_cmd(s_text, t_text, prec_cap, fmt, server):
    """Certify the sign of the order-s value at t."""
    req = models.NonzeroRequest(s=s_text, t=t_text, prec_cap=prec_cap)
    resp = _dispatch("nonzero", req, server)
    _render(resp, fmt, [resp.model_dump()])
    _status_exit(resp.status)


@cli.command("quad-check")
@click.option("--which", type=click.Choice(["hermite", "poisson", "iterated"]), required=True)
@click.option("--t", "t_text", required=True)
@click.option("--n", type=int, default=None)
@click.option("--nu", default=None)
@click.option("--tol", type=float, default=1e-12, show_default=True)
@click.option("--quad-node-cap", "node_cap", type=int, default=4096, show_default=True)
@_prec_option
@_format_option
@_server_option
def quad_check_cmd(which, t_text, n, nu, tol, node_cap, prec, fmt, server):
    """Cross-check one heuristic integral against the rigorous layer."""
    req = models.QuadCheckRequest(
        which=which, t=t_text, n=n, nu=nu, tol=tol, node_cap=node_cap, prec=prec
    )
    resp = _dispatch("quad-check", req, server)
    _render(resp, fmt, [resp.model_dump()])
    _status_exit(resp.status)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(_EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(_EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(_EXIT_USAGE)
    except (GapcertError, ValidationError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_EXIT_USAGE)


if __name__ == "__main__":
    main()
