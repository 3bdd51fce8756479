"""Service handlers: pure request-model to response-model functions.

The FastAPI app and the CLI both dispatch here, so the CLI works with no
server running and a remote deployment behaves identically.  Outcomes
that are legitimate results of the mathematics (no witness below n_max,
inconclusive at the precision cap) are encoded in the response status;
genuinely invalid input raises, and the callers translate that into
HTTP 400 or exit code 1.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from .. import __version__
from ..balls import Ball, fraction_upper_to_decimal
from ..bessel import (
    bessel_decay_table,
    bessel_ratio,
    check_bessel_coeff_identities,
    lemma1_check,
    nonzero_J,
    ratio_cf_convergent,
)
from ..certify import (
    bessel_gap_certificate,
    certificate_to_dict,
    contradiction_trace,
    tan_gap_certificate,
    verify_certificate,
)
from ..errors import Inconclusive, NoWitnessFound, QuadFailure
from ..exact import format_rational, parse_rational
from ..lambert import check_series_relations, decay_table, niven_H, remainder_value, tan_convergent
from ..quadrature import hermite_integral, iterated_remainder, poisson_integral
from ..series import eval_N
from . import models


def _ball_model(ball: Ball) -> models.BallModel:
    return models.BallModel(mid=ball.mid_str(30), rad=ball.rad_str(3))


def health() -> models.HealthResponse:
    return models.HealthResponse(status="ok", version=__version__)


def cert_tan(req: models.CertTanRequest) -> models.CertResponse:
    t = parse_rational(req.t)
    pq = parse_rational(req.pq)
    try:
        cert = tan_gap_certificate(t, pq, n_max=req.n_max, prec=req.prec)
    except NoWitnessFound as exc:
        return models.CertResponse(status="no_witness", message=str(exc))
    except Inconclusive as exc:
        return models.CertResponse(status="inconclusive", message=str(exc))
    payload = certificate_to_dict(cert)
    verified = None
    if req.verify:
        verify_certificate(payload)
        verified = True
    return models.CertResponse(
        status="ok", certificate=models.CertificateModel(**payload), verified=verified
    )


def cert_bessel(req: models.CertBesselRequest) -> models.CertResponse:
    s = parse_rational(req.s)
    t = parse_rational(req.t)
    pq = parse_rational(req.pq)
    try:
        cert = bessel_gap_certificate(s, t, pq, n_max=req.n_max, prec=req.prec)
    except NoWitnessFound as exc:
        return models.CertResponse(status="no_witness", message=str(exc))
    except Inconclusive as exc:
        return models.CertResponse(status="inconclusive", message=str(exc))
    payload = certificate_to_dict(cert)
    verified = None
    if req.verify:
        verify_certificate(payload)
        verified = True
    return models.CertResponse(
        status="ok", certificate=models.CertificateModel(**payload), verified=verified
    )


def trace(req: models.TraceRequest) -> models.TraceResponse:
    t = parse_rational(req.t)
    pq = parse_rational(req.pq)
    s = parse_rational(req.s) if req.s else None
    try:
        rows = contradiction_trace(
            req.kind, t, pq, n_max=req.n_max, prec=req.prec, s=s
        )
    except Inconclusive as exc:
        return models.TraceResponse(status="inconclusive", message=str(exc))
    return models.TraceResponse(
        status="ok",
        rows=[
            models.TraceRowModel(
                n=r.n, W=str(r.witness), A_abs_ub=r.a_abs_ub, flagged=r.flagged
            )
            for r in rows
        ],
    )


def remainder(req: models.RemainderRequest) -> models.RemainderResponse:
    t = parse_rational(req.t)
    ball = remainder_value(req.n, t, req.prec)
    return models.RemainderResponse(n=req.n, t=req.t, value=_ball_model(ball))


def convergent(req: models.ConvergentRequest) -> models.ConvergentResponse:
    conv = tan_convergent(req.n)
    resp = models.ConvergentResponse(
        n=req.n, p_poly=str(conv.p), q_poly=str(conv.q)
    )
    if req.t is not None:
        t = parse_rational(req.t)
        p_val = conv.p.eval(t)
        q_val = conv.q.eval(t)
        resp.p_at_t = format_rational(p_val)
        resp.q_at_t = format_rational(q_val)
        if q_val != 0:
            resp.value_at_t = format_rational(p_val / q_val)
    return resp


def ratio(req: models.RatioRequest) -> models.RatioResponse:
    s = parse_rational(req.s)
    t = parse_rational(req.t)
    cf_value = None
    if req.cf_depth is not None:
        cf_value = format_rational(ratio_cf_convergent(s, req.cf_depth, t))
    try:
        rv = bessel_ratio(s, t, req.prec)
    except Inconclusive as exc:
        return models.RatioResponse(
            status="inconclusive",
            s=req.s,
            t=req.t,
            cf_depth=req.cf_depth,
            cf_value=cf_value,
            message=str(exc),
        )
    return models.RatioResponse(
        status="ok",
        s=req.s,
        t=req.t,
        value=_ball_model(rv.value),
        prec_used=rv.prec_used,
        cf_depth=req.cf_depth,
        cf_value=cf_value,
    )


def decay(req: models.DecayRequest) -> models.DecayResponse:
    t = parse_rational(req.t)
    if req.s is None:
        table = decay_table(t, req.n_max, req.prec)
        rows = [
            models.DecayRowModel(n=r.n, bound=fraction_upper_to_decimal(r.bound, 20))
            for r in table.rows
        ]
        return models.DecayResponse(
            t=req.t, crossover=table.crossover, rows=rows
        )
    s = parse_rational(req.s)
    table = bessel_decay_table(s, t, req.n_max, req.prec)
    rows = [
        models.DecayRowModel(
            n=r.n,
            bound=fraction_upper_to_decimal(r.bound, 20),
            poisson_ratio=r.poisson_ratio,
        )
        for r in table.rows
    ]
    return models.DecayResponse(
        t=req.t, s=req.s, crossover=table.crossover, rows=rows
    )


def niven(req: models.NivenRequest) -> models.NivenResponse:
    return models.NivenResponse(n=req.n, value=_ball_model(niven_H(req.n, req.prec)))


def verify_identities(
    req: models.VerifyIdentitiesRequest,
) -> models.VerifyIdentitiesResponse:
    report = check_series_relations(req.n_max, req.order)
    heads = [
        models.SeriesHeadModel(
            n=n,
            terms=[(exp, format_rational(c)) for exp, c in head],
        )
        for n, head in sorted(report.heads.items())
    ]
    bessel_families: tuple[str, ...] = ()
    for text in req.orders:
        rep = check_bessel_coeff_identities(parse_rational(text), req.coeff_count)
        bessel_families = rep.families
    return models.VerifyIdentitiesResponse(
        status="pass",
        series_families=list(report.families),
        series_heads=heads,
        bessel_orders=list(req.orders),
        bessel_families=list(bessel_families),
    )


def lemma1(req: models.Lemma1Request) -> models.Lemma1Response:
    nu = parse_rational(req.nu)
    t = parse_rational(req.t)
    verdicts = lemma1_check(nu, t, req.n_lo, req.n_hi, req.prec_cap)
    pairs = [
        models.Lemma1PairModel(
            n=v.n,
            order_low=format_rational(v.order_low),
            order_high=format_rational(v.order_high),
            certified=v.certified,
            witness_order=(
                format_rational(v.witness_order) if v.witness_order is not None else None
            ),
            sign=v.sign,
            prec_used=v.prec_used,
        )
        for v in verdicts
    ]
    status = "ok" if all(v.certified for v in verdicts) else "inconclusive"
    return models.Lemma1Response(status=status, pairs=pairs)


def nonzero(req: models.NonzeroRequest) -> models.NonzeroResponse:
    s = parse_rational(req.s)
    t = parse_rational(req.t)
    try:
        res = nonzero_J(s, t, req.prec_cap)
    except Inconclusive as exc:
        return models.NonzeroResponse(
            status="inconclusive", s=req.s, t=req.t, message=str(exc)
        )
    return models.NonzeroResponse(
        status="ok", s=req.s, t=req.t, sign=res.sign, prec_used=res.prec_used
    )


def quad_check(req: models.QuadCheckRequest) -> models.QuadCheckResponse:
    """Run one heuristic integral and compare it against the rigorous layer."""
    t = parse_rational(req.t)
    try:
        if req.which == "hermite":
            if req.n is None:
                raise ValueError("hermite check needs n")
            qr = hermite_integral(req.n, t, req.tol, req.node_cap)
            g = remainder_value(req.n, t, req.prec)
            with mp.workdps(40):
                ref = mp.mpf(g.mid_fraction().numerator) / g.mid_fraction().denominator
                ref = ref / mp.sqrt(mp.mpf(t.numerator) / t.denominator)
                diff = abs(qr.value - ref)
        elif req.which == "poisson":
            if req.nu is None:
                raise ValueError("poisson check needs nu")
            nu = parse_rational(req.nu)
            qr = poisson_integral(nu, t, req.tol, req.node_cap)
            nball = eval_N(nu, t, req.prec)
            with mp.workdps(40):
                r = mp.sqrt(mp.mpf(t.numerator) / t.denominator)
                nu_f = mp.mpf(nu.numerator) / nu.denominator
                pre = (r / 2) ** nu_f / mp.gamma(nu_f + 1)
                nmid = nball.mid_fraction()
                ref = pre * mp.mpf(nmid.numerator) / nmid.denominator
                diff = abs(qr.value - ref)
        else:
            if req.n is None:
                raise ValueError("iterated check needs n")
            qr = iterated_remainder(req.n, t, req.tol, min(req.node_cap, 256))
            href = hermite_integral(req.n, t, req.tol, req.node_cap)
            ref = href.value
            diff = abs(qr.value - ref)
    except QuadFailure as exc:
        return models.QuadCheckResponse(
            status="inconclusive", which=req.which, message=str(exc)
        )
    with mp.workdps(40):
        return models.QuadCheckResponse(
            status="ok",
            which=req.which,
            value=mpmath.nstr(qr.value, 25),
            est_err=qr.est_err,
            nodes_used=qr.nodes_used,
            reference=mpmath.nstr(ref, 25),
            abs_diff=float(diff),
            within_tol=bool(diff < max(req.tol, 1e-10)),
        )
