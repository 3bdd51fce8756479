"""Gap certificates: exact integer witnesses against ball enclosures.

For a candidate p/q and t = a/b the tangent-side construction is

    W_n = b**ceil(n/2) (u_n(t) p + w_n(t) q)          (an exact integer)
    A_n = b**ceil(n/2) q G_n(t) / C(t)                (a ball)

with A_n - W_n = b**ceil(n/2) u_n(t) q (r tan r - p/q), so whenever
W_n != 0 and ub|A_n| < |W_n|,

    |r tan r - p/q| >= (|W_n| - ub|A_n|) / (q b**ceil(n/2) |u_n(t)|) > 0.

The Bessel-ratio side is identical with an extra d**n clearing factor for
s = c/d and V_n / N_s(t) in place of G_n / C(t).  The emitted lower bound
is an exact rational derived from the certified upper bound of the ball,
so the claim itself is exactly representable and re-checkable.

A certificate is only emitted at an index whose trace row is flagged,
i.e. ub|A_n| < 1 <= |W_n|; this is marginally stricter than ub|A_n| <
|W_n| (it can delay emission by an index or two) and keeps the trace and
the certificate telling the same story.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .balls import DEFAULT_PREC_CAP, Ball, fraction_upper_to_decimal
from .bessel import bessel_cert
from .errors import (
    CertificateVerificationError,
    InconclusiveDenominator,
    Inconclusive,
    InvalidOrder,
    NoWitnessFound,
    ZeroDenominatorCos,
)
from .exact import format_rational, frac_bits, parse_rational
from .lambert import tan_cert
from .series import certify_nonzero, eval_C, eval_N, eval_S, pochhammer

_BEST_OF_WINDOW = 8


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


@dataclass(frozen=True)
class TraceRow:
    n: int
    witness: int
    a_abs_ub: float
    flagged: bool  # |A_n| < 1 with W_n != 0: the contradiction shape


@dataclass(frozen=True)
class GapCertificate:
    kind: str  # "tan" | "bessel"
    t: Fraction
    s: Fraction | None
    candidate: Fraction
    n: int
    witness: int
    a_bound: Ball
    a_upper: Fraction
    gap_lower_bound: Fraction
    prec_bits: int

    def target_label(self) -> str:
        if self.kind == "tan":
            return "r*tan(r) with r = sqrt(t)"
        return "r*J_{s+1}(r)/J_s(r) with r = sqrt(t)"


@dataclass(frozen=True)
class _ScanRow:
    n: int
    witness_frac: Fraction
    witness: int
    u_val: Fraction
    a_ball: Ball
    a_ub: Fraction
    divisor: Fraction  # q * b**ceil(n/2) * d**n * |u_n(t)|, 0 if u_val == 0

    @property
    def flagged(self) -> bool:
        return self.witness != 0 and self.a_ub < 1

    @property
    def feasible(self) -> bool:
        return self.flagged and self.u_val != 0

    @property
    def bound(self) -> Fraction:
        return (abs(self.witness) - self.a_ub) / self.divisor


def _validate(kind: str, t: Fraction, s: Fraction | None, pq: Fraction) -> None:
    if kind not in ("tan", "bessel"):
        raise ValueError(f"unknown certificate kind {kind!r}")
    if t == 0:
        raise ValueError("t must be a nonzero rational")
    if kind == "bessel":
        if s is None:
            raise ValueError("bessel certificates need an order s")
        if s.denominator == 1 and s <= -1:
            raise InvalidOrder(f"order s = {s} is a negative integer")


def witness_fraction(
    kind: str, n: int, t: Fraction, pq: Fraction, s: Fraction | None = None
) -> Fraction:
    """The scaled witness before the integrality assertion; tests pin den == 1."""
    t = Fraction(t)
    pq = Fraction(pq)
    _validate(kind, t, s, pq)
    p, q = pq.numerator, pq.denominator
    b = t.denominator
    if kind == "tan":
        pair = tan_cert(n)
        scale = Fraction(b ** _ceil_half(n))
    else:
        pair = bessel_cert(n, s)
        scale = Fraction(b ** _ceil_half(n) * s.denominator**n)
    return scale * (pair.u.eval(t) * p + pair.w.eval(t) * q)


def _scan(
    kind: str,
    t: Fraction,
    s: Fraction | None,
    pq: Fraction,
    n_max: int,
    prec: int,
    cap: int = DEFAULT_PREC_CAP,
) -> Iterator[_ScanRow]:
    t = Fraction(t)
    pq = Fraction(pq)
    if s is not None:
        s = Fraction(s)
    _validate(kind, t, s, pq)
    p, q = pq.numerator, pq.denominator
    b = t.denominator
    d = 1 if kind == "tan" else s.denominator

    # Certify the value denominator (cos r, resp. normalized J_s) nonzero.
    if kind == "tan":
        try:
            _, denom_prec = certify_nonzero(lambda pr: eval_C(t, pr), prec, cap)
        except Inconclusive as exc:
            raise ZeroDenominatorCos(str(exc), cap) from exc
    else:
        try:
            _, denom_prec = certify_nonzero(lambda pr: eval_N(s, t, pr), prec, cap)
        except Inconclusive as exc:
            raise InconclusiveDenominator(str(exc), cap) from exc

    sc_cache: dict[int, tuple[Ball, Ball]] = {}
    ns_cache: dict[int, Ball] = {}

    for n in range(n_max + 1):
        if kind == "tan":
            pair = tan_cert(n)
        else:
            pair = bessel_cert(n, s)
        u_val = pair.u.eval(t)
        w_val = pair.w.eval(t)
        scale = b ** _ceil_half(n) * d**n
        wf = scale * (u_val * p + w_val * q)
        if wf.denominator != 1:
            raise ArithmeticError(
                f"witness at n={n} is not an integer after scaling: {wf}"
            )
        w_int = wf.numerator

        boost = max(frac_bits(Fraction(scale * q)), 0) + max(
            frac_bits(abs(u_val * t) + abs(w_val) + 1), 0
        )
        wprec = max(prec, denom_prec) + boost + 32

        if kind == "tan":
            pairsc = sc_cache.get(wprec)
            if pairsc is None:
                pairsc = (eval_S(t, wprec), eval_C(t, wprec))
                sc_cache[wprec] = pairsc
            s_ball, c_ball = pairsc
            g = s_ball.scale(u_val * t, wprec).add(c_ball.scale(w_val, wprec), wprec)
            a_ball = g.div(c_ball, wprec).scale(scale * q, wprec)
        else:
            ns_ball = ns_cache.get(wprec)
            if ns_ball is None:
                ns_ball = eval_N(s, t, wprec)
                ns_cache[wprec] = ns_ball
            vscale = (Fraction(t, 2) ** (n + 1)) / pochhammer(s + 1, n + 1)
            v_ball = eval_N(s + n + 1, t, wprec).scale(vscale, wprec)
            a_ball = v_ball.div(ns_ball, wprec).scale(scale * q, wprec)

        a_ub = a_ball.upper_abs()
        divisor = Fraction(q * scale) * abs(u_val)
        yield _ScanRow(
            n=n,
            witness_frac=wf,
            witness=w_int,
            u_val=u_val,
            a_ball=a_ball,
            a_ub=a_ub,
            divisor=divisor,
        )


def _emit(
    kind: str,
    t: Fraction,
    s: Fraction | None,
    pq: Fraction,
    n_max: int,
    prec: int,
    cap: int,
) -> GapCertificate:
    best: _ScanRow | None = None
    first_n: int | None = None
    for row in _scan(kind, t, s, pq, n_max, prec, cap):
        if not row.feasible:
            continue
        if first_n is None:
            first_n = row.n
            best = row
        elif row.bound > best.bound:
            best = row
        if row.n >= first_n + _BEST_OF_WINDOW:
            break
    if best is None:
        raise NoWitnessFound(
            f"no witness index up to {n_max} certifies a positive gap; "
            "increase n_max or the working precision"
        )
    return GapCertificate(
        kind=kind,
        t=Fraction(t),
        s=Fraction(s) if s is not None else None,
        candidate=Fraction(pq),
        n=best.n,
        witness=best.witness,
        a_bound=best.a_ball,
        a_upper=best.a_ub,
        gap_lower_bound=best.bound,
        prec_bits=prec,
    )


def tan_gap_certificate(
    t: Fraction,
    pq: Fraction,
    n_max: int = 64,
    prec: int = 256,
    cap: int = DEFAULT_PREC_CAP,
) -> GapCertificate:
    """Certified positive lower bound on |r tan r - p/q| for t = r**2."""
    return _emit("tan", Fraction(t), None, Fraction(pq), n_max, prec, cap)


def bessel_gap_certificate(
    s: Fraction,
    t: Fraction,
    pq: Fraction,
    n_max: int = 64,
    prec: int = 256,
    cap: int = DEFAULT_PREC_CAP,
) -> GapCertificate:
    """Certified positive lower bound on |r J_{s+1}/J_s - p/q| for t = r**2."""
    return _emit("bessel", Fraction(t), Fraction(s), Fraction(pq), n_max, prec, cap)


def contradiction_trace(
    kind: str,
    t: Fraction,
    pq: Fraction,
    n_max: int = 16,
    prec: int = 256,
    s: Fraction | None = None,
    cap: int = DEFAULT_PREC_CAP,
) -> list[TraceRow]:
    """The full (n, W_n, ub|A_n|) table; flagged rows show the contradiction."""
    rows = []
    for row in _scan(kind, Fraction(t), s, Fraction(pq), n_max, prec, cap):
        rows.append(
            TraceRow(
                n=row.n,
                witness=row.witness,
                a_abs_ub=float(row.a_ub),
                flagged=row.flagged,
            )
        )
    return rows


# ----------------------------------------------------------------------
# serialization (stable wire schema) and re-verification
# ----------------------------------------------------------------------


def certificate_to_dict(cert: GapCertificate) -> dict:
    return {
        "kind": cert.kind,
        "t": format_rational(cert.t),
        "s": format_rational(cert.s) if cert.s is not None else None,
        "p": cert.candidate.numerator,
        "q": cert.candidate.denominator,
        "n": cert.n,
        "W": str(cert.witness),
        "A_upper": fraction_upper_to_decimal(cert.a_upper),
        "gap_lower_bound": format_rational(cert.gap_lower_bound),
        "prec_bits": cert.prec_bits,
    }


def certificate_to_json(cert: GapCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True)


def verify_certificate(data: dict, cap: int = DEFAULT_PREC_CAP) -> GapCertificate:
    """Recompute a serialized certificate from scratch and cross-check it.

    Re-derives the witness and the ball separation at the recorded
    precision and index; the recomputed lower bound must be at least the
    stored one (higher-precision reruns can only sharpen it).
    """
    for key in ("kind", "t", "p", "q", "n", "W", "gap_lower_bound", "prec_bits"):
        if key not in data:
            raise CertificateVerificationError(f"missing field {key!r}")
    kind = data["kind"]
    t = parse_rational(data["t"])
    s = parse_rational(data["s"]) if data.get("s") else None
    pq = Fraction(int(data["p"]), int(data["q"]))
    n = int(data["n"])
    prec = int(data["prec_bits"])
    stored_w = int(data["W"])
    stored_bound = parse_rational(data["gap_lower_bound"])

    row = None
    for candidate in _scan(kind, t, s, pq, n, prec, cap):
        if candidate.n == n:
            row = candidate
    if row is None:
        raise CertificateVerificationError(f"could not rebuild index n={n}")
    if row.witness != stored_w:
        raise CertificateVerificationError(
            f"witness mismatch: recomputed {row.witness}, stored {stored_w}"
        )
    if not row.feasible:
        raise CertificateVerificationError(
            "recomputed enclosure does not separate from the witness"
        )
    if row.bound < stored_bound:
        raise CertificateVerificationError(
            f"recomputed bound {row.bound} is below the stored {stored_bound}"
        )
    return GapCertificate(
        kind=kind,
        t=t,
        s=s,
        candidate=pq,
        n=n,
        witness=row.witness,
        a_bound=row.a_ball,
        a_upper=row.a_ub,
        gap_lower_bound=row.bound,
        prec_bits=prec,
    )
