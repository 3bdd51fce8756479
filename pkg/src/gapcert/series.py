"""Rigorous evaluation of the three even power series driving everything.

All values are functions of t = r**2:

    S(t) = sin(r)/r,   C(t) = cos(r),   N_nu(t) = sum_k (-t/4)**k / (k! (nu+1)_k)

with S = N_{1/2} and C = N_{-1/2}.  Negative t transparently produces the
hyperbolic / modified-Bessel variants, so no separate code path exists for
them.  Partial sums are accumulated in exact integer arithmetic; the
returned ball's radius is the final rounding ulp plus a geometric tail
bound (the summation stops once the term magnitude is below the precision
target and every later term ratio is at most 1/2, so the tail is bounded
by twice the first omitted term).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from mpmath.libmp import from_rational

from .balls import DEFAULT_PREC_CAP, RAD_PREC, Ball, _from_fraction_up, _round_err, _u_add
from .errors import Inconclusive, InvalidOrder

_GUARD = 8
_MAX_TERMS = 2_000_000  # safety net; the ratio test always terminates first


def pochhammer(x: Fraction, k: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+k-1)."""
    acc = Fraction(1)
    for i in range(k):
        acc *= x + i
    return acc


def series_coefficient(nu: Fraction, k: int) -> Fraction:
    """Exact coefficient of t**k in N_nu: (-1/4)**k / (k! (nu+1)_k)."""
    return Fraction(-1, 4) ** k / (factorial(k) * pochhammer(Fraction(nu) + 1, k))


def _check_order(nu: Fraction) -> None:
    if nu.denominator == 1 and nu <= -1:
        raise InvalidOrder(f"series order {nu} is a negative integer")


def _check_prec(prec: int) -> None:
    if prec < 32:
        raise ValueError(f"prec must be >= 32 bits, got {prec}")


def eval_N(nu: Fraction, t: Fraction, prec: int) -> Ball:
    """Ball enclosing N_nu(t) with radius about 2**(-prec) plus one ulp."""
    nu = Fraction(nu)
    t = Fraction(t)
    _check_order(nu)
    _check_prec(prec)
    if t == 0:
        return Ball.from_int(1)

    a, b = t.numerator, t.denominator
    e, f = nu.numerator, nu.denominator

    # term_k = num/den; sum_{j<=k} = s_num/den.  The step multiplies den by
    # 4*b*(k+1)*(e + f*(k+1)), i.e. by f * (4 b (k+1) (nu+k+1)) / 1 in
    # integer form, and num by -a*f.
    num = 1
    den = 1
    s_num = 1
    k = 0
    af = abs(a) * f
    while True:
        nxt = e + f * (k + 1)  # f * (nu + k + 1); never 0 for valid nu
        step = 4 * b * (k + 1) * nxt
        if nxt > 0 and 2 * af <= abs(step):
            # every later ratio is <= |t| / (4 (k+1)(nu+k+1)) <= 1/2
            if abs(num) << (prec + _GUARD) < abs(den):
                tail = 2 * Fraction(abs(num) * af, abs(den * step))
                break
        if k > _MAX_TERMS:
            raise RuntimeError("series did not reach its stopping criterion")
        num *= -a * f
        den *= step
        s_num = s_num * step + num
        k += 1

    if den < 0:
        s_num, den = -s_num, -den
    mid = from_rational(s_num, den, prec, "n")
    rad = _u_add(_from_fraction_up(tail), _round_err(mid, prec))
    return Ball(mid, rad)


def eval_S(t: Fraction, prec: int) -> Ball:
    """sin(r)/r as a function of t = r**2 (sinh variant for t < 0)."""
    return eval_N(Fraction(1, 2), t, prec)


def eval_C(t: Fraction, prec: int) -> Ball:
    """cos(r) as a function of t = r**2 (cosh variant for t < 0)."""
    return eval_N(Fraction(-1, 2), t, prec)


def eval_N_ball(nu: Fraction, t: Ball, prec: int) -> Ball:
    """eval_N for a ball argument; needed when t itself is only enclosed."""
    nu = Fraction(nu)
    _check_order(nu)
    _check_prec(prec)
    wprec = prec + 32
    term = Ball.from_int(1)
    total = term
    t_abs = t.upper_abs()
    threshold = Fraction(1, 1 << (prec + _GUARD))
    half = Fraction(1, 2)
    k = 0
    while True:
        coef = Fraction(-1, 4) / ((k + 1) * (nu + k + 1))
        ratio_ub = t_abs * abs(coef)
        term_ub = term.upper_abs()
        if nu + k + 1 > 0 and ratio_ub <= half and term_ub < threshold:
            tail = 2 * term_ub * ratio_ub
            break
        if k > _MAX_TERMS:
            raise RuntimeError("series did not reach its stopping criterion")
        term = term.mul(t, wprec).scale(coef, wprec)
        total = total.add(term, wprec)
        k += 1
    return Ball(total.mid, _u_add(total.rad, _from_fraction_up(tail)))


def _arctan_inv(x: int, prec: int) -> tuple[Fraction, Fraction]:
    """Partial sum and tail bound for arctan(1/x), x >= 2 an integer.

    The series alternates with strictly decreasing magnitudes, so the
    truncation error is bounded by the first omitted term.
    """
    total = Fraction(0)
    k = 0
    xx = x * x
    power = x  # x**(2k+1)
    limit = Fraction(1, 1 << (prec + 4))
    while True:
        term = Fraction(1, (2 * k + 1) * power)
        if term < limit:
            return total, term
        total += term if k % 2 == 0 else -term
        power *= xx
        k += 1


@lru_cache(maxsize=None)
def pi_ball(prec: int) -> Ball:
    """Ball enclosing pi via 16*arctan(1/5) - 4*arctan(1/239)."""
    _check_prec(prec)
    s5, t5 = _arctan_inv(5, prec + 8)
    s239, t239 = _arctan_inv(239, prec + 8)
    approx = 16 * s5 - 4 * s239
    err = 16 * t5 + 4 * t239
    mid = from_rational(approx.numerator, approx.denominator, prec, "n")
    rad = _u_add(_from_fraction_up(err), _round_err(mid, prec))
    return Ball(mid, rad)


def certify_nonzero(make_ball, prec: int, cap: int = DEFAULT_PREC_CAP):
    """Re-evaluate at doubled precision until the ball excludes zero.

    Returns (ball, precision_used); raises Inconclusive at the cap.
    """
    p = max(prec, 32)
    while True:
        ball = make_ball(p)
        if ball.excludes_zero():
            return ball, p
        if p >= cap:
            raise Inconclusive(
                f"could not certify nonzero at precision cap {cap} bits", cap
            )
        p = min(2 * p, cap)
