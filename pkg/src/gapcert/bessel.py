"""Certificate machinery for ratios of Bessel functions of the first kind.

Everything is phrased in the normalized series N_nu(t) (see series.py),
which has the same zero set as J_nu(r) for r != 0 and makes t = r**2 the
only variable.  The certificate pairs (u_n, w_n) in t satisfy

    r**n J_{n+s+1} = u_n J_{s+1} + (w_n / r) J_s,

built by u_{k+1} = 2(k+s+1) u_k - t u_{k-1} with seeds (1, 0) and
(2(s+1), -t); at s = -1/2 this is exactly the tangent table.  Values of
shifted-order Bessel functions always come from their own series, never
from a forward recurrence on floating values, because the recurrence's
companion solution grows and would destroy the enclosure.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .balls import DEFAULT_PREC_CAP, Ball
from .errors import DegenerateTruncation, IdentityViolation, Inconclusive, InvalidOrder
from .exact import PairTable, RatPoly, frac_bits
from .series import certify_nonzero, eval_N, pochhammer, series_coefficient


def _check_s(s: Fraction) -> None:
    if s.denominator == 1 and s <= -1:
        raise InvalidOrder(f"order s = {s} is a negative integer")


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


@dataclass(frozen=True)
class BesselCertPair:
    """Certificate pair for order s: d**n clears every denominator."""

    n: int
    s: Fraction
    u: RatPoly
    w: RatPoly


@dataclass(frozen=True)
class RatioValue:
    """rho = r J_{s+1}(r) / J_s(r) as a certified enclosure."""

    s: Fraction
    t: Fraction
    value: Ball
    prec_used: int


_TABLES: dict[Fraction, PairTable] = {}
_TABLES_LOCK = threading.Lock()


def _table(s: Fraction) -> PairTable:
    with _TABLES_LOCK:
        tbl = _TABLES.get(s)
        if tbl is None:
            tbl = PairTable(
                (RatPoly.ONE, RatPoly.ZERO),
                (RatPoly.constant(2 * (s + 1)), RatPoly.make([0, -1])),
                lambda k: 2 * (k + s),
            )
            _TABLES[s] = tbl
        return tbl


def bessel_cert(n: int, s: Fraction) -> BesselCertPair:
    if n < 0:
        raise ValueError("index must be >= 0")
    s = Fraction(s)
    _check_s(s)
    u, w = _table(s).row(n)
    return BesselCertPair(n, s, u, w)


def bessel_remainder_value(n: int, s: Fraction, t: Fraction, prec: int) -> Ball:
    """Ball for V_n = (t/2)**(n+1) N_{n+s+1}(t) / (s+1)_{n+1}.

    V_n is r**(n+1) J_{n+s+1} / J_s re-expressed against the normalized
    J_s, i.e. the quantity whose decay drives the contradiction.
    """
    s = Fraction(s)
    t = Fraction(t)
    _check_s(s)
    scale = (Fraction(t, 2) ** (n + 1)) / pochhammer(s + 1, n + 1)
    return eval_N(s + n + 1, t, prec + 16).scale(scale, prec + 16)


def bessel_ratio(
    s: Fraction, t: Fraction, prec: int, cap: int = DEFAULT_PREC_CAP
) -> RatioValue:
    """Enclose rho = r J_{s+1}/J_s = t N_{s+1}(t) / (2(s+1) N_s(t)).

    Escalates precision until N_s is certified nonzero; for rational
    s and t != 0 that is guaranteed to be possible, so Inconclusive
    doubles as a numerical-health alarm.
    """
    s = Fraction(s)
    t = Fraction(t)
    _check_s(s)
    if t == 0:
        return RatioValue(s, t, Ball.from_int(0), prec)
    ns, p = certify_nonzero(lambda pr: eval_N(s, t, pr), prec, cap)
    n1 = eval_N(s + 1, t, p)
    value = n1.div(ns, p).scale(Fraction(t) / (2 * (s + 1)), p)
    return RatioValue(s, t, value, p)


def ratio_cf_convergent(s: Fraction, k: int, t: Fraction) -> Fraction:
    """Exact k-level truncation of rho = t/(2(s+1) - t/(2(s+2) - ...))."""
    s = Fraction(s)
    t = Fraction(t)
    _check_s(s)
    if k < 1:
        raise ValueError("truncation depth must be >= 1")
    v = 2 * (s + k)
    for j in range(k - 1, 0, -1):
        if v == 0:
            raise DegenerateTruncation(j + 1)
        v = 2 * (s + j) - t / v
    if v == 0:
        raise DegenerateTruncation(1)
    return t / v


@dataclass(frozen=True)
class BesselCoeffReport:
    nu: Fraction
    count: int
    families: tuple[str, ...]


def check_bessel_coeff_identities(nu: Fraction, count: int) -> BesselCoeffReport:
    """Verify the series term-ratio, derivative-shift and ODE identities.

    All three are statements about the exact rational coefficients
    c_k = (-1/4)**k / (k! (nu+1)_k); any failure raises IdentityViolation.
    """
    nu = Fraction(nu)
    _check_order_not_negative_integer(nu)
    if count < 2:
        raise ValueError("count must be >= 2")
    c = [series_coefficient(nu, k) for k in range(count + 1)]
    c_up = [series_coefficient(nu + 1, k) for k in range(count + 1)]

    for k in range(count):
        # term ratio c_{k+1}/c_k = -1/(4(k+1)(nu+k+1))
        if c[k + 1] * 4 * (k + 1) * (nu + k + 1) != -c[k]:
            raise IdentityViolation(f"term ratio fails at nu={nu}, k={k}")
    for k in range(1, count + 1):
        # derivative shift: 2k c_k(nu) = -c_{k-1}(nu+1) / (2(nu+1))
        if 2 * k * c[k] * (2 * (nu + 1)) != -c_up[k - 1]:
            raise IdentityViolation(f"derivative shift fails at nu={nu}, k={k}")
    for k in range(1, count + 1):
        # ODE: ((nu+2k)**2 - nu**2) c_k + c_{k-1} = 0
        if ((nu + 2 * k) ** 2 - nu**2) * c[k] + c[k - 1] != 0:
            raise IdentityViolation(f"series ODE fails at nu={nu}, k={k}")

    return BesselCoeffReport(
        nu=nu, count=count, families=("term-ratio", "derivative-shift", "ode")
    )


def _check_order_not_negative_integer(nu: Fraction) -> None:
    if nu.denominator == 1 and nu <= -1:
        raise InvalidOrder(f"order {nu} is a negative integer")


@dataclass(frozen=True)
class Lemma1Verdict:
    n: int
    order_low: Fraction   # nu + n
    order_high: Fraction  # nu + n + 1
    certified: bool
    witness_order: Fraction | None  # which of the two was shown nonzero
    sign: int | None
    prec_used: int | None


def lemma1_check(
    nu: Fraction,
    t: Fraction,
    n_lo: int,
    n_hi: int,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> list[Lemma1Verdict]:
    """Certify, per adjacent order pair, that not both values vanish.

    For each n in [n_lo, n_hi) the pair is (nu+n, nu+n+1); the verdict is
    Certified as soon as either normalized value is shown nonzero under
    precision escalation, and Inconclusive (never "both zero") otherwise.
    """
    nu = Fraction(nu)
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    if n_hi <= n_lo:
        raise ValueError("empty index range")
    out = []
    for n in range(n_lo, n_hi):
        orders = [nu + n, nu + n + 1]
        verdict = None
        prec = 64
        while prec <= prec_cap and verdict is None:
            for order in orders:
                if order.denominator == 1 and order <= -1:
                    continue  # series undefined; the partner decides
                ball = eval_N(order, t, prec)
                if ball.excludes_zero():
                    verdict = Lemma1Verdict(
                        n, orders[0], orders[1], True, order, ball.sign(), prec
                    )
                    break
            prec *= 2
        if verdict is None:
            verdict = Lemma1Verdict(n, orders[0], orders[1], False, None, None, None)
        out.append(verdict)
    return out


@dataclass(frozen=True)
class NonzeroResult:
    sign: int
    prec_used: int


def nonzero_J(
    s: Fraction, t: Fraction, prec_cap: int = DEFAULT_PREC_CAP
) -> NonzeroResult:
    """Certified sign of N_s(t), which shares its zero set with J_s (r != 0)."""
    s = Fraction(s)
    t = Fraction(t)
    _check_s(s)
    if t == 0:
        raise ValueError("t must be nonzero")
    ball, p = certify_nonzero(lambda pr: eval_N(s, t, pr), 64, prec_cap)
    return NonzeroResult(sign=ball.sign(), prec_used=p)


@dataclass(frozen=True)
class BesselDecayRow:
    n: int
    bound: Fraction        # certified upper bound of |V_n|
    poisson_ratio: float   # sqrt|t| / (2(n+s+3/2)), the integral-bound ratio


@dataclass(frozen=True)
class BesselDecayTable:
    s: Fraction
    t: Fraction
    prec: int
    rows: tuple[BesselDecayRow, ...]
    crossover: int


def bessel_decay_table(
    s: Fraction, t: Fraction, n_max: int, prec: int
) -> BesselDecayTable:
    """Certified |V_n| bounds; the companion column is the exact ratio of
    the order-(n+s+1) integral bound, reported instead of the bound itself
    so no Gamma value at a rational argument is ever needed."""
    s = Fraction(s)
    t = Fraction(t)
    _check_s(s)
    if t == 0:
        raise ValueError("t must be nonzero")
    smallest = abs(Fraction(t, 2)) ** (n_max + 1) / abs(pochhammer(s + 1, n_max + 1))
    wprec = prec + max(0, -frac_bits(smallest)) + 48
    rows = []
    sqrt_abs_t = math.sqrt(abs(float(t)))
    for n in range(n_max + 1):
        bound = bessel_remainder_value(n, s, t, wprec).upper_abs()
        ratio = sqrt_abs_t / float(2 * (n + s + Fraction(3, 2)))
        rows.append(BesselDecayRow(n, bound, ratio))
    j = len(rows) - 1
    while j > 0 and rows[j - 1].bound > rows[j].bound:
        j -= 1
    return BesselDecayTable(s=s, t=t, prec=prec, rows=tuple(rows), crossover=j)
