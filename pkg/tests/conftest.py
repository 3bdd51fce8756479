"""Shared oracle helpers.

The reference side of every numeric comparison is mpmath at 60 decimal
digits, which is an independent implementation from the package's exact
integer summation, so agreement genuinely cross-checks the two.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp
from mpmath.libmp import to_rational

ORACLE_DPS = 60
ORACLE_SLACK = Fraction(1, 10**50)  # generous cover for the oracle's own error


def oracle(fn, *args) -> mpmath.mpf:
    with mp.workdps(ORACLE_DPS):
        return fn(*[mpmath.mpf(a) if isinstance(a, (int, float)) else a for a in args])


def frac_of_mpf(x) -> Fraction:
    p, q = to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def frac_of(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return frac_of_mpf(x)


def assert_encloses(ball, value, slack: Fraction = ORACLE_SLACK) -> None:
    """The ball must contain `value` up to the oracle's own slack."""
    v = frac_of(value)
    gap = abs(v - ball.mid_fraction())
    assert gap <= ball.rad_fraction() + slack, (
        f"ball {ball} does not enclose {float(v)} (gap {float(gap)})"
    )


def mpf_of_fraction(x: Fraction):
    with mp.workdps(ORACLE_DPS):
        return mpmath.mpf(x.numerator) / x.denominator
