"""Midpoint-radius ball arithmetic with a hard enclosure guarantee.

A ball is a binary-float midpoint at working precision plus a nonnegative
radius; the represented real always lies in [mid - rad, mid + rad].  The
arithmetic here never shrinks a true enclosure: midpoints are rounded to
nearest at the caller's precision and the rounding slack (one ulp, an
upper bound on the actual half-ulp error) is folded into the radius,
which is itself maintained with upward-directed rounding on mpmath's
low-level mpf primitives.  mpf exponents are unbounded, so there is no
overflow or underflow to special-case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath.libmp import (
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    to_rational,
    to_str,
)

from .errors import DivByZeroBall

# Radii only need a couple of correct digits as long as they stay upper
# bounds; 64 bits keeps the slack negligible.
RAD_PREC = 64

# Default escalation ceiling for callers that need "ball excludes zero".
DEFAULT_PREC_CAP = 16384


def _round_err(x, prec: int):
    """One ulp of x at prec bits, an upper bound on nearest-rounding error."""
    if not x[1]:  # zero mantissa: exact zero (specials never arise here)
        return fzero
    return from_man_exp(1, x[2] + x[3] - prec)


def _u_add(x, y):
    return mpf_add(x, y, RAD_PREC, "u")


def _u_mul(x, y):
    return mpf_mul(x, y, RAD_PREC, "u")


def _u_div(x, y):
    return mpf_div(x, y, RAD_PREC, "u")


def _d_sub(x, y):
    return mpf_sub(x, y, RAD_PREC, "d")


def _d_mul(x, y):
    return mpf_mul(x, y, RAD_PREC, "d")


def _to_fraction(x) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _from_fraction_up(x: Fraction):
    """Raw mpf upper bound of a nonnegative fraction."""
    if x == 0:
        return fzero
    return from_rational(x.numerator, x.denominator, RAD_PREC, "u")


@dataclass(frozen=True)
class Ball:
    """mid +- rad over raw libmp mpf tuples; immutable and thread-safe."""

    mid: tuple
    rad: tuple

    @staticmethod
    def from_int(n: int) -> "Ball":
        return Ball(from_int(n), fzero)

    @staticmethod
    def from_fraction(x: Fraction, prec: int) -> "Ball":
        x = Fraction(x)
        if x.denominator == 1:
            return Ball(from_int(x.numerator), fzero)
        mid = from_rational(x.numerator, x.denominator, prec, "n")
        return Ball(mid, _round_err(mid, prec))

    @staticmethod
    def from_midrad(mid: Fraction, rad: Fraction, prec: int) -> "Ball":
        """Ball enclosing [mid - rad, mid + rad] for exact rational inputs."""
        base = Ball.from_fraction(mid, prec)
        return Ball(base.mid, _u_add(base.rad, _from_fraction_up(Fraction(rad))))

    # ------------------------------------------------------------------
    # field operations
    # ------------------------------------------------------------------

    def add(self, other: "Ball", prec: int) -> "Ball":
        mid = mpf_add(self.mid, other.mid, prec, "n")
        rad = _u_add(_u_add(self.rad, other.rad), _round_err(mid, prec))
        return Ball(mid, rad)

    def sub(self, other: "Ball", prec: int) -> "Ball":
        mid = mpf_sub(self.mid, other.mid, prec, "n")
        rad = _u_add(_u_add(self.rad, other.rad), _round_err(mid, prec))
        return Ball(mid, rad)

    def neg(self) -> "Ball":
        return Ball(mpf_neg(self.mid), self.rad)

    def mul(self, other: "Ball", prec: int) -> "Ball":
        mid = mpf_mul(self.mid, other.mid, prec, "n")
        am = mpf_abs(self.mid)
        bm = mpf_abs(other.mid)
        rad = _u_add(
            _u_add(_u_mul(am, other.rad), _u_mul(bm, self.rad)),
            _u_add(_u_mul(self.rad, other.rad), _round_err(mid, prec)),
        )
        return Ball(mid, rad)

    def div(self, other: "Ball", prec: int) -> "Ball":
        if not other.excludes_zero():
            raise DivByZeroBall("division by a ball containing zero")
        mid = mpf_div(self.mid, other.mid, prec, "n")
        am = mpf_abs(self.mid)
        bm = mpf_abs(other.mid)
        # |a/b - am/bm| <= (|am| br + |bm| ar) / (|bm| (|bm| - br))
        num = _u_add(_u_mul(am, other.rad), _u_mul(bm, self.rad))
        den = _d_mul(bm, _d_sub(bm, other.rad))
        rad = _u_add(_u_div(num, den), _round_err(mid, prec))
        return Ball(mid, rad)

    def scale(self, c: Fraction | int, prec: int) -> "Ball":
        """Multiply by an exact rational."""
        return self.mul(Ball.from_fraction(Fraction(c), prec), prec)

    def shift(self, k: int) -> "Ball":
        """Exact multiplication by 2**k."""
        return Ball(mpf_shift(self.mid, k), mpf_shift(self.rad, k))

    def abs_enclosure(self) -> "Ball":
        """A ball containing |x| for every x in self."""
        return Ball(mpf_abs(self.mid), self.rad)

    # ------------------------------------------------------------------
    # queries (all exact: raw comparisons and exact rational conversions)
    # ------------------------------------------------------------------

    def excludes_zero(self) -> bool:
        return mpf_cmp(mpf_abs(self.mid), self.rad) > 0

    def contains_zero(self) -> bool:
        return not self.excludes_zero()

    def sign(self) -> int:
        """Certified sign; only meaningful when the ball excludes zero."""
        if not self.excludes_zero():
            raise DivByZeroBall("sign of a ball containing zero is undefined")
        return 1 if mpf_cmp(self.mid, fzero) > 0 else -1

    def upper_abs(self) -> Fraction:
        """Exact rational upper bound on |x| over the ball."""
        return _to_fraction(_u_add(mpf_abs(self.mid), self.rad))

    def lower_abs(self) -> Fraction:
        """Exact rational lower bound on |x| over the ball (floored at 0)."""
        d = _d_sub(mpf_abs(self.mid), self.rad)
        if mpf_cmp(d, fzero) <= 0:
            return Fraction(0)
        return _to_fraction(d)

    def mid_fraction(self) -> Fraction:
        return _to_fraction(self.mid)

    def rad_fraction(self) -> Fraction:
        return _to_fraction(self.rad)

    def contains_fraction(self, x: Fraction) -> bool:
        return abs(Fraction(x) - self.mid_fraction()) <= self.rad_fraction()

    def overlaps(self, other: "Ball") -> bool:
        gap = abs(self.mid_fraction() - other.mid_fraction())
        return gap <= self.rad_fraction() + other.rad_fraction()

    def mid_float(self) -> float:
        return float(mpmath.make_mpf(self.mid))

    def rad_float(self) -> float:
        return float(mpmath.make_mpf(self.rad))

    def mid_str(self, dps: int = 20) -> str:
        return to_str(self.mid, dps)

    def rad_str(self, dps: int = 3) -> str:
        return to_str(self.rad, dps)

    def __str__(self) -> str:
        return f"{self.mid_str()} +- {self.rad_str()}"


def ball_arith(a: Ball, b: Ball, op: str, prec: int) -> Ball:
    """Dispatch form of the four field operations."""
    if op == "add":
        return a.add(b, prec)
    if op == "sub":
        return a.sub(b, prec)
    if op == "mul":
        return a.mul(b, prec)
    if op == "div":
        return a.div(b, prec)
    raise ValueError(f"unknown op {op!r}")


def ball_poly_eval(coeffs, x: Ball, prec: int) -> Ball:
    """Horner evaluation of a rational-coefficient polynomial at a ball."""
    acc = Ball.from_int(0)
    for c in reversed(list(coeffs)):
        acc = acc.mul(x, prec).add(Ball.from_fraction(Fraction(c), prec), prec)
    return acc


def fraction_upper_to_decimal(x: Fraction, dps: int = 24) -> str:
    """Decimal string >= x (x >= 0), for reporting certified upper bounds."""
    raw = _from_fraction_up(x)
    return to_str(raw, dps)
