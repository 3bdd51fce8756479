"""Exact rational scalars and dense rational-coefficient polynomials.

Rationals are stdlib ``fractions.Fraction`` values, which are already kept
in lowest terms with a positive denominator; the helpers here add the text
format used everywhere on the wire ("a/b" or "a") and explicit error
types.  ``RatPoly`` is a dense univariate polynomial in the squared
argument ``t = r**2`` and carries the certificate polynomials and
continued-fraction convergents, so all of its arithmetic is exact.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import NotClearable, ZeroDenominator

Rational = Fraction

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rat_normalize(num: int, den: int = 1) -> Fraction:
    """Canonical rational num/den; the sign lives on the numerator."""
    if den == 0:
        raise ZeroDenominator(f"denominator of {num}/{den} is zero")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse the wire format "a/b" or "a" (decimal digits, b > 0)."""
    m = _RAT_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDenominator(f"denominator of {text!r} is zero")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_bits(x: Fraction) -> int:
    """Upper bound on log2|x| (0 for x == 0); used for precision budgeting."""
    if x == 0:
        return 0
    return abs(x.numerator).bit_length() - x.denominator.bit_length() + 1


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RatPoly:
    """Dense polynomial sum_k coeffs[k] * t**k with trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Iterable[Fraction | int]) -> "RatPoly":
        return RatPoly(_trim(Fraction(c) for c in coeffs))

    @staticmethod
    def constant(c: Fraction | int) -> "RatPoly":
        return RatPoly.make([c])

    @property
    def degree(self) -> int:
        """len - 1; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, x: Fraction) -> Fraction:
        """Exact Horner evaluation."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_abs_upper(self, x_abs: Fraction) -> Fraction:
        """sum |c_k| * x_abs**k, an upper bound for |P| on [-x_abs, x_abs]."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x_abs + abs(c)
        return acc

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def denominator_exponent(self, base: int) -> int:
        """Smallest e >= 0 such that base**e * P has integer coefficients."""
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        e = 0
        for c in self.coeffs:
            rem = c.denominator
            k = 0
            while rem > 1:
                g = gcd(rem, base)
                if g == 1:
                    raise NotClearable(
                        f"coefficient denominator {c.denominator} has a prime "
                        f"factor outside base {base}"
                    )
                rem //= g
                k += 1
            e = max(e, k)
        return e

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                term = mag
            else:
                var = "t" if k == 1 else f"t^{k}"
                term = var if mag == "1" else f"{mag}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


RatPoly.ZERO = RatPoly.make([])  # type: ignore[attr-defined]
RatPoly.ONE = RatPoly.make([1])  # type: ignore[attr-defined]
RatPoly.T = RatPoly.make([0, 1])  # type: ignore[attr-defined]


def poly_eval(p: RatPoly, x: Fraction) -> Fraction:
    return p.eval(x)


def poly_combine(
    alpha: Fraction | int,
    p: RatPoly,
    beta: Fraction | int,
    q: RatPoly,
    shift: int = 0,
) -> RatPoly:
    """Exact alpha*P + beta*t**shift*Q, the shape of every recurrence step."""
    if shift < 0:
        raise ValueError("shift must be >= 0")
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    out = [Fraction(0)] * max(len(p.coeffs), shift + len(q.coeffs), 0)
    for k, c in enumerate(p.coeffs):
        out[k] += alpha * c
    for k, c in enumerate(q.coeffs):
        out[k + shift] += beta * c
    return RatPoly.make(out)


class PairTable:
    """Memoized rows of a three-term polynomial recurrence.

    Row k is the pair (u_k, w_k) with u_k = coeff(k)*u_{k-1} - t*u_{k-2}
    and identically for w.  Extension is guarded by a lock so concurrent
    readers always observe fully built rows.
    """

    def __init__(
        self,
        seed0: tuple[RatPoly, RatPoly],
        seed1: tuple[RatPoly, RatPoly],
        coeff: Callable[[int], Fraction],
    ):
        self._rows: list[tuple[RatPoly, RatPoly]] = [seed0, seed1]
        self._coeff = coeff
        self._lock = threading.Lock()

    def row(self, n: int) -> tuple[RatPoly, RatPoly]:
        if n < 0:
            raise ValueError("index must be >= 0")
        if n >= len(self._rows):
            with self._lock:
                while len(self._rows) <= n:
                    k = len(self._rows)
                    a = self._coeff(k)
                    u1, w1 = self._rows[k - 1]
                    u2, w2 = self._rows[k - 2]
                    self._rows.append(
                        (
                            poly_combine(a, u1, -1, u2, shift=1),
                            poly_combine(a, w1, -1, w2, shift=1),
                        )
                    )
        return self._rows[n]
