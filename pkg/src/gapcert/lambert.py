"""Continued-fraction remainder machinery for the tangent kernel.

The central objects are the integer-coefficient certificate pairs
(u_n, w_n) in t = r**2 with

    G_n(t) := r * R_n(r) = u_n(t) * t * S(t) + w_n(t) * C(t),

where R_0 = sin r, R_1 = sin r - r cos r and
R_n = (2n-1) R_{n-1} - t R_{n-2}.  w_n is r * v_n with v_n the cosine
coefficient, so everything lives in t alone and t < 0 gives the tanh
variants for free.  The same three-term recurrence with different seeds
produces the convergent pairs (P_n, Q_n) of the continued fraction of
r*tan r; u_n = Q_n and w_n = -P_n, which the test suite pins exactly.

Values are computed from the certificate polynomials and the rigorous
S, C series, never by a forward recurrence on floats; the recurrence
itself is re-verified separately as an exact truncated-series identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .balls import Ball, ball_poly_eval
from .errors import IdentityViolation
from .exact import PairTable, RatPoly, frac_bits, poly_combine
from .series import eval_C, eval_N_ball, eval_S, pi_ball


def dfact(m: int) -> int:
    """Double factorial of an odd integer m >= -1."""
    if m < -1 or m % 2 == 0:
        raise ValueError(f"dfact expects an odd integer >= -1, got {m}")
    out = 1
    for j in range(1, m + 1, 2):
        out *= j
    return out


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


@dataclass(frozen=True)
class TanCertPair:
    """Certificate pair: R_n = u_n sin r + (w_n / r) cos r."""

    n: int
    u: RatPoly
    w: RatPoly


@dataclass(frozen=True)
class Convergent:
    """P_n/Q_n, the n-th convergent of r*tan r as a ratio in t."""

    n: int
    p: RatPoly
    q: RatPoly


# Both tables obey X_k = (2k-1) X_{k-1} - t X_{k-2}; only the seeds differ.
_CERT_TABLE = PairTable(
    (RatPoly.ONE, RatPoly.ZERO),
    (RatPoly.ONE, RatPoly.make([0, -1])),
    lambda k: Fraction(2 * k - 1),
)
_CONV_TABLE = PairTable(
    (RatPoly.ZERO, RatPoly.ONE),
    (RatPoly.T, RatPoly.ONE),
    lambda k: Fraction(2 * k - 1),
)


def tan_cert(n: int) -> TanCertPair:
    if n < 0:
        raise ValueError("index must be >= 0")
    u, w = _CERT_TABLE.row(n)
    return TanCertPair(n, u, w)


def tan_convergent(n: int) -> Convergent:
    if n < 1:
        raise ValueError("convergent index must be >= 1")
    p, q = _CONV_TABLE.row(n)
    return Convergent(n, p, q)


def remainder_value(n: int, t: Fraction, prec: int) -> Ball:
    """Ball enclosing G_n(t) = r*R_n; radius about 2**(-prec - 16)."""
    t = Fraction(t)
    pair = tan_cert(n)
    u_val = pair.u.eval(t)
    w_val = pair.w.eval(t)
    boost = max(frac_bits(u_val * t), frac_bits(w_val), 0) + 24
    wprec = prec + boost
    s = eval_S(t, wprec)
    c = eval_C(t, wprec)
    return s.scale(u_val * t, wprec).add(c.scale(w_val, wprec), wprec)


def remainder_value_ball(n: int, t: Ball, prec: int) -> Ball:
    """remainder_value for an enclosed (non-rational) argument t."""
    pair = tan_cert(n)
    t_abs = t.upper_abs()
    boost = max(
        frac_bits(pair.u.eval_abs_upper(t_abs) * t_abs),
        frac_bits(pair.w.eval_abs_upper(t_abs)),
        0,
    ) + 24
    wprec = prec + boost
    s = eval_N_ball(Fraction(1, 2), t, wprec)
    c = eval_N_ball(Fraction(-1, 2), t, wprec)
    u_ball = ball_poly_eval(pair.u.coeffs, t, wprec)
    w_ball = ball_poly_eval(pair.w.coeffs, t, wprec)
    left = u_ball.mul(t, wprec).mul(s, wprec)
    return left.add(w_ball.mul(c, wprec), wprec)


def niven_H(n: int, prec: int) -> Ball:
    """Ball enclosing H_n = 2**(n+1) R_n(pi/2) = 2**(n+2) G_n(pi**2/4) / pi."""
    if n < 0:
        raise ValueError("index must be >= 0")
    pair = tan_cert(n)
    boost = max(frac_bits(pair.u.eval_abs_upper(Fraction(3)) * 3), 0) + 48
    wprec = prec + boost
    pi = pi_ball(wprec)
    t = pi.mul(pi, wprec).scale(Fraction(1, 4), wprec)
    g = remainder_value_ball(n, t, wprec)
    return g.shift(n + 2).div(pi, wprec)


# ----------------------------------------------------------------------
# exact truncated power series in r, used only for identity verification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ExactSeries:
    """Truncated series in r: coefficients of r**0 .. r**(order-1).

    ``order`` records the validity: the represented function agrees with
    the stored coefficients modulo r**order, and every operation tracks
    how much validity survives (a derivative loses one order, a shift by
    r**k gains k).
    """

    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs, order: int) -> "ExactSeries":
        cs = [Fraction(c) for c in coeffs][:order]
        cs += [Fraction(0)] * (order - len(cs))
        return ExactSeries(order, tuple(cs))

    def truncate(self, order: int) -> "ExactSeries":
        return ExactSeries.make(self.coeffs[:order], order)

    def add(self, other: "ExactSeries") -> "ExactSeries":
        order = min(self.order, other.order)
        return ExactSeries.make(
            [a + b for a, b in zip(self.coeffs[:order], other.coeffs[:order])], order
        )

    def sub(self, other: "ExactSeries") -> "ExactSeries":
        return self.add(other.scale(-1))

    def scale(self, c) -> "ExactSeries":
        c = Fraction(c)
        return ExactSeries(self.order, tuple(c * a for a in self.coeffs))

    def shift_r(self, k: int) -> "ExactSeries":
        """Multiply by r**k (validity grows by k)."""
        return ExactSeries.make((Fraction(0),) * k + self.coeffs, self.order + k)

    def derivative(self) -> "ExactSeries":
        return ExactSeries.make(
            [j * c for j, c in enumerate(self.coeffs)][1:], self.order - 1
        )

    def first_nonzero(self):
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j, c
        return None

    def nonzero_head(self, count: int = 2):
        out = []
        for j, c in enumerate(self.coeffs):
            if c != 0:
                out.append((j, c))
                if len(out) == count:
                    break
        return tuple(out)


def sin_series(order: int) -> ExactSeries:
    cs = [Fraction(0)] * order
    for k in range(0, (order + 1) // 2):
        j = 2 * k + 1
        if j < order:
            cs[j] = Fraction((-1) ** k, factorial(j))
    return ExactSeries.make(cs, order)


def cos_series(order: int) -> ExactSeries:
    cs = [Fraction(0)] * order
    for k in range(0, order // 2 + 1):
        j = 2 * k
        if j < order:
            cs[j] = Fraction((-1) ** k, factorial(j))
    return ExactSeries.make(cs, order)


def remainder_series(n: int, order: int) -> ExactSeries:
    """R_n as an exact truncated series: u_n(r**2) sin r + (w_n(r**2)/r) cos r."""
    pair = tan_cert(n)
    sin_s = sin_series(order)
    cos_s = cos_series(order)
    acc = ExactSeries.make([], order)
    for j, c in enumerate(pair.u.coeffs):
        acc = acc.add(sin_s.shift_r(2 * j).scale(c).truncate(order))
    for j, c in enumerate(pair.w.coeffs):
        if j == 0:
            if c != 0:
                raise IdentityViolation(f"w_{n} has a nonzero constant term")
            continue
        acc = acc.add(cos_s.shift_r(2 * j - 1).scale(c).truncate(order))
    return acc


@dataclass(frozen=True)
class SeriesRelationReport:
    n_max: int
    order: int
    families: tuple[str, ...]
    heads: dict


def _assert_zero(series: ExactSeries, what: str, n: int) -> None:
    bad = series.first_nonzero()
    if bad is not None:
        j, c = bad
        raise IdentityViolation(
            f"{what} fails at n={n}: coefficient of r^{j} is {c}, expected 0"
        )


def check_series_relations(n_max: int, order: int) -> SeriesRelationReport:
    """Verify the derivative, ODE, recurrence and leading-term identities.

    All four are exact identities of truncated series; any mismatch raises
    IdentityViolation naming the index and the first bad coefficient.
    """
    if order < 2 * n_max + 4:
        raise ValueError("order must be at least 2*n_max + 4")
    rs = [remainder_series(n, order) for n in range(n_max + 1)]
    heads = {n: rs[n].nonzero_head(2) for n in range(n_max + 1)}

    for n in range(1, n_max + 1):
        # d R_n / dr = r * R_{n-1}
        _assert_zero(rs[n].derivative().sub(rs[n - 1].shift_r(1)), "derivative relation", n)
    for n in range(n_max + 1):
        # r R_n'' - 2n R_n' + r R_n = 0
        lhs = (
            rs[n].derivative().derivative().shift_r(1)
            .sub(rs[n].derivative().scale(2 * n))
            .add(rs[n].shift_r(1))
        )
        _assert_zero(lhs, "second-order differential equation", n)
    for n in range(2, n_max + 1):
        # R_n = (2n-1) R_{n-1} - t R_{n-2}
        lhs = rs[n].sub(rs[n - 1].scale(2 * n - 1)).add(rs[n - 2].shift_r(2))
        _assert_zero(lhs, "three-term recurrence", n)
    for n in range(n_max + 1):
        # leading term r**(2n+1) / (2n+1)!!
        head = rs[n].first_nonzero()
        expect = (2 * n + 1, Fraction(1, dfact(2 * n + 1)))
        if head != expect:
            raise IdentityViolation(
                f"leading term fails at n={n}: got {head}, expected {expect}"
            )

    return SeriesRelationReport(
        n_max=n_max,
        order=order,
        families=("derivative", "ode", "recurrence", "leading-term"),
        heads=heads,
    )


# ----------------------------------------------------------------------
# decay table
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DecayRow:
    n: int
    bound: Fraction  # certified upper bound of b**ceil(n/2) * |G_n(t)|


@dataclass(frozen=True)
class DecayTable:
    t: Fraction
    prec: int
    rows: tuple[DecayRow, ...]
    crossover: int  # rows are strictly decreasing from this index onward


def decay_table(t: Fraction, n_max: int, prec: int) -> DecayTable:
    """Certified upper bounds on b**ceil(n/2) |G_n(t)| for n = 0..n_max.

    The working precision is deepened with n_max so that the radius floor
    sits far below the smallest magnitude in the table; otherwise the tail
    of the table would flatten at the enclosure width instead of decaying.
    """
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    b = t.denominator
    pairs = [tan_cert(n) for n in range(n_max + 1)]
    vals = [(p.u.eval(t), p.w.eval(t)) for p in pairs]
    poly_bits = max(
        max(frac_bits(b ** _ceil_half(n) * (abs(u * t) + abs(w) + 1)) for n, (u, w) in enumerate(vals)),
        0,
    )
    # |G_n| is of order |t|**(n+1) / (2n+1)!!; keep the radius below that
    smallest = abs(t) ** (n_max + 1) / dfact(2 * n_max + 1)
    depth_bits = max(0, -frac_bits(smallest))
    wprec = prec + poly_bits + depth_bits + 48

    s = eval_S(t, wprec)
    c = eval_C(t, wprec)
    rows = []
    for n, (u_val, w_val) in enumerate(vals):
        g = s.scale(u_val * t, wprec).add(c.scale(w_val, wprec), wprec)
        rows.append(DecayRow(n, b ** _ceil_half(n) * g.upper_abs()))

    j = len(rows) - 1
    while j > 0 and rows[j - 1].bound > rows[j].bound:
        j -= 1
    return DecayTable(t=t, prec=prec, rows=tuple(rows), crossover=j)
