"""Floating cross-validation oracles for the integral representations.

Everything in this module is deliberately non-rigorous: error estimates
come from successive refinement (node-count doubling), not from enclosure
arithmetic.  These integrals exist to cross-check the exact/ball layer
through an independent route, so they must not share code with it.

Gauss-Legendre nodes and weights are generated by Newton iteration on the
Legendre recurrence at extended working precision and cached per node
count.  The ratio-of-Bessel prefactor Gamma(nu+1/2) is taken from mpmath,
which is fine here because this layer makes no certified claims.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp

from .errors import OutOfValidity, QuadFailure

_QUAD_DPS = 45  # supports tolerances down to the 1e-30 floor
_MIN_TOL = 1e-30

_node_cache: dict[int, tuple[list, list]] = {}
_node_lock = threading.Lock()


@dataclass(frozen=True)
class QuadResult:
    value: mpmath.mpf
    est_err: float  # successive-refinement estimate, not a bound
    nodes_used: int

    def value_float(self) -> float:
        return float(self.value)


def _legendre_nodes(m: int) -> tuple[list, list]:
    """Nodes and weights of m-point Gauss-Legendre on [-1, 1]."""
    with _node_lock:
        cached = _node_cache.get(m)
        if cached is not None:
            return cached
    with mp.workdps(_QUAD_DPS):
        nodes = [mp.mpf(0)] * m
        weights = [mp.mpf(0)] * m
        for i in range((m + 1) // 2):
            x = mp.cos(mp.pi * (i + 0.75) / (m + 0.5))
            for _ in range(60):
                p0, p1 = mp.mpf(1), x
                for j in range(2, m + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(10) ** (-_QUAD_DPS + 2):
                    break
            p0, p1 = mp.mpf(1), x
            for j in range(2, m + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = m * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes[i] = -x
            nodes[m - 1 - i] = x
            weights[i] = w
            weights[m - 1 - i] = w
    with _node_lock:
        _node_cache[m] = (nodes, weights)
    return nodes, weights


def _gauss_on_interval(f, lo, hi, m: int):
    nodes, weights = _legendre_nodes(m)
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    total = mp.mpf(0)
    for x, w in zip(nodes, weights):
        total += w * f(mid + half * x)
    return total * half


def _refine(f, lo, hi, tol: float, node_cap: int) -> tuple[mpmath.mpf, float, int]:
    """Double the node count until two successive estimates agree to tol."""
    prev = None
    m = 8
    while m <= node_cap:
        est = _gauss_on_interval(f, lo, hi, m)
        if prev is not None:
            diff = abs(est - prev)
            if diff < tol:
                return est, float(diff), m
        prev = est
        m *= 2
    raise QuadFailure(f"no convergence to {tol} within {node_cap} nodes")


def _check_tol(tol: float) -> None:
    if tol < _MIN_TOL:
        raise ValueError(f"tol must be >= {_MIN_TOL}")


def hermite_integral(
    n: int, t: Fraction, tol: float = 1e-14, node_cap: int = 4096
) -> QuadResult:
    """R_n(r) = r**(2n+1)/(2**n n!) * int_0^1 (1-z**2)**n cos(rz) dz, r = sqrt t."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    _check_tol(tol)
    with mp.workdps(_QUAD_DPS):
        r = mp.sqrt(mp.mpf(t.numerator) / t.denominator)
        factor = r ** (2 * n + 1) / (2**n * factorial(n))

        def integrand(z):
            return (1 - z * z) ** n * mp.cos(r * z)

        est, err, m = _refine(integrand, mp.mpf(0), mp.mpf(1), tol, node_cap)
        return QuadResult(value=factor * est, est_err=err, nodes_used=m)


def poisson_integral(
    nu: Fraction, t: Fraction, tol: float = 1e-14, node_cap: int = 4096
) -> QuadResult:
    """J_nu(r) from the Poisson integral, valid for nu > -1/2.

    The theta integrand behaves like theta**(2 nu) at the endpoints, which
    defeats plain Gauss-Legendre for fractional nu, so the integral is
    taken after the substitution theta = pi (1 - cos phi)/2; that flattens
    both endpoints quadratically and restores fast convergence.
    """
    nu = Fraction(nu)
    t = Fraction(t)
    if nu <= Fraction(-1, 2):
        raise OutOfValidity("Poisson representation requires nu > -1/2")
    if t <= 0:
        raise ValueError("t must be positive")
    _check_tol(tol)
    with mp.workdps(_QUAD_DPS):
        r = mp.sqrt(mp.mpf(t.numerator) / t.denominator)
        nu_f = mp.mpf(nu.numerator) / nu.denominator
        pre = (r / 2) ** nu_f / (mp.sqrt(mp.pi) * mp.gamma(nu_f + mp.mpf(1) / 2))

        def integrand(phi):
            theta = mp.pi * (1 - mp.cos(phi)) / 2
            sin_theta = mp.sin(theta)
            if sin_theta <= 0:
                return mp.mpf(0)
            return (
                mp.cos(r * mp.cos(theta))
                * sin_theta ** (2 * nu_f)
                * (mp.pi / 2)
                * mp.sin(phi)
            )

        est, err, m = _refine(integrand, mp.mpf(0), +mp.pi, tol, node_cap)
        return QuadResult(value=pre * est, est_err=err, nodes_used=m)


def iterated_remainder(
    n: int, t: Fraction, tol: float = 1e-10, node_cap: int = 256
) -> QuadResult:
    """R_n via the n+1-fold nested integral, innermost kernel cos.

    Uses A_0(x) = int_0^x cos, A_k(x) = int_0^x u A_{k-1}(u) du and
    returns A_n(r); the cost is nodes**(n+1), hence the n <= 3 cap.
    """
    t = Fraction(t)
    if not 1 <= n <= 3:
        raise ValueError("nesting depth must be between 1 and 3")
    if t <= 0:
        raise ValueError("t must be positive")
    _check_tol(tol)
    with mp.workdps(_QUAD_DPS):
        r = mp.sqrt(mp.mpf(t.numerator) / t.denominator)

        def level(k: int, x, m: int):
            if k == 0:
                return _gauss_on_interval(mp.cos, mp.mpf(0), x, m)
            return _gauss_on_interval(
                lambda u: u * level(k - 1, u, m), mp.mpf(0), x, m
            )

        prev = None
        m = 8
        while m <= node_cap:
            est = level(n, r, m)
            if prev is not None:
                diff = abs(est - prev)
                if diff < tol:
                    return QuadResult(value=est, est_err=float(diff), nodes_used=m)
            prev = est
            m *= 2
        raise QuadFailure(f"no convergence to {tol} within {node_cap} nodes per level")
