"""gapcert: certified irrationality gaps for r*tan(r) and Bessel ratios.

The package turns the classical remainder recurrences behind these
irrationality proofs into machine-checkable artifacts: exact integer
witnesses paired with ball enclosures whose separation yields a positive
rational lower bound on |target - p/q|.  A FastAPI service exposes every
operation; the CLI is a thin client over the same handlers.
"""

__version__ = "0.1.0"

from .balls import Ball, ball_arith
from .bessel import (
    bessel_cert,
    bessel_decay_table,
    bessel_ratio,
    bessel_remainder_value,
    check_bessel_coeff_identities,
    lemma1_check,
    nonzero_J,
    ratio_cf_convergent,
)
from .certify import (
    GapCertificate,
    bessel_gap_certificate,
    certificate_to_dict,
    certificate_to_json,
    contradiction_trace,
    tan_gap_certificate,
    verify_certificate,
)
from .exact import RatPoly, Rational, format_rational, parse_rational, poly_combine, poly_eval, rat_normalize
from .lambert import (
    check_series_relations,
    decay_table,
    niven_H,
    remainder_value,
    tan_cert,
    tan_convergent,
)
from .quadrature import hermite_integral, iterated_remainder, poisson_integral
from .series import eval_C, eval_N, eval_S, pi_ball

__all__ = [
    "Ball",
    "GapCertificate",
    "RatPoly",
    "Rational",
    "ball_arith",
    "bessel_cert",
    "bessel_decay_table",
    "bessel_gap_certificate",
    "bessel_ratio",
    "bessel_remainder_value",
    "certificate_to_dict",
    "certificate_to_json",
    "check_bessel_coeff_identities",
    "check_series_relations",
    "contradiction_trace",
    "decay_table",
    "eval_C",
    "eval_N",
    "eval_S",
    "format_rational",
    "hermite_integral",
    "iterated_remainder",
    "lemma1_check",
    "niven_H",
    "nonzero_J",
    "parse_rational",
    "pi_ball",
    "poisson_integral",
    "poly_combine",
    "poly_eval",
    "rat_normalize",
    "ratio_cf_convergent",
    "remainder_value",
    "tan_cert",
    "tan_convergent",
    "tan_gap_certificate",
    "verify_certificate",
]
