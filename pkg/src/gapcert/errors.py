"""Exception hierarchy shared by every layer of the package."""


class GapcertError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDenominator(GapcertError, ValueError):
    """A rational was constructed or parsed with denominator zero."""


class NotClearable(GapcertError, ValueError):
    """No power of the given base clears a polynomial's denominators."""


class DivByZeroBall(GapcertError, ZeroDivisionError):
    """Division by a ball whose enclosure contains zero."""


class InvalidOrder(GapcertError, ValueError):
    """Series order is a negative integer, where the series is undefined."""


class IdentityViolation(GapcertError):
    """An exact identity that must hold failed; indicates an implementation bug."""


class DegenerateTruncation(GapcertError):
    """A continued-fraction truncation hit a zero intermediate denominator."""

    def __init__(self, level: int, message: str = ""):
        self.level = level
        super().__init__(message or f"zero denominator at truncation level {level}")


class QuadFailure(GapcertError):
    """Quadrature refinement did not converge within the node cap."""


class OutOfValidity(GapcertError, ValueError):
    """Argument outside the validity region of an integral representation."""


class Inconclusive(GapcertError):
    """A nonzero-ness check could not be certified at the precision cap.

    Theory guarantees the targeted quantities are nonzero for the inputs
    this package accepts, so hitting this in practice is a numerical
    health alarm rather than an expected outcome.
    """

    def __init__(self, message: str, prec_cap: int = 0):
        self.prec_cap = prec_cap
        super().__init__(message)


class ZeroDenominatorCos(Inconclusive):
    """cos could not be certified nonzero at the precision cap."""


class InconclusiveDenominator(Inconclusive):
    """The order-s Bessel value could not be certified nonzero at the cap."""


class NoWitnessFound(GapcertError):
    """No index up to n_max produced a certified gap; raise n_max or precision."""


class CertificateVerificationError(GapcertError):
    """A serialized certificate failed re-verification."""
