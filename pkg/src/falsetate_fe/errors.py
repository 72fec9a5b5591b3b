"""Exception taxonomy.

The CLI maps these onto exit codes: precision problems exit 2, input
problems exit 3.  Identity failures are not exceptions; they are recorded
in the report and exit 1.
"""


class FalseTateError(Exception):
    """Base class for every error raised by this package."""


class PrecisionExhausted(FalseTateError):
    """The tracked p-adic precision is too small to decide the answer."""


class NotInvertible(FalseTateError, ZeroDivisionError):
    """Division by an element indistinguishable from zero."""


class LevelMismatch(FalseTateError, ValueError):
    pass


class QEqualsP(FalseTateError, ValueError):
    pass


class CompletenessFailure(FalseTateError):
    """Enumerated irreducibles do not account for the whole group order."""


class MissingCoefficient(FalseTateError, KeyError):
    pass


class UnsupportedPrime(FalseTateError, ValueError):
    pass


class DivisionByIndeterminate(FalseTateError, ZeroDivisionError):
    pass


class BadKummerBase(FalseTateError, ValueError):
    pass


class BadReduction(FalseTateError, ValueError):
    pass


class InputError(FalseTateError, ValueError):
    """Base for problems with user-supplied data files."""


class ParseError(InputError):
    pass


class SchemaViolation(InputError):
    pass


class InconsistentSpecialData(InputError):
    """a_q disagrees with delta_q * q^(k/2 - 1) at a prime of the level."""
