"""Exception hierarchy.

Input-contract failures derive from ``InputError`` (a ``ValueError``); the CLI
maps those to exit code 2. ``TheoryViolation`` means an exact computation
disagreed with a proven statement and is treated as a verification failure.
"""


class QFormsError(Exception):
    """Base class for every error raised by this package."""


class InputError(QFormsError, ValueError):
    pass


class InvalidModulus(InputError):
    pass


class UndefinedInput(InputError):
    pass


class NoInverse(InputError):
    pass


class CoprimalityViolation(InputError):
    pass


class InvalidInput(InputError):
    pass


class DegenerateInput(InputError):
    pass


class InvalidExponent(InputError):
    pass


class PreconditionViolation(InputError):
    pass


class CharacterizationFails(PreconditionViolation):
    """The exponent n does not divide p - 1, so no witness exists."""


class NotADivisor(PreconditionViolation):
    pass


class NotAWitness(PreconditionViolation):
    pass


class EffortExceeded(QFormsError):
    """Factoring gave up before reaching a complete factorization."""


class TheoryViolation(QFormsError):
    """An exact check contradicted a theorem. Should never fire."""


class TableMismatch(QFormsError):
    pass
