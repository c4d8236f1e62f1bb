"""Shared exception types."""


class TtgError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TtgError):
    """Malformed user input: parse failures, ring mismatches, schema violations."""


class HomogeneityError(InputError):
    """A polynomial, matrix entry or relation violates the graded degree rule."""


class CertificateError(TtgError):
    """A prime-point certificate (regular sequence, local generation) failed."""
