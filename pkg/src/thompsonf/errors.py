"""Exception hierarchy shared by every module."""


class ThompsonError(Exception):
    """Base class for errors raised by this package."""


class ParseError(ThompsonError, ValueError):
    """Text that none of the input grammars accepts."""


class StructureError(ThompsonError, ValueError):
    """Malformed input such as mismatched leaf counts."""


class DomainError(ThompsonError, ValueError):
    """The operation is undefined for this element, e.g. a non-positive one."""


class ResourceLimitError(ThompsonError, RuntimeError):
    """A configured cap was exceeded; ``partial`` holds what was computed."""

    def __init__(self, message: str, partial: dict | None = None) -> None:
        super().__init__(message)
        self.partial = partial or {}


class NumericError(ThompsonError, ArithmeticError):
    """An iterative numeric routine failed to converge."""


class VerificationError(ThompsonError, AssertionError):
    """A checked mathematical property did not hold."""
