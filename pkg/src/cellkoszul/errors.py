class KoszulToolError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class FieldError(KoszulToolError, ValueError):
    exit_code = 3


class ValidationError(KoszulToolError, ValueError):
    """Input does not describe a valid regular cell complex."""

    exit_code = 1


class HypothesisError(KoszulToolError):
    """The complex is not pure and connected through codimension-one faces."""

    exit_code = 2


class IllDefinedMapError(KoszulToolError, ArithmeticError):
    """A linear map does not descend to the requested quotients."""

    exit_code = 4


class DisagreementError(KoszulToolError, AssertionError):
    """Equivalent decision procedures returned different answers."""

    exit_code = 4

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BlowupError(KoszulToolError):
    """Word count in a graded computation exceeded the configured cap."""

    exit_code = 1


class ParseError(KoszulToolError, ValueError):
    exit_code = 3
