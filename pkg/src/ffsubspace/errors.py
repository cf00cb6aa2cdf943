"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class ZeroElement(ToolkitError):
    """An operation that needs a nonzero field element received zero."""


class ZeroPolynomial(ToolkitError):
    """An operation that needs a nonzero polynomial received zero."""


class DegreeMismatch(ToolkitError):
    pass


class VarCountMismatch(ToolkitError):
    pass


class NotHomogeneous(ToolkitError):
    pass


class ParseError(ToolkitError):
    """Syntax error in polynomial / rational-function / place text.

    Carries the 0-based character position of the offending token.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PointOnDivisor(ToolkitError):
    """Weil-function input lies on the divisor (Q(x) = 0)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DependentSpan(ToolkitError):
    pass


class DivisorInIdeal(ToolkitError):
    pass


class BaseLocusPoint(ToolkitError):
    pass


class NoCertificateWithinCap(ToolkitError):
    """No Nullstellensatz certificate exists up to the configured exponent cap."""


class MissingTableEntry(ToolkitError):
    pass


class PreconditionViolated(ToolkitError):
    pass


class SchemaError(ToolkitError):
    """Scenario file violates the JSON schema; points at the bad node."""

    def __init__(self, message, json_pointer):
        super().__init__(f"{message} (at {json_pointer or '/'})")
        self.json_pointer = json_pointer
