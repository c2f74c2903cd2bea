from typing import TYPE_CHECKING, Tuple

if TYPE_CHECKING:
    from cubestoch_api.core import ValidationReport


class StochasticityError(Exception):
    """Error that gets raised if a grid fails a nonnegativity or sum
    condition while being admitted as one of the stochastic value types.

    Attributes:
        report: The [ValidationReport][cubestoch_api.core.ValidationReport]
            describing the first failure
    """

    def __init__(self, report: "ValidationReport"):
        """__init__ for StochasticityError.

        Args:
            report: The failed validation report
        """
        self.report = report
        super().__init__(report.describe())


class ShapeError(Exception):
    """Error that gets raised if arrays have the wrong shape, sizes do not
    match or an index is out of range."""

    def __init__(self, message: str):
        """__init__ for ShapeError.

        Args:
            message: Failure reason
        """
        super().__init__(message)


class DomainError(Exception):
    """Error that gets raised if a scalar parameter lies outside of its
    domain, e.g. a convex weight outside of [0, 1] or a power of 0."""

    def __init__(self, what: str, value: object, expected: str):
        """__init__ for DomainError.

        Args:
            what: Name of the offending parameter
            value: The offending value
            expected: Description of the admissible domain
        """
        self.what = what
        self.value = value
        super().__init__(f"{what} = {value!r} is invalid, expected {expected}")


class DocumentParseError(Exception):
    """Error that gets raised by the [document][cubestoch_api.document]
    module if a file can not be parsed."""

    def __init__(self, source: str, reason: str):
        """__init__ for DocumentParseError.

        Args:
            source: The file (or other source) that failed to parse
            reason: What went wrong
        """
        super().__init__(f"Could not parse {source}: {reason}")


class KindMismatchError(Exception):
    """Error that gets raised if a document holds a different kind of value
    than the one requested."""

    def __init__(self, source: str, found: str, expected: Tuple[str, ...]):
        """__init__ for KindMismatchError.

        Args:
            source: The file the document was read from
            found: The kind stored in the document
            expected: The kinds that would have been accepted
        """
        super().__init__(
            f"{source} holds a `{found}` document, expected one of {', '.join(expected)}"
        )


class ArgumentError(Exception):
    """Raised when command arguments do not fit together, e.g. an unknown
    multiplication rule or a flag that needs a partner flag."""

    def __init__(self, message: str):
        """__init__ for ArgumentError

        Args:
            message: Which argument was rejected and why
        """
        super().__init__(message)
