import typing
from dataclasses import dataclass

__all__ = [
    "ErrorInfo",
    "Violation",
    "NilcomplexError",
    "ParseError",
    "DomainError",
    "DimensionMismatchError",
    "NonHomogeneousError",
    "IntegrabilityError",
    "JacobiError",
    "NotAlmostComplexError",
    "NotPositiveError",
    "UnrepresentableError",
    "NoMatchError",
    "UnsupportedCaseError",
    "ConsistencyAlarm",
    "VerificationError",
    "AmbiguousMatchError",
]


@dataclass(frozen=True)
class ErrorInfo:
    """Error info.

    ErrorInfo is attached to a sweep row whose computation failed.
    """

    error: type
    value: str
    traceback: str


@dataclass(frozen=True)
class Violation:
    """A single failed integrability or Jacobi check.

    `generator` is the 1-based index of the (1,0)-form, `kind` is either
    "integrability" or "jacobi" and `bidegree` names the offending
    component of dω^generator (or of d²ω^generator).
    """

    generator: int
    kind: str
    bidegree: typing.Tuple[int, int]

    def __str__(self):
        p, q = self.bidegree
        return f"{self.kind} violated on w{self.generator} in bidegree ({p},{q})"


class NilcomplexError(Exception):
    """Generic base for nilcomplex errors."""


class ParseError(NilcomplexError):
    """Raised if a textual notation cannot be parsed.

    `position` is the 0-based offset of the offending character.
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position


class DomainError(NilcomplexError):
    """Raised if an input violates an invariant of its type or domain."""


class DimensionMismatchError(DomainError):
    """Raised if vectors or subspaces do not share an ambient dimension."""


class NonHomogeneousError(DomainError):
    """Raised if bidegree coordinates are requested for a mixed form."""


class IntegrabilityError(DomainError):
    """Raised if structure equations do not define a complex structure."""

    def __init__(self, violations: typing.Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class JacobiError(DomainError):
    """Raised if d² does not vanish on a generator."""

    def __init__(self, generator: int, message: str = ""):
        self.generator = generator
        super().__init__(message or f"d^2 e{generator} != 0")


class NotAlmostComplexError(DomainError):
    """Raised if a matrix does not square to minus the identity."""


class NotPositiveError(DomainError):
    """Raised if metric predicates are asked of a non-positive form."""


class UnrepresentableError(DomainError):
    """Raised if an exact result would need an irrational square root."""


class NoMatchError(DomainError):
    """Raised if no known algebra has the computed fingerprint."""


class UnsupportedCaseError(NilcomplexError):
    """Raised if the computation lies outside the implemented regime."""


class ConsistencyAlarm(NilcomplexError):
    """Raised if two independent computations disagree."""


class VerificationError(ConsistencyAlarm):
    """Raised if a constructed witness fails its verification."""


class AmbiguousMatchError(ConsistencyAlarm):
    """Raised if a fingerprint matches more than one algebra."""

    def __init__(self, candidates: typing.Sequence[typing.Any]):
        self.candidates = list(candidates)
        super().__init__(f"fingerprint matches {', '.join(map(str, self.candidates))}")


def exit_code(error: BaseException) -> int:
    """Process exit code for an error raised by the library."""
    if isinstance(error, ParseError):
        return 2
    if isinstance(error, ConsistencyAlarm):
        return 4
    if isinstance(error, (DomainError, UnsupportedCaseError)):
        return 3
    return 4


