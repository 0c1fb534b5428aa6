"""
Exception hierarchy shared by the algebra modules and the command line.

Every error carries a machine-readable ``code`` and the process exit status
the CLI reports for it: 1 for invalid input, 2 for exceeded resource caps,
3 for failed ``--expect`` assertions and 4 for internal inconsistencies.
"""

from typing import Any, Dict, Optional


class RankExtError(Exception):
    """Base class for every error raised by rankext."""

    code: str = "error"
    exit_status: int = 1

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"code": self.code, "detail": self.detail}
        if self.context:
            payload["context"] = self.context
        return payload


class InputError(RankExtError):
    """Input or validation error (exit status 1)."""

    code = "invalid-input"
    exit_status = 1


class ResourceError(RankExtError):
    """A desk-scale resource cap was exceeded (exit status 2)."""

    code = "resource-cap"
    exit_status = 2


class InternalError(RankExtError):
    """A proven invariant failed; signals a bug or a corrupted witness."""

    code = "internal"
    exit_status = 4


class ExpectationFailed(RankExtError):
    code = "expectation-failed"
    exit_status = 3


# Fields
class NotPrime(InputError):
    code = "not-prime"


class ReducibleModulus(InputError):
    code = "reducible-modulus"


class InvalidModulus(InputError):
    code = "invalid-modulus"


class UnsupportedField(InputError):
    code = "unsupported-field"


class FieldTooLarge(InputError):
    code = "field-too-large"


class DivisionByZero(InputError):
    code = "division-by-zero"


# Matrices and codes
class DimensionMismatch(InputError):
    code = "dimension-mismatch"


class FieldMismatch(InputError):
    code = "field-mismatch"


class AmbientMismatch(InputError):
    code = "ambient-mismatch"


class SearchSpaceTooLarge(ResourceError):
    code = "search-space-too-large"


class CodeTooLarge(ResourceError):
    code = "code-too-large"


class ZeroCode(InputError):
    code = "zero-code"


# Maps
class InconsistentAssignment(InputError):
    code = "inconsistent-assignment"


class NotInjective(InputError):
    code = "not-injective"


# Paths
class NotInSupport(InputError):
    code = "not-in-support"


class NotOnClosedSimplePath(InputError):
    code = "not-on-closed-simple-path"


class NotClosedSimple(InputError):
    code = "not-closed-simple"


class NoDropValue(InternalError):
    code = "no-drop-value"


class InvariantViolation(InternalError):
    code = "invariant-violation"


# Extensions
class NotIrreducible(InputError):
    code = "not-irreducible"


class ZeroScalar(InputError):
    code = "zero-scalar"


class NotAnIsometry(InputError):
    """The elementary assignment is inconsistent, so the map is no isometry."""

    code = "not-an-isometry"

    def __init__(
        self,
        detail: str,
        position: Optional[tuple] = None,
        expected: Optional[int] = None,
        found: Optional[int] = None,
    ):
        super().__init__(
            detail,
            position=list(position) if position is not None else None,
            expected=expected,
            found=found,
        )
        self.position = position
        self.expected = expected
        self.found = found


class WrongField(InputError):
    code = "wrong-field"


class NotRankOneGenerated(InputError):
    code = "not-rank-one-generated"


class WitnessInvalid(InputError):
    code = "witness-invalid"


class VerificationFailed(InternalError):
    code = "verification-failed"


# Fixtures
class UnknownFixture(InputError):
    code = "unknown-fixture"


class UnsupportedParams(InputError):
    code = "unsupported-params"


class SearchExhausted(InternalError):
    code = "search-exhausted"
