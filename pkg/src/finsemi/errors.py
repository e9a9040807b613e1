"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` so the command line
front end can map failures onto exit statuses without string matching.
"""

from __future__ import annotations


class FinsemiError(Exception):
    code = "error"
    exit_status = 1

    def __init__(self, message: str = "", *, witness: tuple[int, ...] = ()):
        super().__init__(message or self.code)
        self.witness = tuple(witness)


class InputError(FinsemiError):
    """Malformed or inconsistent input (bad tables, indices, kinds)."""

    code = "input-error"
    exit_status = 2


class MalformedTable(InputError):
    code = "malformed-table"


class MalformedPair(InputError):
    code = "malformed-pair"


class KindMismatch(InputError):
    code = "kind-mismatch"


class ShapeMismatch(KindMismatch):
    code = "shape-mismatch"


class InvalidSemimonoid(InputError):
    code = "invalid-semimonoid"


class BaseMismatch(InputError):
    code = "base-mismatch"


class MissingAction(InputError):
    code = "missing-action"


class UnknownFixture(InputError):
    code = "unknown-fixture"


class InvalidParameter(InputError):
    code = "invalid-parameter"


class IncompatiblePartition(InputError):
    code = "incompatible-partition"


class NotBalanced(InputError):
    code = "not-balanced"


class InvalidMorphism(InputError):
    code = "invalid-morphism"


class NotCancellative(InputError):
    code = "not-cancellative"


class NotFirm(InputError):
    """Raised when an operation needs ω_X (equivalently 𝔠_X) to be bijective."""

    code = "not-firm"


class NotUnital(NotFirm):
    code = "not-unital"


class ParseError(InputError):
    code = "syntax-error"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SemanticError(InputError):
    code = "semantic-error"


class SizeCapExceeded(FinsemiError):
    code = "size-cap-exceeded"
    exit_status = 3

    def __init__(self, required: int, cap: int, what: str = "carrier"):
        super().__init__(f"{what} needs {required} elements, cap is {cap}")
        self.required = required
        self.cap = cap


class IllDefined(FinsemiError):
    """A construction that should be well defined turned out not to be."""

    code = "ill-defined"


class CongruenceVerificationFailed(IllDefined):
    code = "congruence-verification-failed"


class FormulaDisagreement(IllDefined):
    code = "formula-disagreement"
