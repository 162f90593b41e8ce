"""Named errors raised by the workbench modules.

Every error carries a stable ``code`` that the command line front end echoes in its
JSON error report.
"""

from typing import Any, Optional


class WorkbenchError(Exception):
    """Base class of every domain error."""

    code = "workbench_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


# logic-core

class FormulaSyntaxError(WorkbenchError):
    """Surface text does not conform to the formula grammar."""

    code = "syntax_error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(f"{message} (line {line}, column {column})", line=line, column=column)
        self.line = line
        self.column = column


class ArityMismatchError(WorkbenchError):
    code = "arity_mismatch"

    def __init__(self, variable: str, expected: int, found: int):
        super().__init__(
            f"relation variable {variable!r} used with arity {found}, expected {expected}",
            variable=variable, expected=expected, found=found)
        self.variable = variable


class SchemaError(WorkbenchError):
    """Malformed schema instantiation request (e.g. the bound relation occurs free)."""

    code = "schema_error"


class ClassificationViolation(WorkbenchError):
    code = "classification_violation"

    def __init__(self, side: str, found: str, allowed: str):
        super().__init__(
            f"{side} classifies {found}, schema requires {allowed}",
            side=side, found=found, allowed=allowed)
        self.side = side


# eval-finite

class UnassignedVariable(WorkbenchError):
    code = "unassigned_variable"

    def __init__(self, name: str):
        super().__init__(f"free variable {name!r} has no assignment", variable=name)
        self.name = name


class AbstractionUndefined(WorkbenchError):
    code = "abstraction_undefined"

    def __init__(self, subset: Any):
        super().__init__(f"abstraction applied outside its domain: {sorted(subset)}",
                         set=sorted(subset))
        self.subset = subset


class PreconditionViolation(WorkbenchError):
    code = "precondition_violation"

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}", precondition=name)
        self.name = name


class SizeLimitExceeded(WorkbenchError):
    code = "size_limit_exceeded"


# poly

class ZeroPolynomialError(WorkbenchError):
    code = "zero_polynomial"


class ConstantPolynomialError(WorkbenchError):
    code = "constant_polynomial"


class RefinementLimitExceeded(WorkbenchError):
    code = "refinement_limit_exceeded"


# acf / rcf

class UnsupportedShape(WorkbenchError):
    code = "unsupported_shape"


class InvariantMismatch(WorkbenchError):
    code = "invariant_mismatch"


# interp

class AbstractionTranslationError(WorkbenchError):
    """Extension terms cannot be translated into the arithmetic language."""

    code = "abstraction_term"


class PairingRangeError(WorkbenchError):
    code = "pairing_out_of_range"


class IotaConstantsError(WorkbenchError):
    code = "iota_constants_equal"


class RepresentativeSelectionError(WorkbenchError):
    code = "representative_selection"


# canonical-hp

class HumeViolation(WorkbenchError):
    code = "hume_violation"


# cli

class UsageError(WorkbenchError):
    code = "usage_error"
