"""Exception hierarchy shared by every module of the package."""


class SpanCalcError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class InvariantViolation(SpanCalcError):
    code = "invariant_violation"

    def __init__(self, axiom, detail="", path=""):
        self.axiom = axiom
        self.detail = detail
        self.path = path
        where = f" at {path}" if path else ""
        super().__init__(f"{axiom}{where}: {detail}" if detail else f"{axiom}{where}")

    def to_json(self):
        return {"error": self.code, "axiom": self.axiom, "path": self.path,
                "message": str(self)}


class NotAGroup(InvariantViolation):
    code = "not_a_group"


class ParseError(SpanCalcError):
    code = "parse_error"

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{message} (at {path})" if path else message)

    def to_json(self):
        return {"error": self.code, "path": self.path, "message": str(self)}


class MismatchedCodomain(SpanCalcError):
    code = "mismatched_codomain"


class MismatchedBoundary(SpanCalcError):
    code = "mismatched_boundary"


class BadObjectIndex(SpanCalcError):
    code = "bad_object_index"


class SearchBudgetExceeded(SpanCalcError):
    code = "search_budget_exceeded"


class BaseMismatch(SpanCalcError):
    code = "base_mismatch"


class DimensionMismatch(SpanCalcError):
    code = "dimension_mismatch"


class LengthMismatch(SpanCalcError):
    code = "length_mismatch"


class DescentFailure(SpanCalcError):
    code = "descent_failure"


class NonConstantScalar(SpanCalcError):
    code = "non_constant_scalar"


class NotDiscrete(SpanCalcError):
    code = "not_discrete"


class LeftLegNotMono(SpanCalcError):
    code = "left_leg_not_mono"
