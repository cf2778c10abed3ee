"""Exception hierarchy.

Every exception carries a stable ``code`` string; the command line maps
these onto its JSON error object.
"""


class TeslerError(ValueError):
    code = "domain_error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ShapeMismatch(TeslerError):
    code = "shape_mismatch"


class IndexOutOfRange(TeslerError):
    code = "index_out_of_range"


class NegativeInput(TeslerError):
    code = "negative_input"


class NotAVertex(TeslerError):
    code = "not_a_vertex"


class NotAdjacent(TeslerError):
    code = "not_adjacent"


class ZeroRow(TeslerError):
    code = "zero_row"


class FormulaViolation(TeslerError):
    """Internal consistency failure of the edge-vector identity."""

    code = "formula_violation"


class NotInCone(TeslerError):
    code = "not_in_cone"


class Infeasible(TeslerError):
    code = "infeasible"


class PreconditionViolated(TeslerError):
    code = "precondition_violated"


class EmptyPolytope(TeslerError):
    code = "empty_polytope"


class UnboundedOrRankDeficient(TeslerError):
    code = "unbounded_or_rank_deficient"


class DimensionTooLarge(TeslerError):
    code = "dimension_too_large"


class SizeLimitExceeded(TeslerError):
    code = "size_limit_exceeded"


class InvalidInput(TeslerError):
    code = "invalid_input"
