"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` so the HTTP service
and the CLI can map failures without string matching.
"""


class ConcordError(Exception):
    """Base class for all library errors."""

    code = "error"


class OutOfRangeError(ConcordError):
    code = "out_of_range"


class InvalidBitsError(ConcordError):
    code = "invalid_bits"


class DimensionTooLargeError(ConcordError):
    code = "dimension_too_large"


class InvalidLabelError(ConcordError):
    code = "invalid_label"


class InvalidSignatureError(ConcordError):
    code = "invalid_signature"


class InvalidWeightsError(ConcordError):
    code = "invalid_weights"


class NotAttainableError(ConcordError):
    """A fully specified even signature solves to negative mixture weights."""

    code = "not_attainable"

    def __init__(self, message, weights=None):
        super().__init__(message)
        self.weights = weights


class SingularSystemError(ConcordError):
    code = "singular_system"


class InfeasibleError(ConcordError):
    """A partial signature admits no nonnegative weight solution."""

    code = "infeasible"

    def __init__(self, message, phase1_objective=None):
        super().__init__(message)
        self.phase1_objective = phase1_objective


class EmptyTargetsError(ConcordError):
    code = "empty_targets"


class NumericalFailureError(ConcordError):
    code = "numerical_failure"


class InvalidMatrixError(ConcordError):
    code = "invalid_matrix"


class DegenerateMarginError(ConcordError):
    code = "degenerate_margin"


class TiesPresentError(ConcordError):
    code = "ties_present"


class TooFewRowsError(ConcordError):
    code = "too_few_rows"


class MalformedCsvError(ConcordError):
    code = "malformed_csv"


class NonPositivePriceError(ConcordError):
    code = "non_positive_price"


class RaggedRowsError(ConcordError):
    code = "ragged_rows"


class ThetaOutOfRangeError(ConcordError):
    code = "theta_out_of_range"


class SchemaError(ConcordError):
    """A JSON document does not match the shared schemas."""

    code = "malformed_document"


class UnknownSessionError(ConcordError):
    code = "unknown_session"


class ConstraintRejectedError(ConcordError):
    """Adding the constraint would make the session infeasible."""

    code = "constraint_rejected"

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
