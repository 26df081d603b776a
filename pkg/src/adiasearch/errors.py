"""Exception hierarchy.

Every domain error carries a stable machine-readable ``code`` that the CLI
reports on stderr and inside JSON documents.
"""

from __future__ import annotations


class AdiaSearchError(Exception):
    """Base class for all domain errors raised by the package."""

    code = "DOMAIN_ERROR"


class ParameterOutOfRange(AdiaSearchError, ValueError):
    code = "PARAMETER_OUT_OF_RANGE"


class UnknownFamily(AdiaSearchError, ValueError):
    code = "UNKNOWN_FAMILY"


class MalformedEdgeList(AdiaSearchError, ValueError):
    code = "MALFORMED_EDGE_LIST"


class VertexOutOfRange(AdiaSearchError, ValueError):
    code = "VERTEX_OUT_OF_RANGE"


class GraphValidationError(AdiaSearchError, ValueError):
    code = "INVALID_GRAPH"


class NotSymmetric(GraphValidationError):
    code = "NOT_SYMMETRIC"


class SelfLoop(GraphValidationError):
    code = "SELF_LOOP"


class NotRegular(GraphValidationError):
    code = "NOT_REGULAR"


class NotConnected(GraphValidationError):
    code = "NOT_CONNECTED"


class IndexOutOfRange(AdiaSearchError, IndexError):
    code = "INDEX_OUT_OF_RANGE"


class DimensionMismatch(AdiaSearchError, ValueError):
    code = "DIMENSION_MISMATCH"


class DegenerateLevels(AdiaSearchError, ArithmeticError):
    code = "DEGENERATE_LEVELS"


class DomainError(AdiaSearchError, ValueError):
    code = "DOMAIN_ERROR"


class NegativeDiscriminant(AdiaSearchError, ArithmeticError):
    code = "NEGATIVE_DISCRIMINANT"


class ZeroDenominator(AdiaSearchError, ArithmeticError):
    code = "ZERO_DENOMINATOR"


class NonPositiveGap(AdiaSearchError, ArithmeticError):
    code = "NON_POSITIVE_GAP"


class NormDriftExceeded(AdiaSearchError, ArithmeticError):
    code = "NORM_DRIFT_EXCEEDED"


class TooLarge(AdiaSearchError, ValueError):
    code = "TOO_LARGE"


class NumericalInconsistency(AdiaSearchError, ArithmeticError):
    """Two independent numerical routes disagree beyond tolerance."""

    code = "NUMERICAL_INCONSISTENCY"


#: Every code a caller may see, for documentation and schema purposes.
ERROR_CODES = sorted(
    {
        cls.code
        for cls in (
            AdiaSearchError,
            ParameterOutOfRange,
            UnknownFamily,
            MalformedEdgeList,
            VertexOutOfRange,
            GraphValidationError,
            NotSymmetric,
            SelfLoop,
            NotRegular,
            NotConnected,
            IndexOutOfRange,
            DimensionMismatch,
            DegenerateLevels,
            DomainError,
            NegativeDiscriminant,
            ZeroDenominator,
            NonPositiveGap,
            NormDriftExceeded,
            TooLarge,
            NumericalInconsistency,
        )
    }
    | {"USAGE_ERROR", "IO_ERROR"}
)
