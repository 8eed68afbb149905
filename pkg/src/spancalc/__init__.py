"""Spans of finite groupoids, exact linearization and 1-dimensional field theories."""

from .errors import (
    BadObjectIndex, BaseMismatch, DescentFailure, DimensionMismatch, InvariantViolation,
    LeftLegNotMono, LengthMismatch, MismatchedBoundary, MismatchedCodomain, NonConstantScalar,
    NotAGroup, NotDiscrete, ParseError, SearchBudgetExceeded, SpanCalcError,
)
from .matrix import RatMatrix, format_rational, parse_rational
from .groupoid import (
    FiniteGroupoid, GroupoidFunctor, NaturalIso, action_groupoid, cardinality, delooping, discrete,
    disjoint_union, homotopy_fiber, inertia, is_equivalence, iso_comma, product, quasi_inverse,
    skeleton, terminal, truncation_level,
)
from .equivalence import are_equivalent, find_equivalence
from .local_systems import LSMap, LocalSystem, dual_local_system, restrict, tensor_systems, trivial_system
from .span import (
    Span, compose, dual_span, from_map, identity_span, is_invertible, member_of, spans_equivalent,
    tensor, to_pointed_map, verify_self_duality,
)
from .linearize import (
    NormReport, colimit_ls, integrate, limit_ls, linearize_span, norm_map, trace_form,
)
from .tft import (
    DecoratedObject, DecoratedSpan, counit_scalar, decorated_compose, decorated_equivalent,
    decorated_tensor, dual_data, quantize_circle, quantize_object, verify_duality,
)
from .serialize import dump, dumps, load_document, parse_document

__version__ = "0.1.0"
