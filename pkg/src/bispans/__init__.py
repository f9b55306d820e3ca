"""Spans and bispans of finite sets and finite G-sets, with semiring and
Tambara-functor evaluation."""
from .context import (
    CompositionError,
    Mor,
    Obj,
    SearchLimitExceeded,
    are_isomorphic,
    check_universal_property,
    compose,
    coproduct,
    dependent_product,
    finite_set,
    pullback,
)
from .bispan import Bispan, bispan_isomorphic, compose_bispans, identity_bispan
from .span import Span, compose_spans, identity_span, span_isomorphic

__version__ = "0.1.0"
