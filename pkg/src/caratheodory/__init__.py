"""Constructive Carathéodory extension over finite unions of rational intervals.

Measurable sets are represented by approximation oracles over the algebra
of finite unions of half-open rational intervals in [0, 1), and their
measures are returned as exact, certified error intervals.
"""

from .errors import (
    CaratheodoryError,
    DomainError,
    PreconditionError,
    RangeError,
    ResourceError,
    SpecError,
)
from .interval_algebra import (
    EMPTY,
    FULL,
    AlgebraElement,
    Interval,
    complement,
    distance,
    from_text,
    intersect,
    normalize,
    premeasure,
    sym_diff,
    to_text,
    union,
)
from .limit_points import (
    ErrorInterval,
    MeasurableSet,
    TailBound,
    approx,
    countable_union,
    distance_between,
    embed,
    limit_complement,
    limit_intersect,
    limit_union,
    measure_with_error,
)
from .cantor import cantor3, cantor3_stage, dyadictail, fatcantor, svc_stage
from .set_dsl import eval_expr, evaluate, parse, to_source

__version__ = "0.1.0"
