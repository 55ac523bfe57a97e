"""Measurable sets as approximation oracles over the interval algebra.

A :class:`MeasurableSet` never stores its points. It stores a modulus: a
function that, given a positive rational ``eps``, returns an algebra element
``B`` with ``d(B, S) <= eps`` for the ideal set ``S``. Every construction
here keeps that contract, and every numeric answer comes back as an exact
:class:`ErrorInterval` certified to contain the true value.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import interval_algebra as ia
from .errors import PreconditionError
from .interval_algebra import AlgebraElement

__all__ = [
    "MeasurableSet",
    "ErrorInterval",
    "TailBound",
    "embed",
    "approx",
    "limit_union",
    "limit_complement",
    "limit_intersect",
    "countable_union",
    "measure_with_error",
    "distance_between",
    "check_eps",
]


def check_eps(eps) -> Fraction:
    """Coerce ``eps`` to an exact positive rational or raise PreconditionError."""
    if isinstance(eps, float):
        raise TypeError("eps must be exact (int, Fraction or 'p/q' string), not float")
    if isinstance(eps, str):
        try:
            eps = ia.parse_rat(eps)
        except ValueError as exc:
            raise PreconditionError(str(exc)) from None
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    return eps


@dataclass(frozen=True)
class MeasurableSet:
    """An element of the completion, given by an eps-indexed approximant.

    ``approximant(eps)`` must return an algebra element within ``eps`` of the
    represented set. Two instances may represent the same class even though
    their oracles differ; compare them with :func:`distance_between`.
    """

    approximant: Callable[[Fraction], AlgebraElement]
    label: str = field(default="<oracle>", compare=False)

    def __call__(self, eps) -> AlgebraElement:
        return approx(self, eps)

    def __repr__(self):
        return f"MeasurableSet({self.label})"


@dataclass(frozen=True)
class ErrorInterval:
    """Closed rational interval ``[lo, hi]`` certified to contain a true value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty error interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    __contains__ = contains

    def overlaps(self, other: "ErrorInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "ErrorInterval") -> "ErrorInterval":
        return ErrorInterval(self.lo + other.lo, self.hi + other.hi)

    def __str__(self):
        return f"[{ia.format_rat(self.lo)}, {ia.format_rat(self.hi)}]"


class TailBound:
    """Caller-supplied rate for the tail of a countable family.

    ``bound_at(L)`` returns ``N_L`` such that the measures of members past
    ``N_L`` sum to at most ``1/(2L)``. The raw function need not be
    monotone; the running maximum is returned instead, which only makes the
    tail smaller.
    """

    def __init__(self, raw: Callable[[int], int]):
        self._raw = raw
        self._prefix_max = [0]
        self._lock = threading.Lock()

    def bound_at(self, L: int) -> int:
        if L < 1:
            raise PreconditionError(f"L must be a positive integer, got {L}")
        with self._lock:
            pm = self._prefix_max
            while len(pm) <= L:
                n = int(self._raw(len(pm)))
                if n < 1:
                    raise PreconditionError(f"tail bound must be a positive integer, got {n}")
                pm.append(max(pm[-1], n))
            return pm[L]

    __call__ = bound_at


def embed(a: AlgebraElement) -> MeasurableSet:
    """The constant oracle for an algebra element."""
    return MeasurableSet(lambda eps: a, label=ia.to_text(a, ascii=True) if len(a) <= 4 else "embed(...)")


def approx(s: MeasurableSet, eps) -> AlgebraElement:
    """An algebra element within ``eps`` of ``s``."""
    return s.approximant(check_eps(eps))


def limit_union(s1: MeasurableSet, s2: MeasurableSet) -> MeasurableSet:
    def approximant(eps):
        half = eps / 2
        return ia.union(approx(s1, half), approx(s2, half))

    return MeasurableSet(approximant, label=f"({s1.label} | {s2.label})")


def limit_complement(s: MeasurableSet) -> MeasurableSet:
    # complement is an isometry for d, so the precision passes through unchanged
    return MeasurableSet(lambda eps: ia.complement(approx(s, eps)), label=f"!{s.label}")


def limit_intersect(s1: MeasurableSet, s2: MeasurableSet) -> MeasurableSet:
    """Intersection, built from union and complement by De Morgan."""
    out = limit_complement(limit_union(limit_complement(s1), limit_complement(s2)))
    return MeasurableSet(out.approximant, label=f"({s1.label} & {s2.label})")


def countable_union(family: Callable[[int], MeasurableSet], tail: TailBound) -> MeasurableSet:
    """Union of ``family(1), family(2), ...`` via the diagonal construction.

    For precision ``eps`` take ``L = ceil(1/eps)`` and ``N = tail(L)``; the
    approximant is the union of the first ``N`` members, each approximated
    to ``1/(2 L N)``. The members' errors add up to at most ``1/(2L)`` and
    the discarded tail contributes at most ``1/(2L)``, so the result is
    within ``1/L <= eps``.

    Disjointness is not required. A ``tail`` that understates the tail
    silently breaks the oracle contract.
    """
    if not isinstance(tail, TailBound):
        tail = TailBound(tail)

    def approximant(eps):
        L = max(1, math.ceil(1 / eps))
        n = tail.bound_at(L)
        inner = Fraction(1, 2 * L * n)
        acc = ia.EMPTY
        for i in range(1, n + 1):
            acc = ia.union(acc, approx(family(i), inner))
        return acc

    return MeasurableSet(approximant, label="countable_union(...)")


def measure_with_error(s: MeasurableSet, eps) -> ErrorInterval:
    """Certified enclosure of the measure of ``s``, of width exactly ``2*eps``.

    For any B in the algebra, ``|mu*(S) - mu(B)| <= d(B, S)``, so the
    premeasure of an eps-approximant is off by at most eps.
    """
    eps = check_eps(eps)
    m = ia.premeasure(approx(s, eps))
    return ErrorInterval(m - eps, m + eps)


def distance_between(s1: MeasurableSet, s2: MeasurableSet, eps) -> ErrorInterval:
    """Certified enclosure of the pseudometric distance between two oracles."""
    eps = check_eps(eps)
    half = eps / 2
    d = ia.distance(approx(s1, half), approx(s2, half))
    return ErrorInterval(d - eps, d + eps)
