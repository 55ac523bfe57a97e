"""Finite unions of half-open rational intervals in [0, 1) with Lebesgue length.

An :class:`AlgebraElement` is stored as a boundary array on a common
denominator: the set ``[x0/D, x1/D) u [x2/D, x3/D) u ...`` is held as the
strictly increasing integer array ``(x0, x1, x2, ...)`` together with ``D``.
Canonical form also requires ``gcd(x0, x1, ..., D) == 1`` so that two
elements denote the same set exactly when their arrays and denominators are
equal. Strictly increasing boundaries rule out empty and adjacent intervals
automatically.

All arithmetic is exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .errors import RangeError

Rat = Fraction

__all__ = [
    "Rat",
    "Interval",
    "AlgebraElement",
    "EMPTY",
    "FULL",
    "normalize",
    "union",
    "intersect",
    "complement",
    "sym_diff",
    "difference",
    "is_subset",
    "premeasure",
    "distance",
    "to_text",
    "from_text",
    "format_rat",
    "parse_rat",
]


def _as_rat(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point endpoints are not accepted; use Fraction or a 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[lo, hi)``; empty when ``lo >= hi``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _as_rat(self.lo), _as_rat(self.hi)
        for x in (lo, hi):
            if not 0 <= x <= 1:
                raise RangeError(f"endpoint {x} outside [0, 1]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_empty(self) -> bool:
        return self.lo >= self.hi

    @property
    def length(self) -> Fraction:
        return max(self.hi - self.lo, Fraction(0))


def _pick_dtype(den: int):
    return np.int64 if den < _kernels.INT64_SAFE else object


def _gcd_all(values: np.ndarray, den: int) -> int:
    if values.size == 0:
        return den
    if values.dtype == np.int64:
        return math.gcd(int(np.gcd.reduce(values)), den)
    return reduce(math.gcd, (int(v) for v in values), den)


class AlgebraElement:
    """A canonical finite union of half-open intervals in [0, 1).

    Instances are immutable. Build them with :func:`normalize` or the set
    operations below rather than by calling the constructor directly.
    """

    __slots__ = ("_bounds", "_den", "_hash")

    def __init__(self, bounds: np.ndarray, den: int):
        # trusted constructor: bounds strictly increasing, even length, in [0, den]
        den = int(den)
        if bounds.size == 0:
            bounds = np.zeros(0, dtype=np.int64)
            den = 1
        else:
            g = _gcd_all(bounds, den)
            if g > 1:
                bounds = bounds // g
                den //= g
            dtype = _pick_dtype(den)
            if bounds.dtype != dtype:
                bounds = np.array([int(v) for v in bounds], dtype=dtype)
        bounds.flags.writeable = False
        self._bounds = bounds
        self._den = den
        self._hash = None

    @property
    def bounds(self) -> np.ndarray:
        """Read-only boundary array in units of ``1/den``."""
        return self._bounds

    @property
    def den(self) -> int:
        return self._den

    @property
    def intervals(self) -> list[Interval]:
        b, d = self._bounds, self._den
        return [Interval(Fraction(int(b[i]), d), Fraction(int(b[i + 1]), d)) for i in range(0, b.size, 2)]

    def __len__(self) -> int:
        return self._bounds.size // 2

    def __bool__(self) -> bool:
        return self._bounds.size > 0

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._den == other._den and np.array_equal(self._bounds, other._bounds)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._den, tuple(int(v) for v in self._bounds)))
        return self._hash

    def __repr__(self):
        if len(self) > 8:
            return f"AlgebraElement(<{len(self)} intervals, den={self._den}>)"
        return f"AlgebraElement({to_text(self, ascii=True)!r})"

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __xor__(self, other):
        return sym_diff(self, other)

    def __invert__(self):
        return complement(self)

    def is_canonical(self) -> bool:
        """Re-check every representation invariant; used by the tests."""
        b, d = self._bounds, self._den
        if b.size % 2 or d < 1:
            return False
        if b.size == 0:
            return d == 1
        if int(b[0]) < 0 or int(b[-1]) > d:
            return False
        if b.size > 1 and not all(int(b[i]) < int(b[i + 1]) for i in range(b.size - 1)):
            return False
        return _gcd_all(b, d) == 1


EMPTY = AlgebraElement(np.zeros(0, dtype=np.int64), 1)
FULL = AlgebraElement(np.array([0, 1], dtype=np.int64), 1)

IntervalLike = Union[Interval, Sequence]


def normalize(raw: Iterable[IntervalLike]) -> AlgebraElement:
    """Canonical element denoting the union of the given intervals.

    Entries may be :class:`Interval` objects or ``(lo, hi)`` pairs of
    rationals. Empty intervals are dropped; an endpoint outside [0, 1]
    raises :class:`RangeError`.
    """
    ivs = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in raw]
    ivs = [iv for iv in ivs if not iv.is_empty]
    if not ivs:
        return EMPTY
    den = reduce(math.lcm, (x.denominator for iv in ivs for x in (iv.lo, iv.hi)), 1)
    pairs = sorted((int(iv.lo * den), int(iv.hi * den)) for iv in ivs)
    merged = [list(pairs[0])]
    for lo, hi in pairs[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    flat = [x for pair in merged for x in pair]
    return AlgebraElement(np.array(flat, dtype=_pick_dtype(den)), den)


def _common(a: AlgebraElement, b: AlgebraElement):
    den = math.lcm(a.den, b.den)
    dtype = _pick_dtype(den)

    def scaled(x: AlgebraElement):
        f = den // x.den
        arr = x.bounds
        if dtype is object:
            return np.array([int(v) * f for v in arr], dtype=object)
        return arr * f if f != 1 else arr

    return scaled(a), scaled(b), den


def _apply(a: AlgebraElement, b: AlgebraElement, op: int) -> AlgebraElement:
    xa, xb, den = _common(a, b)
    return AlgebraElement(_kernels.combine(xa, xb, op), den)


def union(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return _apply(a, b, _kernels.OR)


def intersect(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return _apply(a, b, _kernels.AND)


def sym_diff(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return _apply(a, b, _kernels.XOR)


def difference(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``a`` minus ``b``."""
    return _apply(a, b, _kernels.ANDNOT)


def complement(a: AlgebraElement) -> AlgebraElement:
    """``[0, 1) \\ a``."""
    return _apply(FULL, a, _kernels.ANDNOT)


def is_subset(a: AlgebraElement, b: AlgebraElement) -> bool:
    return not difference(a, b)


def premeasure(a: AlgebraElement) -> Fraction:
    """Total length of ``a``."""
    b = a.bounds
    if b.size == 0:
        return Fraction(0)
    # summing differences keeps every partial sum within [0, den]
    total = (b[1::2] - b[0::2]).sum()
    return Fraction(int(total), a.den)


def distance(a: AlgebraElement, b: AlgebraElement) -> Fraction:
    """Length of the symmetric difference of ``a`` and ``b``."""
    return premeasure(sym_diff(a, b))


# ---------------------------------------------------------------------------
# text form


_RAT_RE = re.compile(r"([+-]?[0-9]+)(?:/([0-9]+))?")


def format_rat(x: Fraction) -> str:
    """``p/q`` in lowest terms, always with an explicit denominator."""
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    """Parse ``p/q`` or a bare integer, rejecting decimals and floats."""
    m = _RAT_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    q = int(m.group(2) or 1)
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


def to_text(a: AlgebraElement, ascii: bool = False) -> str:
    """Canonical one-line serialization, e.g. ``"0/1,1/4 1/2,3/4"``."""
    if not a:
        return "empty" if ascii else "∅"
    b, d = a.bounds, a.den
    return " ".join(
        f"{format_rat(Fraction(int(b[i]), d))},{format_rat(Fraction(int(b[i + 1]), d))}"
        for i in range(0, b.size, 2)
    )


def from_text(text: str) -> AlgebraElement:
    """Inverse of :func:`to_text`; also accepts non-canonical input."""
    text = text.strip()
    if text in ("∅", "empty"):
        return EMPTY
    pairs = []
    for seg in text.split():
        lo, sep, hi = seg.partition(",")
        if not sep:
            raise ValueError(f"malformed interval segment {seg!r}")
        pairs.append((parse_rat(lo), parse_rat(hi)))
    return normalize(pairs)
