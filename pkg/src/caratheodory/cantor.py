"""Cantor-type fixtures with exact approximation moduli.

* ``cantor3``: the middle-thirds set, measure 0. Stage ``n`` keeps ``2**n``
  intervals of length ``3**-n`` and lies within ``(2/3)**n`` of the limit.
* ``fatcantor``: the Smith-Volterra-Cantor set. Stage ``k`` removes the
  open middle of length ``4**-k`` from each of the ``2**(k-1)`` surviving
  intervals. Stage ``n`` has measure ``1/2 + 2**-(n+1)`` and lies within
  ``2**-(n+1)`` of the limit, whose measure is 1/2.
* ``dyadictail``: the countable union of ``[2**-i, 2**-(i-1))``, i.e.
  ``(0, 1)``, with the tail bound ``N_L = ceil(log2(2L))``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import interval_algebra as ia
from .errors import ResourceError
from .interval_algebra import AlgebraElement
from .limit_points import MeasurableSet, TailBound, countable_union, embed

CANTOR3_MAX_STAGE = 40
SVC_MAX_STAGE = 20


def _interleave(starts: np.ndarray, length: int) -> np.ndarray:
    out = np.empty(2 * starts.size, dtype=starts.dtype)
    out[0::2] = starts
    out[1::2] = starts + length
    return out


def _children(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # each parent interval yields a left and a right child, kept in order
    return np.stack((left, right), axis=1).ravel()


@lru_cache(maxsize=16)
def cantor3_stage(n: int) -> AlgebraElement:
    """The ``2**n`` closed-open middle-thirds intervals left after ``n`` steps."""
    if n < 0:
        raise ValueError(f"stage must be nonnegative, got {n}")
    if n > CANTOR3_MAX_STAGE:
        raise ResourceError(f"cantor3 stage {n} exceeds the limit of {CANTOR3_MAX_STAGE}")
    dtype = np.int64 if 3**n < (1 << 62) else object
    # left endpoints in units of 3**-k: base-3 numbers with digits in {0, 2}
    starts = np.zeros(1, dtype=dtype)
    for _ in range(n):
        starts = _children(3 * starts, 3 * starts + 2)
    return AlgebraElement(_interleave(starts, 1), 3**n)


@lru_cache(maxsize=16)
def svc_stage(n: int) -> AlgebraElement:
    """Stage ``n`` of the Smith-Volterra-Cantor construction."""
    if n < 0:
        raise ValueError(f"stage must be nonnegative, got {n}")
    if n > SVC_MAX_STAGE:
        raise ResourceError(f"svc stage {n} exceeds the limit of {SVC_MAX_STAGE}")
    den = 2 ** (2 * n + 1)
    starts = np.zeros(1, dtype=np.int64)
    length = den
    for k in range(1, n + 1):
        gap = den >> (2 * k)
        half = (length - gap) // 2
        starts = _children(starts, starts + half + gap)
        length = half
    return AlgebraElement(_interleave(starts, length), den)


def cantor3_stage_for(eps: Fraction) -> int:
    """Smallest ``n`` with ``(2/3)**n <= eps``."""
    n = 0
    while Fraction(2**n, 3**n) > eps:
        n += 1
    return n


def svc_stage_for(eps: Fraction) -> int:
    """Smallest ``n`` with ``2**-(n+1) <= eps``."""
    n = 0
    while Fraction(1, 2 ** (n + 1)) > eps:
        n += 1
    return n


def dyadic_piece(i: int) -> AlgebraElement:
    """``[2**-i, 2**-(i-1))`` for ``i >= 1``."""
    return ia.normalize([(Fraction(1, 2**i), Fraction(2, 2**i))])


def dyadic_tail_bound(L: int) -> int:
    """``ceil(log2(2L))``: the pieces past it have total length ``2**-N <= 1/(2L)``."""
    return max(1, (2 * L - 1).bit_length())


def _cantor3_approximant(eps: Fraction) -> AlgebraElement:
    return cantor3_stage(cantor3_stage_for(eps))


def _svc_approximant(eps: Fraction) -> AlgebraElement:
    return svc_stage(svc_stage_for(eps))


cantor3 = MeasurableSet(_cantor3_approximant, label="cantor3")
fatcantor = MeasurableSet(_svc_approximant, label="fatcantor")


def _dyadictail() -> MeasurableSet:
    u = countable_union(lambda i: embed(dyadic_piece(i)), TailBound(dyadic_tail_bound))
    return MeasurableSet(u.approximant, label="dyadictail")


dyadictail = _dyadictail()

BUILTINS = {
    "cantor3": cantor3,
    "fatcantor": fatcantor,
    "dyadictail": dyadictail,
}
