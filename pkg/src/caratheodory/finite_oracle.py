"""Brute-force outer measure and measurability on finite universes.

A :class:`FiniteSpace` is a universe ``{0, ..., n-1}`` (``n <= 12``)
partitioned into blocks with nonnegative rational weights. Its algebra is
every union of blocks. Sets are bitmasks, and all tables are computed over
every one of the ``2**n`` subsets, so each verdict here is exhaustive.

Weights are scaled to integers over their common denominator before any
table is built; the tables are then exact integer arrays.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import DomainError, RangeError, ResourceError, SpecError
from .interval_algebra import format_rat, parse_rat

MAX_UNIVERSE = 12
MAX_FAMILY_BLOCKS = 4


@dataclass(frozen=True, order=True)
class FiniteSet:
    """Subset of ``{0, ..., size-1}`` as a membership bitmask."""

    mask: int
    size: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.size:
            raise RangeError(f"mask {self.mask:#x} has bits outside a universe of {self.size}")

    @classmethod
    def of(cls, members: Iterable[int], size: int) -> "FiniteSet":
        mask = 0
        for m in members:
            if not 0 <= m < size:
                raise RangeError(f"point {m} outside universe of size {size}")
            mask |= 1 << m
        return cls(mask, size)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.mask >> i & 1)

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class _Tables:
    scale: int  # common denominator of the weights
    masks: np.ndarray  # bitmask of each algebra element, indexed by block subset
    weights: np.ndarray  # scaled measure of each algebra element
    outer: np.ndarray  # scaled outer measure of every subset (multi-element covers)
    single: np.ndarray  # scaled cheapest single algebra element containing each subset


@dataclass(frozen=True)
class FiniteSpace:
    """A finite universe, a partition of it into blocks, and block weights."""

    universe_size: int
    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.universe_size
        if not 1 <= n <= MAX_UNIVERSE:
            raise ResourceError(f"universe size must be in 1..{MAX_UNIVERSE}, got {n}")
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        weights = tuple(Fraction(w) for w in self.weights)
        if len(blocks) != len(weights):
            raise DomainError("need exactly one weight per block")
        seen = [p for b in blocks for p in b]
        if sorted(seen) != list(range(n)) or any(not b for b in blocks):
            raise DomainError(f"blocks {blocks} do not partition {{0..{n - 1}}}")
        if any(w < 0 for w in weights):
            raise DomainError("block weights must be nonnegative")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "weights", weights)

    @property
    def full(self) -> FiniteSet:
        return FiniteSet((1 << self.universe_size) - 1, self.universe_size)

    def subsets(self) -> Iterable[FiniteSet]:
        n = self.universe_size
        return (FiniteSet(m, n) for m in range(1 << n))

    def algebra(self) -> list[FiniteSet]:
        """Every union of blocks, indexed by the bitmask of chosen blocks."""
        n = self.universe_size
        return [FiniteSet(int(m), n) for m in self._tables.masks]

    def mu(self, e: FiniteSet) -> Fraction:
        """Premeasure of an algebra element."""
        t = self._tables
        hits = np.flatnonzero(t.masks == e.mask)
        if hits.size == 0:
            raise DomainError(f"{e} is not a union of blocks")
        return Fraction(int(t.weights[hits[0]]), t.scale)

    @cached_property
    def _tables(self) -> _Tables:
        scale = reduce(math.lcm, (w.denominator for w in self.weights), 1)
        block_w = [int(w * scale) for w in self.weights]
        block_m = [sum(1 << p for p in b) for b in self.blocks]
        dtype = np.int64 if 2 * sum(block_w) < _kernels.INT64_SAFE else object
        nb = len(self.blocks)
        masks = np.zeros(1 << nb, dtype=np.int64)
        weights = np.zeros(1 << nb, dtype=dtype)
        for k in range(1, 1 << nb):
            low = (k & -k).bit_length() - 1
            masks[k] = masks[k & (k - 1)] | block_m[low]
            weights[k] = weights[k & (k - 1)] + block_w[low]
        n = self.universe_size
        outer = _kernels.cover_table(masks, weights, n)
        single = _kernels.single_cover_table(masks, weights, n)
        return _Tables(scale, masks, weights, outer, single)

    @cached_property
    def _families(self) -> tuple[np.ndarray, np.ndarray]:
        # union and total weight of every family of algebra elements
        nb = len(self.blocks)
        if nb > MAX_FAMILY_BLOCKS:
            raise ResourceError(f"family enumeration supports at most {MAX_FAMILY_BLOCKS} blocks, got {nb}")
        t = self._tables
        covers = np.zeros(1, dtype=np.int64)
        costs = np.zeros(1, dtype=t.weights.dtype)
        for m, w in zip(t.masks, t.weights):
            covers = np.concatenate((covers, covers | m))
            costs = np.concatenate((costs, costs + w))
        return covers, costs

    @cached_property
    def _measurable_flags(self) -> np.ndarray:
        return _kernels.splitting_flags(self._tables.outer, self.universe_size)

    @cached_property
    def _closure_flags(self) -> np.ndarray:
        t = self._tables
        return _kernels.null_distance_flags(t.outer, t.masks, self.universe_size)

    def spec_string(self) -> str:
        return format_partition_spec(self)


def _check(space: FiniteSpace, e: FiniteSet):
    if e.size != space.universe_size:
        raise DomainError(f"set over a universe of {e.size} used with a space of {space.universe_size}")


def outer_measure(space: FiniteSpace, e: FiniteSet) -> Fraction:
    """Infimum of total weight over all finite covers of ``e`` by algebra elements."""
    _check(space, e)
    t = space._tables
    return Fraction(int(t.outer[e.mask]), t.scale)


def single_cover_measure(space: FiniteSpace, e: FiniteSet) -> Fraction:
    """Measure of the cheapest single algebra element containing ``e``."""
    _check(space, e)
    t = space._tables
    return Fraction(int(t.single[e.mask]), t.scale)


def family_cover_measure(space: FiniteSpace, e: FiniteSet) -> Fraction:
    """Outer measure by literally enumerating every family of algebra elements.

    Only feasible for at most four blocks (``2**16`` families); used as an
    independent check of :func:`outer_measure`.
    """
    _check(space, e)
    covers, costs = space._families
    return Fraction(int(costs[(covers & e.mask) == e.mask].min()), space._tables.scale)


def is_measurable(space: FiniteSpace, e: FiniteSet) -> bool:
    """Whether ``e`` splits every subset additively under the outer measure."""
    _check(space, e)
    table = space._tables.outer
    probe = np.arange(1 << space.universe_size, dtype=np.int64)
    rest = space.full.mask ^ e.mask
    return bool(np.array_equal(table, table[probe & e.mask] + table[probe & rest]))


def measurable_sets(space: FiniteSpace) -> frozenset[FiniteSet]:
    n = space.universe_size
    return frozenset(FiniteSet(int(m), n) for m in np.flatnonzero(space._measurable_flags))


def limit_closure(space: FiniteSpace) -> frozenset[FiniteSet]:
    """Sets at outer-measure distance 0 from some algebra element.

    With a finite algebra, a Cauchy sequence in the pseudometric can only
    converge to such a set.
    """
    n = space.universe_size
    return frozenset(FiniteSet(int(m), n) for m in np.flatnonzero(space._closure_flags))


def verify_measurable_is_closure(space: FiniteSpace) -> bool:
    """Measurable sets and the limit closure coincide, both computed exhaustively."""
    return bool(np.array_equal(space._measurable_flags, space._closure_flags))


def verify_extension(space: FiniteSpace) -> bool:
    """Outer measure agrees with the premeasure on the algebra and with the
    measure of every zero-distance witness on the limit closure."""
    t = space._tables
    if not np.array_equal(t.outer[t.masks], t.weights):
        return False
    for s in np.flatnonzero(space._closure_flags):
        witnesses = t.outer[s ^ t.masks] == 0
        if not (t.weights[witnesses] == t.outer[s]).all():
            return False
    return True


def truncated_cover(space: FiniteSpace, e: FiniteSet, n: int) -> FiniteSet:
    """An algebra element within ``1/n`` of a measurable ``e``.

    The minimal cover (the union of the blocks meeting ``e``) needs no
    truncation on a finite space: for measurable ``e`` its distance to
    ``e`` is exactly 0.
    """
    _check(space, e)
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not is_measurable(space, e):
        raise DomainError(f"{e} is not measurable in this space")
    cover = 0
    for b in space.blocks:
        bm = sum(1 << p for p in b)
        if bm & e.mask:
            cover |= bm
    c = FiniteSet(cover, space.universe_size)
    assert outer_measure(space, FiniteSet(c.mask ^ e.mask, e.size)) <= Fraction(1, n)
    return c


def cover_reduction_holds(space: FiniteSpace) -> bool:
    """Multi-element and single-element cover minima agree on every subset."""
    t = space._tables
    return bool(np.array_equal(t.outer, t.single))


def algebra_is_closed(sets: frozenset[FiniteSet], space: FiniteSpace) -> bool:
    """Closure of a family of sets under complement and pairwise union."""
    full = space.full.mask
    masks = {s.mask for s in sets}
    if 0 not in masks or full not in masks:
        return False
    if any(full ^ m not in masks for m in masks):
        return False
    return all(a | b in masks for a, b in combinations(masks, 2))


# ---------------------------------------------------------------------------
# partition spec strings: "0,1:1/2;2,3:1/2"


def parse_partition_spec(text: str) -> FiniteSpace:
    blocks, weights = [], []
    for part in text.strip().split(";"):
        pts, sep, w = part.partition(":")
        if not sep:
            raise SpecError(f"block {part!r} lacks a ':weight'")
        try:
            members = tuple(int(p) for p in pts.split(","))
            weight = parse_rat(w)
        except ValueError as exc:
            raise SpecError(f"malformed block {part!r}: {exc}") from None
        blocks.append(members)
        weights.append(weight)
    points = [p for b in blocks for p in b]
    if not points or min(points) < 0:
        raise SpecError(f"malformed partition spec {text!r}")
    try:
        return FiniteSpace(max(points) + 1, tuple(blocks), tuple(weights))
    except (DomainError, ResourceError) as exc:
        raise SpecError(str(exc)) from None


def format_partition_spec(space: FiniteSpace) -> str:
    return ";".join(
        ",".join(map(str, b)) + ":" + format_rat(w) for b, w in zip(space.blocks, space.weights)
    )


def random_space(rng: random.Random, max_size: int = 6, max_den: int = 16) -> FiniteSpace:
    """A random partition with small-denominator weights, about a third of them 0."""
    n = rng.randint(1, max_size)
    labels = [rng.randrange(n) for _ in range(n)]
    groups: dict[int, list[int]] = {}
    for point, label in enumerate(labels):
        groups.setdefault(label, []).append(point)
    blocks = tuple(tuple(g) for g in groups.values())
    weights = []
    for _ in blocks:
        if rng.random() < 1 / 3:
            weights.append(Fraction(0))
        else:
            q = rng.randint(1, max_den)
            weights.append(Fraction(rng.randint(1, q), q))
    return FiniteSpace(n, blocks, tuple(weights))
