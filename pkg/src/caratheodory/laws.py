"""Seeded randomized checks of the pseudometric and additivity laws.

Every law is checked with exact rational arithmetic, so a single failure
is a genuine counterexample, not rounding noise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import interval_algebra as ia
from .interval_algebra import AlgebraElement
from .limit_points import embed, limit_union, measure_with_error

MAX_INTERVALS = 6
MAX_DEN = 64


def random_rat(rng: random.Random, max_den: int = MAX_DEN) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


def random_element(rng: random.Random, max_intervals: int = MAX_INTERVALS, max_den: int = MAX_DEN) -> AlgebraElement:
    """Union of up to ``max_intervals`` random intervals, possibly overlapping,
    adjacent or empty, so that normalization edge cases come up often."""
    pairs = []
    for _ in range(rng.randint(0, max_intervals)):
        x, y = random_rat(rng, max_den), random_rat(rng, max_den)
        pairs.append((min(x, y), max(x, y)))
        if rng.random() < 0.2:
            # an interval sharing an endpoint, to exercise adjacency merging
            z = random_rat(rng, max_den)
            pairs.append((max(x, y), max(max(x, y), z)))
    return ia.normalize(pairs)


@dataclass
class LawResult:
    name: str
    description: str
    trials: int = 0
    passed: int = 0
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


@dataclass
class LawReport:
    trials: int
    seed: int
    results: list[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)


def _fmt(*named: tuple[str, AlgebraElement]) -> str:
    return "; ".join(f"{k} = {ia.to_text(v, ascii=True)}" for k, v in named)


def _identity(rng):
    a = random_element(rng)
    return ia.distance(a, a) == 0, _fmt(("a", a))


def _symmetry(rng):
    a, b = random_element(rng), random_element(rng)
    return ia.distance(a, b) == ia.distance(b, a), _fmt(("a", a), ("b", b))


def _triangle(rng):
    a, b, c = (random_element(rng) for _ in range(3))
    d = ia.distance
    return d(a, c) <= d(a, b) + d(b, c), _fmt(("a", a), ("b", b), ("c", c))


def _union_bound(rng):
    a1, a2, a3, a4 = (random_element(rng) for _ in range(4))
    d = ia.distance
    ok = d(ia.union(a1, a2), ia.union(a3, a4)) <= d(a1, a3) + d(a2, a4)
    return ok, _fmt(("a1", a1), ("a2", a2), ("a3", a3), ("a4", a4))


def _complement_isometry(rng):
    a, b = random_element(rng), random_element(rng)
    return ia.distance(ia.complement(a), ia.complement(b)) == ia.distance(a, b), _fmt(("a", a), ("b", b))


def _quotient(rng):
    a = random_element(rng)
    # half the time compare against an equal element built a different way
    b = ia.union(a, ia.intersect(a, random_element(rng))) if rng.random() < 0.5 else random_element(rng)
    return (ia.distance(a, b) == 0) == (a == b), _fmt(("a", a), ("b", b))


def _additivity(rng):
    a = random_element(rng)
    b = ia.difference(random_element(rng), a)
    exact = ia.premeasure(ia.union(a, b)) == ia.premeasure(a) + ia.premeasure(b)
    eps = Fraction(1, 2 ** rng.randint(1, 10))
    parts = measure_with_error(embed(a), eps) + measure_with_error(embed(b), eps)
    whole = measure_with_error(limit_union(embed(a), embed(b)), 2 * eps)
    return exact and parts.overlaps(whole), _fmt(("a", a), ("b", b))


def _canonical(rng):
    a, b = random_element(rng), random_element(rng)
    outs = (ia.union(a, b), ia.intersect(a, b), ia.complement(a), ia.sym_diff(a, b))
    ok = all(o.is_canonical() for o in outs) and ia.normalize(a.intervals) == a
    return ok, _fmt(("a", a), ("b", b))


LAWS: list[tuple[str, str, Callable]] = [
    ("identity", "d(a,a) = 0", _identity),
    ("symmetry", "d(a,b) = d(b,a)", _symmetry),
    ("triangle", "d(a,c) <= d(a,b) + d(b,c)", _triangle),
    ("union_bound", "d(a1|a2, a3|a4) <= d(a1,a3) + d(a2,a4)", _union_bound),
    ("complement_isometry", "d(!a,!b) = d(a,b)", _complement_isometry),
    ("quotient", "d(a,b) = 0 iff a = b", _quotient),
    ("finite_additivity", "mu(a|b) = mu(a) + mu(b) for disjoint a, b", _additivity),
    ("canonical_form", "set operations return canonical elements", _canonical),
]


def run_laws(trials: int, seed: int) -> LawReport:
    """Run every law ``trials`` times; each law draws from its own seeded stream.

    A law stops at its first counterexample.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    report = LawReport(trials, seed)
    for idx, (name, desc, check) in enumerate(LAWS):
        rng = random.Random(f"{seed}:{idx}")
        res = LawResult(name, desc)
        for _ in range(trials):
            res.trials += 1
            ok, witness = check(rng)
            if not ok:
                res.counterexample = witness
                break
            res.passed += 1
        report.results.append(res)
    return report
