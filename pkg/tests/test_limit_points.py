import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F

import pytest

from caratheodory import interval_algebra as ia
from caratheodory.cantor import cantor3, cantor3_stage, dyadic_piece, dyadictail, fatcantor
from caratheodory.errors import PreconditionError
from caratheodory.laws import random_element
from caratheodory.limit_points import (
    ErrorInterval,
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

HALF = ia.normalize([(0, F(1, 2))])
GRID = [F(1, 2), F(1, 8), F(1, 64), F(1, 1024)]


def dyadic_family(i):
    return embed(dyadic_piece(i))


def dyadic_union():
    return countable_union(dyadic_family, TailBound(lambda L: (2 * L - 1).bit_length()))


# --- embed / approx --------------------------------------------------------


def test_embed_is_constant():
    s = embed(HALF)
    assert approx(s, F(1, 10**6)) == HALF
    assert measure_with_error(s, F(1, 3)).contains(F(1, 2))
    assert ia.distance(approx(s, F(1, 2)), approx(s, F(1, 1000))) == 0


def test_approx_cantor3_at_half_is_stage_two():
    b = approx(cantor3, F(1, 2))
    assert b == cantor3_stage(2)
    assert len(b) == 4 and ia.premeasure(b) == F(4, 9)


@pytest.mark.parametrize("eps", [0, -1, F(-1, 2), "0", "-1/2"])
def test_approx_rejects_nonpositive_eps(eps):
    with pytest.raises(PreconditionError):
        approx(embed(HALF), eps)


def test_approx_rejects_float_eps():
    with pytest.raises(TypeError):
        approx(embed(HALF), 0.5)


def test_approx_accepts_string_eps():
    assert approx(cantor3, "1/2") == cantor3_stage(2)


# --- algebra operations ----------------------------------------------------


def test_limit_union_examples():
    a, b = ia.normalize([(0, F(1, 3))]), ia.normalize([(F(1, 4), F(4, 5))])
    u = limit_union(embed(a), embed(b))
    for eps in GRID:
        assert ia.distance(approx(u, eps), ia.union(a, b)) == 0
    assert measure_with_error(limit_union(cantor3, embed(ia.FULL)), F(1, 1000)).contains(1)
    assert distance_between(limit_union(fatcantor, fatcantor), fatcantor, F(1, 64)).contains(0)


def test_limit_complement_examples():
    a = ia.normalize([(F(1, 5), F(1, 2))])
    assert approx(limit_complement(embed(a)), F(1, 9)) == ia.complement(a)
    assert measure_with_error(limit_complement(cantor3), F(1, 1000)).contains(1)
    assert distance_between(limit_complement(limit_complement(fatcantor)), fatcantor, F(1, 100)).contains(0)


def test_limit_intersect_examples():
    a, b = ia.normalize([(0, F(1, 2))]), ia.normalize([(F(1, 4), F(3, 4))])
    assert approx(limit_intersect(embed(a), embed(b)), F(1, 7)) == ia.intersect(a, b)
    assert measure_with_error(limit_intersect(cantor3, embed(ia.FULL)), F(1, 1000)).contains(0)
    assert measure_with_error(limit_intersect(fatcantor, limit_complement(fatcantor)), F(1, 256)).contains(0)


def test_countable_union_examples():
    assert measure_with_error(dyadic_union(), F(1, 1024)).contains(1)
    nothing = countable_union(lambda i: embed(ia.EMPTY), TailBound(lambda L: 1))
    assert all(approx(nothing, eps) == ia.EMPTY for eps in GRID)
    single = countable_union(lambda i: fatcantor if i == 1 else embed(ia.EMPTY), TailBound(lambda L: 1))
    for eps in GRID:
        assert distance_between(single, fatcantor, eps).contains(0)


def test_countable_union_approximant_is_diagonal_element():
    # Y_L is the union of the first N_L pieces: [2**-N_L, 1)
    u = dyadic_union()
    for L in range(1, 40):
        n = (2 * L - 1).bit_length()
        assert approx(u, F(1, L)) == ia.normalize([(F(1, 2**n), 1)])


def test_countable_union_does_not_need_disjointness():
    overlapping = countable_union(lambda i: embed(ia.normalize([(0, F(1, i + 1))])), TailBound(lambda L: 1))
    assert measure_with_error(overlapping, F(1, 128)).contains(F(1, 2))


def test_understated_tail_breaks_the_contract():
    liar = countable_union(dyadic_family, TailBound(lambda L: 1))
    assert not measure_with_error(liar, F(1, 64)).contains(1)


def test_tail_bound_is_made_monotone():
    raw = {1: 5, 2: 3, 3: 7, 4: 2}
    tb = TailBound(lambda L: raw.get(L, 1))
    assert [tb.bound_at(L) for L in range(1, 7)] == [5, 5, 7, 7, 7, 7]
    with pytest.raises(PreconditionError):
        tb.bound_at(0)
    with pytest.raises(PreconditionError):
        TailBound(lambda L: 0).bound_at(1)


# --- measure and distance --------------------------------------------------


def test_measure_with_error_examples():
    iv = measure_with_error(embed(HALF), F(1, 100))
    assert iv == ErrorInterval(F(49, 100), F(51, 100))
    assert measure_with_error(fatcantor, F(1, 1000)).contains(F(1, 2))
    assert measure_with_error(cantor3, F(1, 1000)).contains(0)


@pytest.mark.parametrize("s", [cantor3, fatcantor, dyadictail, embed(HALF)], ids=repr)
def test_width_is_exactly_twice_eps(s):
    for eps in GRID:
        w1 = measure_with_error(s, eps).width
        w2 = measure_with_error(s, eps / 2).width
        assert w1 == 2 * eps and w2 == w1 / 2


def test_measure_intervals_are_not_clamped():
    iv = measure_with_error(cantor3, F(1, 1024))
    assert iv.lo < 0


def test_distance_between_examples():
    assert distance_between(fatcantor, fatcantor, F(1, 100)).contains(0)
    a, b = ia.normalize([(0, F(1, 2))]), ia.normalize([(F(1, 4), F(3, 4))])
    assert distance_between(embed(a), embed(b), F(1, 100)).contains(ia.distance(a, b))
    assert distance_between(cantor3, embed(ia.EMPTY), F(1, 100)).contains(0)
    with pytest.raises(PreconditionError):
        distance_between(cantor3, cantor3, 0)


def test_error_interval_arithmetic():
    x = ErrorInterval(F(1, 4), F(1, 2))
    y = ErrorInterval(F(1, 8), F(3, 8))
    assert x + y == ErrorInterval(F(3, 8), F(7, 8))
    assert x.overlaps(y) and not x.overlaps(ErrorInterval(F(3, 4), 1))
    assert F(1, 3) in x
    with pytest.raises(ValueError):
        ErrorInterval(1, 0)


# --- invariants ------------------------------------------------------------


def exposed_sets():
    rng = random.Random(11)
    a, b = random_element(rng), random_element(rng)
    return {
        "embed": embed(a),
        "cantor3": cantor3,
        "fatcantor": fatcantor,
        "dyadictail": dyadictail,
        "union": limit_union(cantor3, embed(b)),
        "complement": limit_complement(fatcantor),
        "intersect": limit_intersect(fatcantor, limit_complement(embed(a))),
        "countable": dyadic_union(),
        "nested": limit_union(limit_intersect(cantor3, fatcantor), limit_complement(dyadictail)),
    }


@pytest.mark.parametrize("name", list(exposed_sets()))
def test_oracle_self_consistency(name):
    s = exposed_sets()[name]
    for e1 in GRID:
        for e2 in GRID:
            assert ia.distance(approx(s, e1), approx(s, e2)) <= e1 + e2


def test_finite_additivity_with_gap_fixtures():
    gap = embed(ia.normalize([(F(2, 5), F(3, 5))]))  # inside the first removed third
    fat_gap = embed(ia.normalize([(F(3, 8), F(5, 8))]))
    for s1, s2 in [(cantor3, gap), (fatcantor, fat_gap), (fatcantor, limit_complement(fatcantor))]:
        for eps in GRID:
            parts = measure_with_error(s1, eps) + measure_with_error(s2, eps)
            assert parts.overlaps(measure_with_error(limit_union(s1, s2), 2 * eps))


def test_oracles_are_pure_and_thread_safe():
    s = limit_union(limit_complement(cantor3), fatcantor)
    eps_list = [F(1, 2**k) for k in range(1, 10)] * 4
    with ThreadPoolExecutor(max_workers=8) as pool:
        got = list(pool.map(lambda e: approx(s, e), eps_list))
    assert got == [approx(s, e) for e in eps_list]
