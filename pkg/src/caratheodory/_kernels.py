"""Hot integer kernels, with a numba path and a pure-numpy path.

Every kernel works on integer arrays only; rationals are handled by the
callers, which scale everything to a common denominator first. Arrays of
``int64`` may go through either backend. Arrays of dtype ``object`` (Python
ints, used once a common denominator no longer fits in 62 bits) always go
through numpy.

The numba backend is used when numba imports cleanly and the environment
variable ``CARATHEODORY_DISABLE_NUMBA`` is unset or ``0``.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is installed in CI
    numba = None
    HAVE_NUMBA = False

NUMBA_ENABLED = HAVE_NUMBA and os.environ.get("CARATHEODORY_DISABLE_NUMBA", "0") in ("", "0")

# boolean operations understood by combine()
OR, AND, XOR, ANDNOT = 0, 1, 2, 3

# largest value we let an int64 array hold; sums of two such values still fit
INT64_SAFE = 1 << 62


def _njit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


# ---------------------------------------------------------------------------
# boundary merging for finite unions of half-open intervals


@_njit
def _combine_numba(a, b, op):
    na = a.shape[0]
    nb = b.shape[0]
    out = np.empty(na + nb, dtype=a.dtype)
    i = 0
    j = 0
    k = 0
    ina = False
    inb = False
    cur = False
    while i < na or j < nb:
        if j == nb or (i < na and a[i] < b[j]):
            x = a[i]
            ina = not ina
            i += 1
        elif i == na or b[j] < a[i]:
            x = b[j]
            inb = not inb
            j += 1
        else:
            x = a[i]
            ina = not ina
            inb = not inb
            i += 1
            j += 1
        if op == 0:
            r = ina or inb
        elif op == 1:
            r = ina and inb
        elif op == 2:
            r = ina != inb
        else:
            r = ina and not inb
        if r != cur:
            out[k] = x
            k += 1
            cur = r
    return out[:k].copy()


_NUMPY_OPS = {
    OR: np.logical_or,
    AND: np.logical_and,
    XOR: np.logical_xor,
    ANDNOT: lambda p, q: np.logical_and(p, np.logical_not(q)),
}


def _combine_numpy(a, b, op):
    pts = np.union1d(a, b)
    if pts.size == 0:
        return pts.astype(a.dtype)
    # indicator state immediately to the right of each breakpoint
    in_a = np.searchsorted(a, pts, side="right") % 2 == 1
    in_b = np.searchsorted(b, pts, side="right") % 2 == 1
    r = _NUMPY_OPS[op](in_a, in_b)
    prev = np.concatenate(([False], r[:-1]))
    return pts[r != prev].astype(a.dtype)


def combine(a, b, op):
    """Boundary array of ``op(A, B)`` given the boundary arrays of A and B.

    A boundary array lists the sorted, distinct points where the indicator
    function flips; it has even length and ``[x0, x1), [x2, x3), ...`` are
    the intervals.
    """
    if NUMBA_ENABLED and a.dtype == np.int64 and b.dtype == np.int64:
        return _combine_numba(a, b, op)
    return _combine_numpy(a, b, op)


# ---------------------------------------------------------------------------
# finite-universe tables; sets are bitmasks over {0, ..., n-1}


@_njit
def _cover_table_numba(masks, weights, n):
    size = 1 << n
    f = np.zeros(size, dtype=np.int64)
    for s in range(1, size):
        best = -1
        for a in range(masks.shape[0]):
            m = masks[a]
            if m & s:
                v = weights[a] + f[s & ~m]
                if best < 0 or v < best:
                    best = v
        f[s] = best
    return f


def _cover_table_numpy(masks, weights, n):
    size = 1 << n
    f = np.zeros(size, dtype=weights.dtype)
    for s in range(1, size):
        hit = (masks & s) != 0
        f[s] = (weights[hit] + f[s & ~masks[hit]]).min()
    return f


def cover_table(masks, weights, n):
    """Cheapest multi-element cover of every subset of the universe.

    ``masks[k]`` is the bitmask of the k-th algebra element and
    ``weights[k]`` its measure. Entry ``s`` of the result is the minimum of
    ``sum(weights[k] for k in cover)`` over all finite families of algebra
    elements whose union contains ``s``. Families repeating an element or
    containing an element that covers nothing new never beat the recursion
    below, since weights are nonnegative.
    """
    if NUMBA_ENABLED and weights.dtype == np.int64:
        return _cover_table_numba(masks, weights, n)
    return _cover_table_numpy(masks, weights, n)


@_njit
def _single_cover_table_numba(masks, weights, n):
    size = 1 << n
    f = np.zeros(size, dtype=np.int64)
    for s in range(size):
        best = -1
        for a in range(masks.shape[0]):
            if (masks[a] & s) == s:
                if best < 0 or weights[a] < best:
                    best = weights[a]
        f[s] = best
    return f


def _single_cover_table_numpy(masks, weights, n):
    size = 1 << n
    f = np.zeros(size, dtype=weights.dtype)
    for s in range(size):
        f[s] = weights[(masks & s) == s].min()
    return f


def single_cover_table(masks, weights, n):
    """Cheapest single algebra element containing each subset."""
    if NUMBA_ENABLED and weights.dtype == np.int64:
        return _single_cover_table_numba(masks, weights, n)
    return _single_cover_table_numpy(masks, weights, n)


@_njit
def _splitting_flags_numba(table, n):
    size = 1 << n
    full = size - 1
    flags = np.zeros(size, dtype=np.bool_)
    for e in range(size):
        ne = full ^ e
        ok = True
        for a in range(size):
            if table[a] != table[a & e] + table[a & ne]:
                ok = False
                break
        flags[e] = ok
    return flags


def _splitting_flags_numpy(table, n):
    size = 1 << n
    full = size - 1
    probe = np.arange(size, dtype=np.int64)
    flags = np.zeros(size, dtype=np.bool_)
    for e in range(size):
        flags[e] = np.array_equal(table, table[probe & e] + table[probe & (full ^ e)])
    return flags


def splitting_flags(table, n):
    """For every set e, whether ``table[A] == table[A & e] + table[A & ~e]`` for all A."""
    if NUMBA_ENABLED and table.dtype == np.int64:
        return _splitting_flags_numba(table, n)
    return _splitting_flags_numpy(table, n)


@_njit
def _null_distance_flags_numba(table, masks, n):
    size = 1 << n
    flags = np.zeros(size, dtype=np.bool_)
    for s in range(size):
        for a in range(masks.shape[0]):
            if table[s ^ masks[a]] == 0:
                flags[s] = True
                break
    return flags


def _null_distance_flags_numpy(table, masks, n):
    size = 1 << n
    flags = np.zeros(size, dtype=np.bool_)
    for s in range(size):
        flags[s] = bool((table[s ^ masks] == 0).any())
    return flags


def null_distance_flags(table, masks, n):
    """For every set s, whether some algebra element B has ``table[s ^ B] == 0``."""
    if NUMBA_ENABLED and table.dtype == np.int64:
        return _null_distance_flags_numba(table, masks, n)
    return _null_distance_flags_numpy(table, masks, n)


BACKENDS = {
    "numba": {
        "combine": _combine_numba,
        "cover_table": _cover_table_numba,
        "single_cover_table": _single_cover_table_numba,
        "splitting_flags": _splitting_flags_numba,
        "null_distance_flags": _null_distance_flags_numba,
    },
    "numpy": {
        "combine": _combine_numpy,
        "cover_table": _cover_table_numpy,
        "single_cover_table": _single_cover_table_numpy,
        "splitting_flags": _splitting_flags_numpy,
        "null_distance_flags": _null_distance_flags_numpy,
    },
}
