"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly through ``_kernels.BACKENDS``, so the
environment flag does not matter here. Inputs are identical for both and
the results are checked for equality before any timing is reported.
"""

import argparse
import time

import numpy as np

from caratheodory import _kernels
from caratheodory import finite_oracle as fo


def boundary_pair(rng, size, den=1 << 40):
    a = np.unique(rng.integers(0, den, size=size, dtype=np.int64))
    b = np.unique(rng.integers(0, den, size=size, dtype=np.int64))
    return a[: len(a) // 2 * 2], b[: len(b) // 2 * 2]


def twelve_point_space():
    blocks = tuple((2 * i, 2 * i + 1) for i in range(6))
    return fo.FiniteSpace(12, blocks, (0, 1, 0, 2, 3, 5))


def cases(rng):
    a, b = boundary_pair(rng, 200_000)
    t = twelve_point_space()._tables
    n = 12
    return [
        ("combine OR, 200k bounds", "combine", (a, b, _kernels.OR)),
        ("combine XOR, 200k bounds", "combine", (a, b, _kernels.XOR)),
        ("cover_table, n=12", "cover_table", (t.masks, t.weights, n)),
        ("single_cover_table, n=12", "single_cover_table", (t.masks, t.weights, n)),
        ("splitting_flags, n=12", "splitting_flags", (t.outer, n)),
        ("null_distance_flags, n=12", "null_distance_flags", (t.outer, t.masks, n)),
    ]


def best_of(func, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<28}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for label, name, inputs in cases(rng):
        fast = _kernels.BACKENDS["numba"][name]
        slow = _kernels.BACKENDS["numpy"][name]
        # warm up JIT compilation and check agreement
        if not np.array_equal(fast(*inputs), slow(*inputs)):
            raise SystemExit(f"{name}: backends disagree")
        t_np = best_of(slow, inputs, args.repeat)
        t_nb = best_of(fast, inputs, args.repeat)
        print(f"{label:<28}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
