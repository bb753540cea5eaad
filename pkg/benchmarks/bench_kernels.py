"""Compare the numba loop kernels with the pure-numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is warmed up
once (so JIT compilation is excluded), then timed as the best of several
repeats.  Results are also checked for equality.
"""
import argparse
import time

import numpy as np

from latmeas import kernels
from latmeas.lattice import chain, powerset, product


def best_of(fn, repeat):
    fn()  # warm-up, includes compilation for the numba path
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    big = product(powerset(4), chain(3))  # 64 elements
    mid = product(powerset(3), chain(2))  # 24 elements
    small = product(powerset(2), product(chain(2), chain(2)))  # 36 elements, too many for brute force
    brute = product(powerset(2), chain(4))  # 20 elements
    adj = np.zeros((len(big), len(big)), dtype=bool)
    for a, b in big.covers():
        adj[a, b] = True
    start = np.full(len(small), -1, np.int64)
    start[small.bottom], start[small.top] = 0, 1
    k = 4
    return [
        ("closure (64 el.)", kernels._closure_loops, kernels._closure_numpy, (adj,)),
        ("bound tables (powerset(8))", kernels._bound_tables_loops, kernels._bound_tables_numpy,
         (np.ascontiguousarray(powerset(8).leq),)),
        (f"ie rows ({len(mid)} el., k<={k})",
         lambda *a: kernels.ie_rows(*a, impl=kernels._ie_rows_loops),
         lambda *a: kernels.ie_rows(*a, impl=kernels._ie_rows_numpy),
         (mid.meet, mid.join, k)),
        ("valuations (20 el., 2^20)", kernels._valuations_loops, kernels._valuations_numpy,
         (brute.meet, brute.join, brute.bottom, brute.top)),
        ("propagate (36 el.)", kernels._propagate_loops, kernels._propagate_numpy,
         (start, small.meet, small.join, small.leq)),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) and a.ndim == 2 and a.dtype == np.uint8:
        return sorted(map(tuple, a)) == sorted(map(tuple, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; the loop kernels run as plain Python")
    print(f"{'kernel':34s} {'numba':>10s} {'numpy':>10s} {'ratio':>7s}  equal")
    for name, loops, vec, inputs in cases():
        t_loop = best_of(lambda: loops(*inputs), args.repeat)
        t_vec = best_of(lambda: vec(*inputs), args.repeat)
        ok = same(loops(*inputs), vec(*inputs))
        print(f"{name:34s} {t_loop * 1e3:9.2f}ms {t_vec * 1e3:9.2f}ms {t_vec / t_loop:6.1f}x  {ok}")


if __name__ == "__main__":
    main()
