"""Compare the numba and numpy row sieves of the parameter search.

    python benchmarks/bench_kernels.py --height 128 --repeat 3

Both backends must return identical masks; the script exits non-zero if they
differ.
"""
import argparse
import sys
import time

import numpy as np

from heronmedians.search import kernels
from heronmedians.search.core import farey_fractions


def sweep(mask_fn, fr, r, t):
    survivors = 0
    for p, q in fr:
        survivors += int(mask_fn(p, q, r, t).sum())
    return survivors


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--height", type=int, default=128)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    fr = farey_fractions(args.height)
    r = np.array([f[0] for f in fr], dtype=np.int64)
    t = np.array([f[1] for f in fr], dtype=np.int64)
    print(f"height {args.height}: {len(fr)} fractions, {len(fr) ** 2} raw pairs")

    backends = kernels.available_backends()
    timings = {}
    counts = {}
    for name in backends:
        fn = kernels.get_row_mask(name)
        fn(1, 3, r, t)  # JIT warm-up
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            counts[name] = sweep(fn, fr, r, t)
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
        print(f"{name:>6}: {best:8.3f} s  survivors {counts[name]}")

    if len(backends) == 2:
        ref = kernels.get_row_mask("numpy")
        jit = kernels.get_row_mask("numba")
        for p, q in fr[:: max(1, len(fr) // 200)]:
            if not np.array_equal(ref(p, q, r, t), jit(p, q, r, t)):
                print(f"mask mismatch at theta={p}/{q}", file=sys.stderr)
                return 1
        print(f"speed-up numba/numpy: {timings['numpy'] / timings['numba']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
