#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times table-indexed batch matrix multiplication (the hot loop of group
enumeration and conjugacy scanning) and matrix encoding, on randomly
generated workloads over a few ring sizes.
"""

import argparse
import time

import numpy as np

from ringreps import _kernels_py
from ringreps.rings import parse_ring

try:
    from ringreps import _speedups
except ImportError:
    _speedups = None


def bench(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--batch", type=int, default=200_000)
    ap.add_argument("--n", type=int, default=2, help="matrix size")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rings", nargs="*",
                    default=["truncpoly(gf(2),r=2)", "zmod(5^2)", "witt2(gf(4))"])
    args = ap.parse_args()

    if _speedups is None:
        print("compiled extension not available; showing fallback only")

    rng = np.random.default_rng(0)
    n, N = args.n, args.batch
    header = f"{'ring':28s} {'workload':22s} {'python':>10s} {'cython':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for ring_text in args.rings:
        ring = parse_ring(ring_text)
        A = rng.integers(0, ring.size, size=(N, n, n))
        B = rng.integers(0, ring.size, size=(N, n, n))
        B1 = B[0]
        for label, fargs in [
            (f"matmul (N,{n},{n})x(N,{n},{n})", (A, B, ring.add, ring.mul)),
            (f"matmul (N,{n},{n})x({n},{n})", (A, B1, ring.add, ring.mul)),
        ]:
            tp = bench(_kernels_py.batch_matmul, *fargs, repeat=args.repeat)
            if _speedups is not None:
                tc = bench(_speedups.batch_matmul, *fargs, repeat=args.repeat)
                out_p = _kernels_py.batch_matmul(*fargs)
                out_c = _speedups.batch_matmul(*fargs)
                assert np.array_equal(out_p, out_c), "backend mismatch"
                print(f"{ring_text:28s} {label:22s} {tp*1e3:9.1f}ms {tc*1e3:9.1f}ms "
                      f"{tp/tc:7.2f}x")
            else:
                print(f"{ring_text:28s} {label:22s} {tp*1e3:9.1f}ms {'-':>10s} {'-':>8s}")

        tp = bench(_kernels_py.encode_mats, A, ring.size, repeat=args.repeat)
        if _speedups is not None:
            tc = bench(_speedups.encode_mats, A, ring.size, repeat=args.repeat)
            assert np.array_equal(_kernels_py.encode_mats(A, ring.size),
                                  _speedups.encode_mats(A, ring.size))
            print(f"{ring_text:28s} {'encode':22s} {tp*1e3:9.1f}ms {tc*1e3:9.1f}ms "
                  f"{tp/tc:7.2f}x")


if __name__ == "__main__":
    main()
