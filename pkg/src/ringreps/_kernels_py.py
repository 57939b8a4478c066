"""Pure-numpy fallback for the hot kernels (see _speedups.pyx)."""

from __future__ import annotations

import numpy as np


def batch_matmul(A, B, add, mul):
    """C[k] = A[k] @ B (or A[k] @ B[k]) with entries in a table ring."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    N, n, _ = A.shape
    out = np.empty((N, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if B.ndim == 3:
                acc = mul[A[:, i, 0], B[:, 0, j]]
                for l in range(1, n):
                    acc = add[acc, mul[A[:, i, l], B[:, l, j]]]
            else:
                acc = mul[A[:, i, 0], B[0, j]]
                for l in range(1, n):
                    acc = add[acc, mul[A[:, i, l], B[l, j]]]
            out[:, i, j] = acc
    return out


def encode_mats(mats, base):
    """Big-endian row-major radix encoding of each matrix."""
    mats = np.asarray(mats, dtype=np.int64)
    N, n, _ = mats.shape
    flat = mats.reshape(N, n * n)
    codes = np.zeros(N, dtype=np.int64)
    for k in range(n * n):
        codes = codes * base + flat[:, k]
    return codes
