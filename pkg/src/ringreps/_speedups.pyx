# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched matrix products over table-driven rings.

Same signatures as ringreps._kernels_py; selected at import by
ringreps.kernels.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def batch_matmul(cnp.int64_t[:, :, :] A, B, cnp.int64_t[:, :] add,
                 cnp.int64_t[:, :] mul):
    """C[k] = A[k] @ B (or A[k] @ B[k]) with entries in a table ring."""
    cdef Py_ssize_t N = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    B_arr = np.ascontiguousarray(B, dtype=np.int64)
    cdef bint batched = B_arr.ndim == 3
    cdef cnp.int64_t[:, :, :] B3
    cdef cnp.int64_t[:, :] B2
    out = np.empty((N, n, n), dtype=np.int64)
    cdef cnp.int64_t[:, :, :] C = out
    cdef Py_ssize_t k, i, j, l
    cdef cnp.int64_t acc
    if batched:
        B3 = B_arr
        for k in range(N):
            for i in range(n):
                for j in range(n):
                    acc = mul[A[k, i, 0], B3[k, 0, j]]
                    for l in range(1, n):
                        acc = add[acc, mul[A[k, i, l], B3[k, l, j]]]
                    C[k, i, j] = acc
    else:
        B2 = B_arr
        for k in range(N):
            for i in range(n):
                for j in range(n):
                    acc = mul[A[k, i, 0], B2[0, j]]
                    for l in range(1, n):
                        acc = add[acc, mul[A[k, i, l], B2[l, j]]]
                    C[k, i, j] = acc
    return out


def encode_mats(cnp.int64_t[:, :, :] mats, cnp.int64_t base):
    """Big-endian row-major radix encoding of each matrix."""
    cdef Py_ssize_t N = mats.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    out = np.empty(N, dtype=np.int64)
    cdef cnp.int64_t[:] codes = out
    cdef Py_ssize_t k, i, j
    cdef cnp.int64_t c
    for k in range(N):
        c = 0
        for i in range(n):
            for j in range(n):
                c = c * base + mats[k, i, j]
        codes[k] = c
    return out
