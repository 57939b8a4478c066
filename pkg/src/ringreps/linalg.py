"""Small dense linear algebra over a GaloisField (dims <= ~20).

Matrices are numpy int64 arrays of field element indices.
"""

from __future__ import annotations

import numpy as np

from .fields import GaloisField


def mat_mul(F: GaloisField, A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    m, k = A.shape
    k2, n = B.shape
    assert k == k2
    out = np.zeros((m, n), dtype=np.int64)
    for l in range(k):
        out = F.add[out, F.mul[A[:, l][:, None], B[l, :][None, :]]]
    return out


def rref(F: GaloisField, A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64, copy=True)
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if len(nz) == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        pinv = int(F.inv[R[row, col]])
        R[row] = F.mul[pinv, R[row]]
        for i in range(m):
            if i != row and R[i, col] != 0:
                c = R[i, col]
                R[i] = F.add[R[i], F.neg[F.mul[c, R[row]]]]
        pivots.append(col)
        row += 1
    return R, pivots


def solve(F: GaloisField, A, b):
    """Solve A x = b; returns one solution or None if inconsistent."""
    A = np.asarray(A)
    b = np.asarray(b)
    m, n = A.shape
    aug = np.concatenate([A, b.reshape(m, 1)], axis=1)
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, col in enumerate(pivots):
        x[col] = R[i, n]
    return x


def nullspace(F: GaloisField, A):
    """Basis (rows) of the right nullspace of A."""
    A = np.asarray(A)
    m, n = A.shape
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for i, pc in enumerate(pivots):
            basis[bi, pc] = F.neg[R[i, fc]]
    return basis


def inv_matrix(F: GaloisField, A):
    A = np.asarray(A)
    n = A.shape[0]
    eye = np.zeros((n, n), dtype=np.int64)
    eye[np.arange(n), np.arange(n)] = 1
    aug = np.concatenate([A, eye], axis=1)
    R, pivots = rref(F, aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]
