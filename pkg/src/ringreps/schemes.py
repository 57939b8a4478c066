"""Group scheme descriptors: GL_n, SL_n and Sp_n (n even, antidiagonal form).

Provides the defining-equation predicate over any local ring (vectorized
over batches of matrices), the Lie algebra basis over the residue field,
and coordinate extraction with respect to that basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .fields import GaloisField
from .rings import LocalRing

__all__ = ["GroupScheme", "LieAlgebraBasis", "parse_scheme", "batch_det"]


def batch_det(ring_or_field, mats):
    """Determinants of a batch of n x n matrices (n <= 4), cofactor expansion."""
    add, mul, neg = ring_or_field.add, ring_or_field.mul, ring_or_field.neg
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[-1]
    if n == 1:
        return mats[:, 0, 0].copy()
    if n == 2:
        return add[mul[mats[:, 0, 0], mats[:, 1, 1]], neg[mul[mats[:, 0, 1], mats[:, 1, 0]]]]
    # expand along the first row
    N = mats.shape[0]
    det = np.zeros(N, dtype=np.int64)
    cols = list(range(n))
    for j in range(n):
        minor = mats[:, 1:, :][:, :, [c for c in cols if c != j]]
        term = mul[mats[:, 0, j], batch_det(ring_or_field, minor)]
        det = add[det, term if j % 2 == 0 else neg[term]]
    return det


def batch_adjugate(ring_or_field, mats):
    """Adjugate matrices (n <= 4): inv = det^{-1} * adj for invertible input."""
    neg = ring_or_field.neg
    mats = np.asarray(mats, dtype=np.int64)
    N, n, _ = mats.shape
    if n == 1:
        return np.ones((N, 1, 1), dtype=np.int64)
    adj = np.empty_like(mats)
    cols = list(range(n))
    rows = list(range(n))
    for i in range(n):
        for j in range(n):
            minor = mats[:, [r for r in rows if r != i], :][:, :, [c for c in cols if c != j]]
            cof = batch_det(ring_or_field, minor)
            adj[:, j, i] = cof if (i + j) % 2 == 0 else neg[cof]
    return adj


@dataclass(frozen=True)
class GroupScheme:
    family: str  # 'gl' | 'sl' | 'sp'
    n: int

    def __post_init__(self):
        if self.family not in ("gl", "sl", "sp"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.family == "sp" and self.n % 2 != 0:
            raise ValueError("sp requires even matrix size")

    @property
    def lie_dim(self) -> int:
        n = self.n
        if self.family == "gl":
            return n * n
        if self.family == "sl":
            return n * n - 1
        return n * (n + 1) // 2

    def symplectic_form(self, ring_or_field):
        """Fixed antidiagonal form J: J[i, n-1-i] = 1 (i < n/2), -1 (i >= n/2)."""
        n = self.n
        one = getattr(ring_or_field, "one", 1)
        J = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            J[i, n - 1 - i] = one if i < n // 2 else ring_or_field.neg[one]
        return J

    def contains(self, ring: LocalRing, mats) -> np.ndarray:
        """Boolean mask: which matrices satisfy the defining equation over `ring`."""
        mats = np.asarray(mats, dtype=np.int64)
        if mats.ndim == 2:
            mats = mats[None]
        if self.family == "gl":
            return ring.inv[batch_det(ring, mats)] >= 0
        if self.family == "sl":
            return batch_det(ring, mats) == ring.one
        J = self.symplectic_form(ring)
        from .kernels import batch_matmul

        MT = mats.transpose(0, 2, 1).copy()
        prod = batch_matmul(batch_matmul(MT, J, ring.add, ring.mul), mats, ring.add, ring.mul)
        return np.all(prod == J[None], axis=(1, 2))

    def descriptor(self) -> str:
        return f"{self.family}({self.n})"

    def cartan_type(self):
        """(type_letter, rank) of the derived group's root system."""
        n = self.n
        if self.family in ("gl", "sl"):
            return ("A", n - 1)
        return ("C", n // 2)


class LieAlgebraBasis:
    """Ordered basis of Lie(G) over the residue field, with coordinate maps."""

    def __init__(self, scheme: GroupScheme, field: GaloisField):
        self.scheme = scheme
        self.field = field
        n = scheme.n
        basis = []
        if scheme.family == "gl":
            for i in range(n):
                for j in range(n):
                    E = np.zeros((n, n), dtype=np.int64)
                    E[i, j] = 1
                    basis.append(E)
        elif scheme.family == "sl":
            for i in range(n):
                for j in range(n):
                    if i != j:
                        E = np.zeros((n, n), dtype=np.int64)
                        E[i, j] = 1
                        basis.append(E)
            for i in range(n - 1):
                H = np.zeros((n, n), dtype=np.int64)
                H[i, i] = 1
                H[i + 1, i + 1] = field.neg[1]
                basis.append(H)
        else:
            basis = self._sp_basis()
        self.mats = np.array(basis, dtype=np.int64)
        self.dim = len(basis)
        assert self.dim == scheme.lie_dim
        # columns of B are the vectorized basis elements
        self._B = self.mats.reshape(self.dim, n * n).T.copy()

    def _sp_basis(self):
        """Nullspace basis of X -> X^T J + J X over the residue field."""
        F = self.field
        n = self.scheme.n
        J = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            J[i, n - 1 - i] = 1 if i < n // 2 else F.neg[1]
        # constraint matrix over F acting on vec(X)
        rows = []
        for a in range(n):
            for b in range(n):
                row = np.zeros(n * n, dtype=np.int64)
                for k in range(n):
                    # (X^T J)[a,b] = sum_k X[k,a] J[k,b]
                    row[k * n + a] = F.add[row[k * n + a], J[k, b]]
                    # (J X)[a,b] = sum_k J[a,k] X[k,b]
                    row[k * n + b] = F.add[row[k * n + b], J[a, k]]
                rows.append(row)
        ns = linalg.nullspace(F, np.array(rows))
        return [v.reshape(n, n) for v in ns]

    def matrix_from_coords(self, coords):
        """sum_i c_i * basis_i as an n x n matrix over the field."""
        F = self.field
        vec = np.zeros(self.scheme.n**2, dtype=np.int64)
        for c, col in zip(np.asarray(coords), self._B.T):
            if c:
                vec = F.add[vec, F.mul[int(c), col]]
        return vec.reshape(self.scheme.n, self.scheme.n)

    def coords_of(self, X):
        """Coordinates of X in the basis, or None if X is not in the span."""
        F = self.field
        vec = np.asarray(X, dtype=np.int64).reshape(-1)
        sol = linalg.solve(F, self._B, vec)
        if sol is None:
            return None
        # verify exactly (solve only guarantees consistency of the system)
        if not np.array_equal(linalg.mat_mul(F, self._B, sol.reshape(-1, 1)).ravel(), vec):
            return None
        return sol

    def contains(self, X) -> bool:
        return self.coords_of(X) is not None


_SCHEME_RE = re.compile(r"(gl|sl|sp)\((\d+)\)")


@lru_cache(maxsize=None)
def parse_scheme(text: str) -> GroupScheme:
    m = _SCHEME_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse scheme descriptor: {text!r}")
    return GroupScheme(m.group(1), int(m.group(2)))
