"""Brute-force character-degree oracle: Dixon-Schneider tables over F_ell.

All character values live in the prime field F_ell where ell is the
smallest prime with ell = 1 (mod exponent(G)) and ell > 2*sqrt(|G|); only
degrees and restriction multiplicities (both bounded by sqrt(|G|)) are
lifted to integers.  The class-sum matrices M_i with (M_i)_{jk} = a_{ijk}
share a basis of common eigenvectors, one per irreducible character; the
basis is found by splitting eigenspaces of random F_ell-combinations.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np
import sympy

from .groups import ConjugacyClassData, conjugacy_classes

__all__ = [
    "ModularCharacterTable",
    "element_order",
    "group_exponent",
    "find_split_prime",
    "class_algebra_constants",
    "dixon_table",
    "restriction_multiplicities",
]

MAX_CLASSES = 300


class TableError(RuntimeError):
    pass


def element_order(G, x: int) -> int:
    k, y = 1, int(x)
    while y != G.identity:
        y = int(G.mul(y, x)[0])
        k += 1
    return k


def group_exponent(G, classes: ConjugacyClassData | None = None) -> int:
    classes = classes or conjugacy_classes(G)
    return math.lcm(*(element_order(G, int(r)) for r in classes.reps))


def find_split_prime(exponent: int, order: int, search_bound: int = 10_000_000) -> int:
    """Smallest prime ell = 1 (mod exponent) with ell > 2*sqrt(order)."""
    bound = 2 * math.isqrt(order)
    ell = exponent + 1
    while ell <= search_bound:
        if ell > bound and sympy.isprime(ell):
            return ell
        ell += exponent
    raise TableError(f"no split prime = 1 mod {exponent} below {search_bound}")


def class_algebra_constants(G, classes: ConjugacyClassData) -> np.ndarray:
    """a[i, j, k] = #{(x, y) in K_i x K_j : x*y = z_k} for the class reps z_k."""
    c = classes.num_classes
    a = np.zeros((c, c, c), dtype=np.int64)
    cls = classes.class_of
    inv_cls = cls[G.inv_ids]
    all_ids = np.arange(G.order, dtype=np.int64)
    xinv = G.inv_ids[all_ids]
    for k, z in enumerate(classes.reps):
        y = G.mul(xinv, np.array([z]))
        np.add.at(a[:, :, k], (cls, cls[y]), 1)
    # counting identity: sum_k a_ijk |K_k| = |K_i||K_j|
    if not np.array_equal(a @ classes.sizes, np.outer(classes.sizes, classes.sizes)):
        raise TableError("structure constants fail the counting identity")
    del inv_cls
    return a


# -- linear algebra over F_ell ----------------------------------------------

def _inv_mod(x, ell):
    return pow(int(x), ell - 2, ell)


def _rref_mod(A, ell):
    R = np.array(A, dtype=np.int64) % ell
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
        R[row] = R[row] * _inv_mod(R[row, col], ell) % ell
        for i in range(m):
            if i != row and R[i, col]:
                R[i] = (R[i] - R[i, col] * R[row]) % ell
        pivots.append(col)
        row += 1
    return R, pivots


def _nullspace_mod(A, ell):
    """Columns spanning the right nullspace of A over F_ell."""
    A = np.asarray(A)
    n = A.shape[1]
    R, pivots = _rref_mod(A, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[fc, bi] = 1
        for i, pc in enumerate(pivots):
            basis[pc, bi] = (-R[i, fc]) % ell
    return basis


def _restrict_action(M, B, ell):
    """A with M @ B = B @ A (B has full column rank)."""
    d = B.shape[1]
    aug = np.concatenate([B, M @ B % ell], axis=1)
    R, pivots = _rref_mod(aug, ell)
    if pivots[:d] != list(range(d)):
        raise TableError("subspace basis is rank-deficient")
    return R[:d, d:]


def _charpoly_mod(A, ell):
    """Characteristic polynomial coefficients (leading first) over F_ell,
    via Hessenberg reduction; no constraints relating ell and the size."""
    H = np.array(A, dtype=np.int64) % ell
    d = H.shape[0]
    for j in range(d - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if len(nz) == 0:
            continue
        pr = j + 1 + int(nz[0])
        if pr != j + 1:
            H[[j + 1, pr]] = H[[pr, j + 1]]
            H[:, [j + 1, pr]] = H[:, [pr, j + 1]]
        inv = _inv_mod(H[j + 1, j], ell)
        for r in range(j + 2, d):
            if H[r, j]:
                f = H[r, j] * inv % ell
                H[r] = (H[r] - f * H[j + 1]) % ell
                H[:, j + 1] = (H[:, j + 1] + f * H[:, r]) % ell
    # recurrence on leading principal minors of xI - H
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, d + 1):
        # (x - H[m-1,m-1]) * p_{m-1}
        prev = polys[m - 1]
        p = np.zeros(m + 1, dtype=np.int64)
        p[:-1] = prev
        p[1:] = (p[1:] - H[m - 1, m - 1] * prev) % ell
        sub = 1
        for i in range(1, m):
            sub = sub * H[m - i, m - i - 1] % ell
            coef = H[m - 1 - i, m - 1] * sub % ell
            if coef:
                q = polys[m - 1 - i]
                p[m + 1 - len(q):] = (p[m + 1 - len(q):] - coef * q) % ell
        polys.append(p % ell)
    return polys[d]


def _roots_mod(coeffs, ell):
    """All roots in F_ell by vectorized Horner evaluation."""
    x = np.arange(ell, dtype=np.int64)
    acc = np.full(ell, int(coeffs[0]) % ell, dtype=np.int64)
    for c in coeffs[1:]:
        acc = (acc * x + int(c)) % ell
    return np.nonzero(acc == 0)[0]


# -- the table ---------------------------------------------------------------

class ModularCharacterTable:
    """Character values in F_ell, one row per irreducible, one column per
    conjugacy class; `degrees` are the lifted integer values at the identity."""

    def __init__(self, group, classes, ell, exponent, degrees, values, seed):
        self.group = group
        self.classes = classes
        self.ell = ell
        self.exponent = exponent
        self.degrees = degrees
        self.values = values
        self.seed = seed
        self.identity_class = int(classes.class_of[group.identity])
        self.inverse_class = classes.class_of[group.inv_ids[classes.reps]]
        self.primitive_root = sympy.primitive_root(ell)
        self.zeta = pow(self.primitive_root, (ell - 1) // exponent, ell)

    @property
    def num_chars(self) -> int:
        return len(self.degrees)

    def degree_multiset(self) -> Counter:
        return Counter(int(d) for d in self.degrees)

    def check_orthogonality(self) -> bool:
        ell = self.ell
        c = self.classes.num_classes
        V = self.values
        Vbar = V[:, self.inverse_class]
        # rows: sum_k |K_k| chi(k) chi'(k*) = delta |G|
        gram = V @ (Vbar * self.classes.sizes[None, :]).T % ell
        expect = np.zeros((c, c), dtype=np.int64)
        expect[np.arange(c), np.arange(c)] = self.group.order % ell
        if not np.array_equal(gram, expect):
            return False
        # columns: sum_chi chi(k) chi(k*) = |C(k)|
        col = (V * Vbar).sum(axis=0) % ell
        return np.array_equal(col, self.classes.centralizer_orders % ell)


def dixon_table(G, classes: ConjugacyClassData | None = None, seed: int = 0,
                max_classes: int = MAX_CLASSES) -> ModularCharacterTable:
    classes = classes or conjugacy_classes(G)
    c = classes.num_classes
    if c > max_classes:
        raise TableError(f"{c} classes exceeds the bound {max_classes}")
    exponent = group_exponent(G, classes)
    ell = find_split_prime(exponent, G.order)
    a = class_algebra_constants(G, classes) % ell  # a[i] is the matrix M_i

    rng = np.random.default_rng(seed)
    spaces = [np.eye(c, dtype=np.int64)]
    for _ in range(200):
        if all(B.shape[1] == 1 for B in spaces):
            break
        coeffs = rng.integers(0, ell, size=c)
        M = np.tensordot(coeffs, a, axes=(0, 0)) % ell
        refined = []
        for B in spaces:
            if B.shape[1] == 1:
                refined.append(B)
                continue
            A = _restrict_action(M, B, ell)
            for lam in _roots_mod(_charpoly_mod(A, ell), ell):
                K = _nullspace_mod((A - lam * np.eye(len(A), dtype=np.int64)) % ell, ell)
                if K.shape[1]:
                    refined.append(B @ K % ell)
        if sum(B.shape[1] for B in refined) != c:
            raise TableError("eigenspace splitting lost dimensions")
        spaces = refined
    else:
        raise TableError("eigenspace splitting stalled; retry with a new seed")

    id_class = int(classes.class_of[G.identity])
    inv_class = classes.class_of[G.inv_ids[classes.reps]]
    size_inv = np.array([_inv_mod(s % ell, ell) for s in classes.sizes], dtype=np.int64)
    sqrtG = math.isqrt(G.order)
    degrees = np.empty(c, dtype=np.int64)
    values = np.empty((c, c), dtype=np.int64)
    for t, B in enumerate(spaces):
        w = B[:, 0] % ell
        j = int(np.nonzero(w)[0][0])
        wj_inv = _inv_mod(w[j], ell)
        # omega(i) = eigenvalue of M_i: read off row j of M_i w
        omega = (a[:, j, :] @ w) % ell * wj_inv % ell
        s = int((omega * omega[inv_class] % ell * size_inv % ell).sum() % ell)
        d2 = G.order % ell * _inv_mod(s, ell) % ell
        root = sympy.ntheory.sqrt_mod(d2, ell)
        if root is None:
            raise TableError("degree is not a square mod ell")
        cand = [r for r in (root, ell - root) if 0 < r <= sqrtG]
        if len(cand) != 1:
            raise TableError("ambiguous degree lift")
        d = cand[0]
        degrees[t] = d
        values[t] = omega * d % ell * size_inv % ell

    if int((degrees**2).sum()) != G.order:
        raise TableError("degrees fail sum-of-squares")
    if np.any(values[:, id_class] != degrees % ell):
        raise TableError("identity column disagrees with degrees")
    order = np.lexsort(np.vstack([values.T[::-1], degrees]))
    table = ModularCharacterTable(G, classes, ell, exponent,
                                  degrees[order], values[order], seed)
    if not table.check_orthogonality():
        raise TableError("orthogonality check failed")
    if np.any(G.order % degrees[order]):
        raise TableError("a degree does not divide the group order")
    return table


def restriction_multiplicities(table: ModularCharacterTable, member_ids,
                               exponents, p: int) -> np.ndarray:
    """<chi|_N, psi> for every character, as lifted integers.

    `member_ids` are the subgroup's element ids in the table's group and
    `exponents` the psi-values as exponents in Z/p of the fixed primitive
    p-th root of unity zeta_p = g^((ell-1)/p).
    """
    ell = table.ell
    if (ell - 1) % p:
        raise TableError("p does not divide ell - 1")
    zeta_p = pow(table.primitive_root, (ell - 1) // p, ell)
    zpow = np.array([pow(zeta_p, j, ell) for j in range(p)], dtype=np.int64)
    member_ids = np.asarray(member_ids, dtype=np.int64)
    factor = zpow[(-np.asarray(exponents, dtype=np.int64)) % p]
    cls = table.classes.class_of[member_ids]
    n_inv = _inv_mod(len(member_ids) % ell, ell)
    m = (table.values[:, cls] * factor[None, :] % ell).sum(axis=1) % ell * n_inv % ell
    if np.any(m > math.isqrt(table.group.order)):
        raise TableError("multiplicity lift out of range")
    return m
