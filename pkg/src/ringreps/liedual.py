"""The dual Lie algebra over F_q: functionals, coadjoint orbits, kernel
characters and their stabilizers, plus the good-prime tables.

A functional is a value vector over the Lie basis; its integer key is
sum_i v_i * q^i.  Character values are exponents in Z/p of a fixed
primitive p-th root of unity; the underlying additive character of F_q is
x -> absolute trace of x (an element of the prime field, i.e. an integer
in [0, p)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import KernelSubgroup, MatrixGroup
from .rings import Witt2Ring, ZmodRing
from .schemes import LieAlgebraBasis
from .unionfind import UnionFind

__all__ = [
    "DualSpace",
    "OrbitDecomposition",
    "psi_exponent_table",
    "character_stabilizer_ids",
    "predicted_stabilizer_ids",
    "is_good_prime",
    "is_very_good_prime",
]


class DualSpace:
    """g*(F_q) for a residue group, with the coadjoint action precomputed.

    For every residue-group element g we store the dim x dim matrix D_g
    over F_q such that the coadjoint action sends the value vector v to
    v @ D_g, where D_g[i, j] = coord_i(g^{-1} X_j g).
    """

    def __init__(self, res_group: MatrixGroup, basis: LieAlgebraBasis | None = None):
        assert res_group.ring.length == 1
        self.group = res_group
        self.field = res_group.ring.field
        self.basis = basis or LieAlgebraBasis(res_group.scheme, self.field)
        F = self.field
        d = self.basis.dim
        q = F.q
        self.dim = d
        self.size = q**d

        n = res_group.scheme.n
        mats = res_group.mats  # residue ring tables coincide with field tables
        inv = res_group.inv_ids
        D = np.empty((res_group.order, d, d), dtype=np.int64)
        from .kernels import batch_matmul

        for j in range(d):
            Xj = self.basis.mats[j]
            conj = batch_matmul(
                batch_matmul(mats[inv], Xj, F.add, F.mul), mats, F.add, F.mul
            )
            for g in range(res_group.order):
                coords = self.basis.coords_of(conj[g])
                if coords is None:
                    raise RuntimeError("Lie algebra is not Ad-stable")
                D[g, :, j] = coords
        self.action_matrices = D

        keys = np.arange(self.size)
        vals = np.empty((self.size, d), dtype=np.int64)
        t = keys.copy()
        for i in range(d):
            vals[:, i] = t % q
            t //= q
        self.values = vals
        self._weights = q ** np.arange(d)
        # action as permutations of functional keys, one per group element
        perms = np.empty((res_group.order, self.size), dtype=np.int64)
        for g in range(res_group.order):
            perms[g] = self._keys_of(self._apply(vals, D[g]))
        self.action_perms = perms

    def _apply(self, vals, Dg):
        F = self.field
        out = np.zeros_like(vals)
        for i in range(self.dim):
            out = F.add[out, F.mul[vals[:, i][:, None], Dg[i][None, :]]]
        return out

    def _keys_of(self, vals):
        return (vals * self._weights).sum(axis=1)

    def key_of(self, values) -> int:
        return int(sum(int(v) * w for v, w in zip(values, self._weights)))

    def coadjoint(self, g_id: int, values) -> np.ndarray:
        """Ad*(g) applied to a value vector."""
        v = np.asarray(values, dtype=np.int64)[None, :]
        return self._apply(v, self.action_matrices[g_id])[0]

    def sigma_star(self, values) -> np.ndarray:
        """Entrywise p-th power (the basis matrices live over the prime field)."""
        return self.field.frob[np.asarray(values, dtype=np.int64)]

    def sigma_star_inv(self, values) -> np.ndarray:
        out = np.asarray(values, dtype=np.int64)
        for _ in range(self.field.f - 1):
            out = self.field.frob[out]
        return out

    def pair(self, values, coords) -> int:
        """<beta, X> for X given by basis coordinates."""
        F = self.field
        acc = 0
        for v, c in zip(values, coords):
            acc = int(F.add[acc, F.mul[int(v), int(c)]])
        return acc

    def trace_form_matrix(self, values):
        """For gl_n: the matrix B with <beta, X> = Tr(B X) (basis = E_ij)."""
        if self.group.scheme.family != "gl":
            raise ValueError("trace-form coordinates are specific to gl_n")
        n = self.group.scheme.n
        # beta(E_ij) = Tr(B E_ij) = B[j, i]
        return np.asarray(values, dtype=np.int64).reshape(n, n).T.copy()

    def orbits(self, max_size: int = 1_000_000) -> "OrbitDecomposition":
        if self.size > max_size:
            from .groups import BoundExceededError

            raise BoundExceededError(
                f"orbit space of size {self.size} exceeds bound {max_size}",
                required=self.size,
            )
        uf = UnionFind(self.size)
        for perm in self.action_perms:
            uf.union_arrays(np.arange(self.size), perm)
        rep_of = uf.canonical_map()  # minimal key in each orbit
        rep_keys, inverse, sizes = np.unique(rep_of, return_inverse=True, return_counts=True)
        stab = np.empty(len(rep_keys), dtype=np.int64)
        for i, k in enumerate(rep_keys):
            stab[i] = int((self.action_perms[:, k] == k).sum())
        order = self.group.order
        if np.any(sizes * stab != order) or sizes.sum() != self.size:
            raise RuntimeError("orbit-stabilizer inconsistency")
        return OrbitDecomposition(rep_keys, sizes, stab, rep_of, inverse)

    def functional_centralizer_ids(self, values) -> np.ndarray:
        """Ids of residue-group elements fixing the functional."""
        key = self.key_of(values)
        return np.nonzero(self.action_perms[:, key] == key)[0]


@dataclass
class OrbitDecomposition:
    rep_keys: np.ndarray
    sizes: np.ndarray
    stab_orders: np.ndarray
    rep_of: np.ndarray      # functional key -> representative key
    orbit_index: np.ndarray  # functional key -> orbit number

    @property
    def num_orbits(self) -> int:
        return len(self.rep_keys)


def psi_exponent_table(dual: DualSpace, kernel: KernelSubgroup, values) -> np.ndarray:
    """psi_beta exponents in Z/p over all kernel coordinate keys.

    psi_beta(exp(X)) has exponent Tr_{F_q/F_p}(<beta, X>).
    """
    F = dual.field
    coords = kernel.coords  # (q^dim, dim)
    acc = np.zeros(len(coords), dtype=np.int64)
    for i in range(dual.dim):
        acc = F.add[acc, F.mul[int(values[i]), coords[:, i]]]
    return F.trace[acc]


def character_stabilizer_ids(group: MatrixGroup, dual: DualSpace, values) -> np.ndarray:
    """Brute-force stabilizer of psi_beta in the length-two group.

    Conjugation by g permutes the kernel; psi_beta^g = psi_beta is checked
    on a Z/p-module generating set exp(c * X_i), c running over a basis of
    F_q over F_p.
    """
    kernel = group.kernel
    psi = psi_exponent_table(dual, kernel, values)
    F = dual.field
    all_ids = np.arange(group.order, dtype=np.int64)
    keep = np.ones(group.order, dtype=bool)
    for i in range(dual.dim):
        for e in range(F.f):
            c = F.p**e  # field element with a single nonzero digit
            coords = np.zeros(dual.dim, dtype=np.int64)
            coords[i] = c
            u = kernel.exp(coords)
            target = psi[kernel.key_of[u]]
            conj = group.conj(all_ids[keep], u)
            keep_idx = np.nonzero(keep)[0]
            vals = psi[kernel.key_of[conj]]
            keep[keep_idx[vals != target]] = False
    return all_ids[keep]


def predicted_stabilizer_ids(group: MatrixGroup, dual: DualSpace, values) -> np.ndarray:
    """The closed-form stabilizer: preimage under reduction of C(f) where
    f = beta in equal characteristic and f = (sigma*)^{-1}(beta) in mixed."""
    ring = group.ring
    if isinstance(ring, (ZmodRing, Witt2Ring)):
        f_vals = dual.sigma_star_inv(values)
    else:
        f_vals = np.asarray(values, dtype=np.int64)
    cent = dual.functional_centralizer_ids(f_vals)
    mask = np.zeros(group.residue_group.order, dtype=bool)
    mask[cent] = True
    return np.nonzero(mask[group.rho_ids])[0]


def adjoint_coords(dual: DualSpace, res_id: int, coords) -> np.ndarray:
    """Coordinates of Ad(g)X = g X g^{-1} for g in the residue group."""
    F = dual.field
    A = dual.action_matrices[dual.group.inv_ids[res_id]]
    c = np.asarray(coords, dtype=np.int64)
    out = np.zeros(dual.dim, dtype=np.int64)
    for j in range(dual.dim):
        out = F.add[out, F.mul[A[:, j], int(c[j])]]
    return out


def frobenius_res_id(dual: DualSpace, res_id: int) -> int:
    """Entrywise p-th power, as a permutation of the residue group."""
    from .kernels import encode_mats

    res = dual.group
    mat = dual.field.frob[res.mats[res_id]]
    return int(res.lookup(encode_mats(mat[None], res.ring.size))[0])


def check_twist_law(group: MatrixGroup, dual: DualSpace, n_samples: int = 1000,
                    seed: int = 0) -> dict:
    """Sample the conjugation law g exp(X) g^{-1} = exp(Ad(sigma^i(gbar)) X).

    i = 0 over equal-characteristic rings and i = 1 over mixed; also counts
    how often the *other* twist exponent fails, to show the declared one is
    forced (over prime fields the two coincide).
    """
    rng = np.random.default_rng(seed)
    kernel = group.kernel
    twist = 1 if isinstance(group.ring, (ZmodRing, Witt2Ring)) else 0
    q = dual.field.q
    failures = 0
    other_failures = 0
    for _ in range(n_samples):
        g = int(rng.integers(group.order))
        c = rng.integers(0, q, size=dual.dim)
        u = kernel.exp(c)
        lhs = int(group.conj(g, u)[0])
        gbar = int(group.rho_ids[g])
        sides = []
        for i in (twist, 1 - twist):
            h = frobenius_res_id(dual, gbar) if i == 1 else gbar
            sides.append(kernel.exp(adjoint_coords(dual, h, c)))
        if lhs != sides[0]:
            failures += 1
        if lhs != sides[1]:
            other_failures += 1
    return {"twist": twist, "samples": n_samples, "failures": failures,
            "other_twist_failures": other_failures}


# -- good and very good primes ----------------------------------------------

_TYPES = {"A", "B", "C", "D", "G", "F", "E"}


def _check_type(letter: str, rank: int):
    if letter not in _TYPES:
        raise ValueError(f"unknown Cartan type {letter!r}")
    if letter == "G" and rank != 2 or letter == "F" and rank != 4:
        raise ValueError(f"no type {letter}{rank}")
    if letter == "E" and rank not in (6, 7, 8):
        raise ValueError(f"no type {letter}{rank}")
    if rank < 1:
        raise ValueError("rank must be positive")


def is_good_prime(letter: str, rank: int, p: int) -> bool:
    _check_type(letter, rank)
    if letter == "A":
        return True
    if letter in ("B", "C", "D"):
        return p != 2
    if letter == "E" and rank == 8:
        return p > 5
    return p > 3  # G2, F4, E6, E7


def is_very_good_prime(letter: str, rank: int, p: int) -> bool:
    if not is_good_prime(letter, rank, p):
        return False
    if letter == "A":
        return (rank + 1) % p != 0
    return True
