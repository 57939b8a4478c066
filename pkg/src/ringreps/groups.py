"""Enumerated matrix groups G(R) over finite local rings.

Enumeration follows a lift-and-correct strategy: the residue group G(F_q)
is found by scanning all matrices over the field, each point is lifted
coefficientwise to the ring and corrected to satisfy the defining equation,
and the fibers of the reduction map are filled in by multiplying with the
reduction-kernel elements.

Element ids are positions in the code-sorted element list, where the code
of a matrix is the big-endian row-major radix encoding of its entry
indices.  Since ring element indices are themselves lexicographic in the
coordinates, id order is lexicographic on row-major coordinate tuples, and
"minimal element" always refers to this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import batch_matmul, encode_mats
from .rings import LocalRing, TruncatedPolyRing, parse_ring
from .schemes import GroupScheme, LieAlgebraBasis, batch_adjugate, batch_det, parse_scheme

__all__ = [
    "BoundExceededError",
    "ConjugacyClassData",
    "KernelSubgroup",
    "MatrixGroup",
    "SubgroupView",
    "enumerate_points",
    "conjugacy_classes",
    "centralizer_of_element",
    "subgroup_closure",
    "derived_subgroup_ids",
]

_SCAN_LIMIT = 2_000_000


class BoundExceededError(RuntimeError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class InternalInvariantError(RuntimeError):
    pass


def _all_matrices(num_values: int, n: int) -> np.ndarray:
    """All n x n matrices with entries in [0, num_values), code order."""
    total = num_values ** (n * n)
    idx = np.arange(total)
    out = np.empty((total, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        out[:, k] = idx % num_values
        idx //= num_values
    return out.reshape(total, n, n)


class MatrixGroup:
    """Fully enumerated finite matrix group over a local ring."""

    def __init__(self, scheme: GroupScheme, ring: LocalRing, mats: np.ndarray):
        self.scheme = scheme
        self.ring = ring
        codes = encode_mats(np.ascontiguousarray(mats, dtype=np.int64), ring.size)
        order = np.argsort(codes)
        self.codes = codes[order]
        if len(self.codes) > 1 and np.any(np.diff(self.codes) == 0):
            raise InternalInvariantError("duplicate group elements")
        self.mats = np.ascontiguousarray(mats[order])
        n = scheme.n
        ident = np.full((n, n), ring.zero, dtype=np.int64)
        ident[np.arange(n), np.arange(n)] = ring.one
        self.identity_mat = ident
        self.identity = int(self.lookup(encode_mats(ident[None], ring.size))[0])
        det = batch_det(ring, self.mats)
        dinv = ring.inv[det]
        if np.any(dinv < 0):
            raise InternalInvariantError("non-invertible element enumerated")
        adj = batch_adjugate(ring, self.mats)
        inv_mats = ring.mul[dinv[:, None, None], adj]
        self.inv_ids = self.lookup(encode_mats(inv_mats, ring.size))
        self._classes = None
        self._residue_group = None
        self._rho_ids = None
        self._kernel = None

    # -- basic protocol ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.codes)

    def lookup(self, codes) -> np.ndarray:
        pos = np.searchsorted(self.codes, codes)
        if np.any(pos >= len(self.codes)) or np.any(self.codes[pos] != codes):
            raise KeyError("matrix is not a group element")
        return pos

    def mul(self, a, b) -> np.ndarray:
        a = np.atleast_1d(np.asarray(a, dtype=np.int64))
        b = np.atleast_1d(np.asarray(b, dtype=np.int64))
        if len(a) == 1 and len(b) > 1:
            a = np.full(len(b), a[0], dtype=np.int64)
        if len(b) == 1 and len(a) > 1:
            B = self.mats[int(b[0])]
        else:
            B = self.mats[b]
        prod = batch_matmul(self.mats[a], B, self.ring.add, self.ring.mul)
        return self.lookup(encode_mats(prod, self.ring.size))

    def conj(self, g, x) -> np.ndarray:
        """g x g^{-1}, vectorized over g."""
        g = np.atleast_1d(np.asarray(g, dtype=np.int64))
        x = np.atleast_1d(np.asarray(x, dtype=np.int64))
        gx = self.mul(g, x)
        return self.mul(gx, self.inv_ids[g])

    def descriptor(self) -> str:
        return f"{self.scheme.descriptor()}@{self.ring.descriptor()}"

    # -- structure ---------------------------------------------------------

    @property
    def classes(self) -> "ConjugacyClassData":
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    @property
    def residue_group(self) -> "MatrixGroup":
        if self._residue_group is None:
            if self.ring.length == 1:
                self._residue_group = self
            else:
                self._residue_group = enumerate_points(
                    self.scheme, TruncatedPolyRing(self.ring.field, 1)
                )
        return self._residue_group

    @property
    def rho_ids(self) -> np.ndarray:
        """Entrywise reduction: element id -> residue group element id."""
        if self._rho_ids is None:
            res = self.residue_group
            red = self.ring.residue[self.mats]
            self._rho_ids = res.lookup(encode_mats(red, res.ring.size))
        return self._rho_ids

    @property
    def kernel(self) -> "KernelSubgroup":
        if self._kernel is None:
            self._kernel = KernelSubgroup(self)
        return self._kernel

    def __repr__(self):
        return f"MatrixGroup({self.descriptor()}, order={self.order})"


@dataclass
class ConjugacyClassData:
    reps: np.ndarray  # minimal element id of each class
    sizes: np.ndarray
    class_of: np.ndarray  # element id -> class index
    centralizer_orders: np.ndarray

    @property
    def num_classes(self) -> int:
        return len(self.reps)


def conjugacy_classes(G) -> ConjugacyClassData:
    """Orbit partition under conjugation; representatives are class minima."""
    N = G.order
    class_of = np.full(N, -1, dtype=np.int64)
    all_ids = np.arange(N, dtype=np.int64)
    reps, sizes = [], []
    for x in range(N):
        if class_of[x] >= 0:
            continue
        members = np.unique(G.conj(all_ids, x))
        class_of[members] = len(reps)
        reps.append(x)
        sizes.append(len(members))
    reps = np.array(reps, dtype=np.int64)
    sizes = np.array(sizes, dtype=np.int64)
    if sizes.sum() != N or np.any(N % sizes):
        raise InternalInvariantError("conjugacy partition inconsistent")
    return ConjugacyClassData(reps, sizes, class_of, N // sizes)


def centralizer_of_element(G, x) -> np.ndarray:
    all_ids = np.arange(G.order, dtype=np.int64)
    xs = np.full(G.order, x, dtype=np.int64)
    return all_ids[G.mul(all_ids, xs) == G.mul(xs, all_ids)]


class SubgroupView:
    """A subgroup given by a sorted array of parent element ids.

    Exposes the same minimal protocol as MatrixGroup (order / identity /
    mul / inv_ids / conj), with local indices 0..order-1.
    """

    def __init__(self, parent, ids, check_closure: bool = False):
        self.parent = parent
        self.ids = np.unique(np.asarray(ids, dtype=np.int64))
        self.identity = int(np.searchsorted(self.ids, parent.identity))
        if self.ids[self.identity] != parent.identity:
            raise ValueError("subgroup must contain the identity")
        self.inv_ids = self._local(parent.inv_ids[self.ids])
        if check_closure:
            loc = np.arange(self.order)
            for a in loc:
                self.mul(np.full(self.order, a), loc)

    def _local(self, parent_ids):
        pos = np.searchsorted(self.ids, parent_ids)
        if np.any(pos >= len(self.ids)) or np.any(self.ids[pos] != parent_ids):
            raise InternalInvariantError("subgroup is not closed")
        return pos

    @property
    def order(self) -> int:
        return len(self.ids)

    def mul(self, a, b):
        a = np.atleast_1d(np.asarray(a, dtype=np.int64))
        b = np.atleast_1d(np.asarray(b, dtype=np.int64))
        return self._local(self.parent.mul(self.ids[a], self.ids[b]))

    def conj(self, g, x):
        g = np.atleast_1d(np.asarray(g, dtype=np.int64))
        x = np.atleast_1d(np.asarray(x, dtype=np.int64))
        gx = self.mul(g, x)
        return self.mul(gx, self.inv_ids[g])


class KernelSubgroup:
    """Congruence kernel of a length-two group, identified with Lie(G)(F_q).

    Elements are I + s(X) where s is the ring's additive section of the
    residue field into the maximal ideal (t*x, Verschiebung, or p*x).  For
    length two this is exactly the kernel of entrywise reduction
    intersected with G.  Coordinate keys are integers sum_i c_i q^i over
    the Lie basis coordinates c.
    """

    def __init__(self, group: MatrixGroup):
        if group.ring.length != 2:
            raise ValueError("kernel subgroup requires a length-two ring")
        self.group = group
        ring = group.ring
        field = ring.field
        self.basis = LieAlgebraBasis(group.scheme, field)
        d = self.basis.dim
        q = field.q
        n = group.scheme.n
        num = q**d
        keys = np.arange(num)
        coords = np.empty((num, d), dtype=np.int64)
        t = keys.copy()
        for i in range(d):
            coords[:, i] = t % q
            t //= q
        self.coords = coords
        # X matrices over the field for every coordinate vector
        X = np.zeros((num, n, n), dtype=np.int64)
        for i in range(d):
            X = field.add[X, field.mul[coords[:, i][:, None, None], self.basis.mats[i][None]]]
        ident = group.identity_mat
        kmats = ring.add[ident[None], ring.kernel_section[X]]
        self.exp_ids = group.lookup(encode_mats(kmats, ring.size))
        self.ids = np.sort(self.exp_ids)
        # sanity: this is the full entrywise-reduction kernel inside G
        rho = group.rho_ids
        red_kernel = np.nonzero(rho == group.residue_group.identity)[0]
        if not np.array_equal(self.ids, red_kernel):
            raise InternalInvariantError("exp image is not the reduction kernel")
        key_of = np.full(group.order, -1, dtype=np.int64)
        key_of[self.exp_ids] = keys
        self.key_of = key_of

    @property
    def order(self) -> int:
        return len(self.ids)

    def exp(self, coords) -> int:
        """Group element id of exp(sum c_i basis_i)."""
        q = self.group.ring.field.q
        key = 0
        for i, c in enumerate(np.asarray(coords, dtype=np.int64)):
            key += int(c) * q**i
        return int(self.exp_ids[key])

    def log(self, element_id: int) -> np.ndarray:
        key = int(self.key_of[element_id])
        if key < 0:
            raise ValueError("element is not in the congruence kernel")
        return self.coords[key]


def subgroup_closure(G, generator_ids) -> np.ndarray:
    """Sorted ids of the subgroup generated by the given elements."""
    gens = np.unique(np.asarray(generator_ids, dtype=np.int64))
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = np.array([G.identity], dtype=np.int64)
    while len(frontier):
        new = []
        for g in gens:
            prod = G.mul(frontier, np.full(len(frontier), g, dtype=np.int64))
            fresh = prod[~seen[prod]]
            if len(fresh):
                fresh = np.unique(fresh)
                seen[fresh] = True
                new.append(fresh)
        frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
    return np.nonzero(seen)[0]


def find_generators(G, sub_ids, rng=None) -> np.ndarray:
    """A small generating set of the subgroup given by sorted parent ids."""
    sub_ids = np.asarray(sub_ids, dtype=np.int64)
    target = len(sub_ids)
    gens: list[int] = []
    current = np.array([G.identity], dtype=np.int64)
    member = np.zeros(G.order, dtype=bool)
    member[current] = True
    for cand in sub_ids:
        if member[cand]:
            continue
        gens.append(int(cand))
        current = subgroup_closure(G, np.array(gens))
        member[:] = False
        member[current] = True
        if len(current) == target:
            break
    if len(current) != target:
        raise InternalInvariantError("generator search failed")
    return np.array(gens, dtype=np.int64)


def derived_subgroup_ids(G, sub_ids) -> np.ndarray:
    """Sorted parent ids of [S, S] for the subgroup S (normal closure of
    commutators of a generating set)."""
    sub_ids = np.asarray(sub_ids, dtype=np.int64)
    gens = find_generators(G, sub_ids)
    comms = []
    for a in gens:
        for b in gens:
            ab = G.mul(a, b)[0]
            ba = G.mul(b, a)[0]
            comms.append(G.mul(ab, G.inv_ids[ba])[0])
    seed = np.unique(np.array(comms, dtype=np.int64))
    while True:
        closure = subgroup_closure(G, seed)
        extra = []
        for g in gens:
            conj = G.conj(np.full(len(closure), g, dtype=np.int64), closure)
            outside = np.setdiff1d(conj, closure)
            if len(outside):
                extra.append(outside)
        if not extra:
            return closure
        seed = np.union1d(closure, np.concatenate(extra))


def enumerate_points(scheme: GroupScheme, ring: LocalRing, max_order: int = 100_000) -> MatrixGroup:
    """Enumerate G(R) completely (lift residue points, correct, fill fibers)."""
    field = ring.field
    n = scheme.n
    q = field.q
    if q ** (n * n) > _SCAN_LIMIT:
        raise BoundExceededError(
            f"residue scan of size {q**(n*n)} exceeds the limit {_SCAN_LIMIT}"
        )
    residue = TruncatedPolyRing(field, 1)
    all_res = _all_matrices(q, n)
    res_mats = all_res[scheme.contains(residue, all_res)]
    if ring.length == 1:
        if len(res_mats) > max_order:
            raise BoundExceededError(
                f"|{scheme.descriptor()}({ring.descriptor()})| = {len(res_mats)} "
                f"exceeds max_order={max_order}; rerun with --max-order {len(res_mats)}",
                required=len(res_mats),
            )
        return MatrixGroup(scheme, ring, res_mats)

    # reduction kernel of the scheme: elements congruent to I
    s = ring.size // q
    if s ** (n * n) > _SCAN_LIMIT:
        raise BoundExceededError(f"kernel scan of size {s**(n*n)} exceeds the limit")
    pre = np.empty((q, s), dtype=np.int64)
    for v in range(q):
        pre[v] = np.nonzero(ring.residue == v)[0]
    raw = _all_matrices(s, n)
    ident_res = np.zeros((n, n), dtype=np.int64)
    ident_res[np.arange(n), np.arange(n)] = 1
    kernel_cand = pre[ident_res[None], raw]
    if scheme.family == "gl":
        kmats = kernel_cand
    else:
        kmats = kernel_cand[scheme.contains(ring, kernel_cand)]
    fiber = len(kmats)
    expected_fiber = q ** ((ring.length - 1) * scheme.lie_dim)
    if fiber != expected_fiber:
        raise InternalInvariantError(
            f"kernel size {fiber} != q^((r-1)*dim) = {expected_fiber}"
        )
    order = len(res_mats) * fiber
    if order > max_order:
        raise BoundExceededError(
            f"|{scheme.descriptor()}({ring.descriptor()})| = {order} exceeds "
            f"max_order={max_order}; rerun with --max-order {order}",
            required=order,
        )

    lifts = ring.lift[res_mats]
    if scheme.family == "sl":
        det = batch_det(ring, lifts)
        dinv = ring.inv[det]
        if np.any(dinv < 0):
            raise InternalInvariantError("lifted determinant is not a unit")
        lifts[:, 0, :] = ring.mul[dinv[:, None], lifts[:, 0, :]]
    elif scheme.family == "sp":
        # correct each lift by searching its kernel coset for a point of Sp
        corrected = []
        for L in lifts:
            cand = batch_matmul(
                np.broadcast_to(L, kernel_cand.shape).copy(), kernel_cand,
                ring.add, ring.mul,
            )
            ok = np.nonzero(scheme.contains(ring, cand))[0]
            if len(ok) == 0:
                raise InternalInvariantError("symplectic lift correction failed")
            corrected.append(cand[ok[0]])
        lifts = np.array(corrected, dtype=np.int64)

    L, K = len(lifts), fiber
    A = np.repeat(lifts, K, axis=0)
    B = np.tile(kmats, (L, 1, 1))
    mats = batch_matmul(A, B, ring.add, ring.mul)
    return MatrixGroup(scheme, ring, mats)


@lru_cache(maxsize=32)
def group_from_descriptors(scheme_text: str, ring_text: str, max_order: int = 100_000) -> MatrixGroup:
    return enumerate_points(parse_scheme(scheme_text), parse_ring(ring_text), max_order)
