"""Finite local rings: F_q[t]/t^r, Z/p^r and Witt vectors of length two.

Every ring element is an integer index in [0, size).  Encodings are chosen
so that index order coincides with lexicographic order on the coordinate
vectors:

* ``TruncatedPolyRing``: coordinates (c_0, ..., c_{r-1}) with respect to
  1, t, ..., t^{r-1}; index = sum_i c_i * q^(r-1-i)  (c_0 is the high digit).
* ``ZmodRing``: the element is the integer itself.
* ``Witt2Ring``: coordinates (a_0, a_1); index = a_0 * q + a_1.

As with :class:`~ringreps.fields.GaloisField`, all arithmetic is table
driven and therefore trivially safe to share between workers: the tables
are written once at construction and never mutated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import numpy as np

from .fields import GaloisField, gf

__all__ = [
    "LocalRing",
    "TruncatedPolyRing",
    "ZmodRing",
    "Witt2Ring",
    "RingElement",
    "RingMismatchError",
    "classify_local_ring",
    "frobenius_ring_auto",
    "parse_ring",
    "residue_ring",
]


class RingMismatchError(ValueError):
    """Raised when elements of different rings are combined."""


class LocalRing:
    """Common interface: integer-indexed elements plus numpy op tables.

    Attributes set by subclasses:
      field    -- residue GaloisField
      length   -- r (maximal ideal m satisfies m^r = 0)
      size     -- number of elements
      char     -- additive order of 1
      add, mul, neg -- numpy tables (size x size / size)
      inv      -- inverse table, -1 on non-units
      residue  -- element index -> residue field index
      lift     -- residue field index -> element index (a section of residue)
    """

    field: GaloisField
    length: int
    size: int
    char: int
    kind: str

    def _finish(self):
        r = self
        q = r.field.q
        units = r.residue != 0
        r.zero = 0
        r.one = int(r.lift[1])
        assert r.residue[r.one] == 1
        inv = np.full(r.size, -1, dtype=np.int64)
        for e in np.nonzero(units)[0]:
            inv[e] = int(np.where(r.mul[e] == r.one)[0][0])
        r.inv = inv
        r.num_units = int(units.sum())
        assert r.num_units == q ** (r.length - 1) * (q - 1)
        if r.length == 2:
            # section F_q -> m used by exp; additive by construction
            sec = self._kernel_section()
            r.kernel_section = sec
            inv_sec = np.full(r.size, -1, dtype=np.int64)
            inv_sec[sec] = np.arange(q)
            r.kernel_section_inv = inv_sec

    def is_unit(self, e: int) -> bool:
        return self.inv[e] >= 0

    def element(self, index: int) -> "RingElement":
        return RingElement(self, int(index))

    def elements(self):
        return (RingElement(self, i) for i in range(self.size))

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


class TruncatedPolyRing(LocalRing):
    """F_q[t]/t^r (equal characteristic; r = 1 gives the field itself)."""

    kind = "truncpoly"

    def __init__(self, field: GaloisField, r: int):
        if r < 1:
            raise ValueError("length must be >= 1")
        self.field = field
        self.length = r
        q = field.q
        self.size = q**r
        self.char = field.p

        n = self.size
        idx = np.arange(n)
        # digit i = coefficient of t^i; index is big-endian in t-degree
        digits = np.empty((n, r), dtype=np.int64)
        t = idx.copy()
        for i in range(r - 1, -1, -1):
            digits[:, i] = t % q
            t //= q
        weights = q ** np.arange(r - 1, -1, -1)

        F = field
        add = np.zeros((n, n), dtype=np.int64)
        mul = np.zeros((n, n), dtype=np.int64)
        for i in range(r):
            add += F.add[digits[:, None, i], digits[None, :, i]] * weights[i]
            for j in range(r - i):
                mul_ij = F.mul[digits[:, None, i], digits[None, :, j]]
                # accumulate coefficient of t^(i+j) with field addition
                k = i + j
                cur = (mul // weights[k]) % q
                mul += (F.add[cur, mul_ij] - cur) * weights[k]
        self.add = add
        self.mul = mul
        self.neg = (F.neg[digits] * weights).sum(axis=1)
        self.residue = digits[:, 0].copy()
        self.lift = np.arange(q) * weights[0]
        self._digits = digits
        self._weights = weights
        self._finish()

    def _kernel_section(self):
        return np.arange(self.field.q)  # x -> t*x, i.e. digit c_1 = x

    def coordinates(self, e: int):
        return tuple(int(c) for c in self._digits[e])

    def descriptor(self) -> str:
        if self.length == 1:
            return self.field.descriptor()
        return f"truncpoly({self.field.descriptor()},r={self.length})"


class ZmodRing(LocalRing):
    """Z/p^r."""

    kind = "zmod"

    def __init__(self, p: int, r: int):
        if r < 1:
            raise ValueError("length must be >= 1")
        self.field = gf(p)
        self.length = r
        m = p**r
        self.size = m
        self.char = m
        idx = np.arange(m)
        self.add = (idx[:, None] + idx[None, :]) % m
        self.mul = (idx[:, None] * idx[None, :]) % m
        self.neg = (-idx) % m
        self.residue = idx % p
        self.lift = np.arange(p)
        self._finish()

    def _kernel_section(self):
        p = self.field.p
        return np.arange(p) * p  # x -> p*x

    def coordinates(self, e: int):
        return (int(e),)

    def descriptor(self) -> str:
        return f"zmod({self.field.p}^{self.length})"


class Witt2Ring(LocalRing):
    """W_2(F_q): pairs with the universal length-two Witt sum/product.

    Sum:     (a0 + b0, a1 + b1 - sum_{i=1}^{p-1} (1/p)binom(p,i) a0^i b0^(p-i))
    Product: (a0*b0, a0^p*b1 + b0^p*a1)
    """

    kind = "witt2"

    def __init__(self, field: GaloisField):
        self.field = field
        self.length = 2
        q = field.q
        p = field.p
        self.size = q * q
        self.char = p * p

        idx = np.arange(self.size)
        a0, a1 = idx // q, idx % q
        F = field
        # sum-correction coefficients (1/p)*binom(p,i) mod p, computed over Z
        coeffs = [(math.comb(p, i) // p) % p for i in range(1, p)]
        pows = np.empty((p + 1, q), dtype=np.int64)
        pows[0] = 1
        for i in range(1, p + 1):
            pows[i] = F.mul[pows[i - 1], np.arange(q)]

        x0 = F.add[a0[:, None], a0[None, :]]
        corr = np.zeros((self.size, self.size), dtype=np.int64)
        for i, c in enumerate(coeffs, start=1):
            term = F.mul[pows[i][a0][:, None], pows[p - i][a0][None, :]]
            c_idx = c  # element of the prime subfield
            term = F.mul[c_idx, term]
            corr = F.add[corr, term]
        x1 = F.add[F.add[a1[:, None], a1[None, :]], F.neg[corr]]
        self.add = x0 * q + x1

        y0 = F.mul[a0[:, None], a0[None, :]]
        frob_a0 = pows[p][a0]
        y1 = F.add[F.mul[frob_a0[:, None], a1[None, :]], F.mul[frob_a0[None, :], a1[:, None]]]
        self.mul = y0 * q + y1

        # additive inverse by table scan (q^2 <= 625 at desk scale)
        neg = np.empty(self.size, dtype=np.int64)
        for e in range(self.size):
            neg[e] = int(np.where(self.add[e] == 0)[0][0])
        self.neg = neg
        self.residue = a0.copy()
        self.lift = np.arange(q) * q  # Teichmueller-style coordinate section (x, 0)
        self._finish()

    def _kernel_section(self):
        return np.arange(self.field.q)  # Verschiebung x -> (0, x)

    def teichmuller(self, x: int) -> int:
        return int(self.lift[x])

    def verschiebung(self, x: int) -> int:
        return int(self.kernel_section[x])

    def coordinates(self, e: int):
        return (int(e) // self.field.q, int(e) % self.field.q)

    def descriptor(self) -> str:
        return f"witt2({self.field.descriptor()})"


@total_ordering
@dataclass(frozen=True)
class RingElement:
    """Immutable value-type view of a ring element index."""

    ring: LocalRing
    index: int

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"elements of {self.ring.descriptor()} and {other.ring.descriptor()}"
            )

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, int(self.ring.add[self.index, other.index]))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, int(self.ring.mul[self.index, other.index]))

    def __neg__(self):
        return RingElement(self.ring, int(self.ring.neg[self.index]))

    def __sub__(self, other):
        return self + (-other)

    @property
    def coordinates(self):
        return self.ring.coordinates(self.index)

    @property
    def is_unit(self):
        return self.ring.is_unit(self.index)

    def reduce(self) -> int:
        """Image in the residue field (field element index)."""
        return int(self.ring.residue[self.index])

    def __lt__(self, other):
        self._check(other)
        return self.coordinates < other.coordinates


def residue_ring(ring: LocalRing) -> TruncatedPolyRing:
    """The residue field of `ring`, presented as a length-1 local ring."""
    return TruncatedPolyRing(ring.field, 1)


def classify_local_ring(ring: LocalRing):
    """Length-two classification: ('dual'|'witt', residue field).

    A length-two local ring has characteristic p (dual numbers over the
    residue field) or p^2 (Witt vectors of length two).
    """
    if ring.length != 2:
        raise ValueError("classification applies to length-two rings only")
    p = ring.field.p
    if ring.char == p:
        return ("dual", ring.field)
    assert ring.char == p * p
    return ("witt", ring.field)


def frobenius_ring_auto(ring: LocalRing, e: int, base_degree: int = 1) -> int:
    """Coordinatewise x -> x^(p^base_degree); fixes the ring over the base field."""
    F = ring.field
    if F.f % base_degree != 0:
        raise ValueError("base field degree must divide the residue degree")

    def fr(x):
        return F.frobenius(x, base_degree)

    if isinstance(ring, ZmodRing):
        return e
    if isinstance(ring, Witt2Ring):
        a0, a1 = ring.coordinates(e)
        return fr(a0) * F.q + fr(a1)
    coords = ring.coordinates(e)
    return int(sum(fr(c) * w for c, w in zip(coords, ring._weights)))


# -- descriptor text forms ---------------------------------------------------

_GF_RE = re.compile(r"gf\((\d+)(?:;([^)]*))?\)")


def _parse_modulus(text: str, p: int, f: int):
    coeffs = [0] * (f + 1)
    for term in text.replace(" ", "").split("+"):
        if "x" not in term:
            coeffs[0] = (coeffs[0] + int(term)) % p
            continue
        c_str, _, x_str = term.partition("x")
        c = int(c_str.rstrip("*")) if c_str.rstrip("*") else 1
        deg = int(x_str[1:]) if x_str.startswith("^") else 1
        coeffs[deg] = (coeffs[deg] + c) % p
    return tuple(coeffs)


def parse_field(text: str) -> GaloisField:
    m = _GF_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"not a field descriptor: {text!r}")
    q = int(m.group(1))
    p = min(d for d in range(2, q + 1) if q % d == 0)
    f = round(math.log(q, p))
    if p**f != q:
        raise ValueError(f"{q} is not a prime power")
    if m.group(2):
        return GaloisField(p, f, _parse_modulus(m.group(2), p, f))
    return gf(p, f)


@lru_cache(maxsize=None)
def _parse_ring_cached(text: str) -> LocalRing:
    text = text.strip()
    if text.startswith("gf("):
        return TruncatedPolyRing(parse_field(text), 1)
    m = re.fullmatch(r"truncpoly\((.*),r=(\d+)\)", text)
    if m:
        return TruncatedPolyRing(parse_field(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"zmod\((\d+)(?:\^(\d+))?\)", text)
    if m:
        return ZmodRing(int(m.group(1)), int(m.group(2) or 1))
    m = re.fullmatch(r"witt2\((.*)\)", text)
    if m:
        return Witt2Ring(parse_field(m.group(1)))
    raise ValueError(f"cannot parse ring descriptor: {text!r}")


def parse_ring(text: str) -> LocalRing:
    return _parse_ring_cached(text.strip())
