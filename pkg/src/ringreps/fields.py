"""Exact arithmetic in small finite fields F_q, q = p^f with f <= 4.

Field elements are plain integers in [0, q).  The integer e encodes the
polynomial sum_i c_i x^i over F_p via its base-p digits, little-endian:
e = sum_i c_i p^i.  In particular the prime subfield F_p is encoded by the
integers 0..p-1 themselves, and 0/1 are the additive/multiplicative
identities.

All operations are backed by precomputed q x q numpy tables so that matrix
and group code can operate on whole arrays of element indices at once.
Extension fields use a fixed table of irreducible moduli so that runs are
reproducible bit-for-bit.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

__all__ = ["GaloisField", "IRREDUCIBLE_MODULI", "gf"]

# Fixed moduli for extension fields, little-endian coefficient tuples over
# F_p (constant term first, leading coefficient 1).  Verified irreducible at
# construction time.
IRREDUCIBLE_MODULI = {
    (2, 2): (1, 1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),    # x^4 + x + 1
    (3, 2): (1, 0, 1),          # x^2 + 1
    (3, 3): (1, 2, 0, 1),       # x^3 + 2x + 1
    (3, 4): (2, 0, 0, 2, 1),    # x^4 + 2x^3 + 2
    (5, 2): (1, 1, 1),          # x^2 + x + 1
    (5, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (5, 4): (1, 0, 1, 1, 1),    # x^4 + x^3 + x^2 + 1
}

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n in _SMALL_PRIMES:
        return True
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_divmod_rem(num, den, p):
    """Remainder of polynomial division over F_p (little-endian lists)."""
    rem = list(num)
    while True:
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(den):
            break
        c = rem[-1] * pow(den[-1], p - 2, p) % p
        shift = len(rem) - len(den)
        for i, x in enumerate(den):
            rem[shift + i] = (rem[shift + i] - c * x) % p
    return rem


def _check_irreducible(modulus, p):
    """Exhaustive factor check; fine for f <= 4."""
    f = len(modulus) - 1
    for deg in range(1, f // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=deg):
            div = list(coeffs) + [1]
            if not _poly_divmod_rem(modulus, div, p):
                return False
    return True


class GaloisField:
    """The field F_{p^f} with table-driven arithmetic on integer indices."""

    def __init__(self, p: int, f: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if f < 1 or f > 4:
            raise ValueError("extension degree must satisfy 1 <= f <= 4")
        if f == 1:
            modulus = (0, 1) if modulus is None else tuple(modulus)
        elif modulus is None:
            try:
                modulus = IRREDUCIBLE_MODULI[(p, f)]
            except KeyError:
                raise ValueError(f"no fixed modulus on record for p={p}, f={f}")
        else:
            modulus = tuple(m % p for m in modulus)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if f > 1 and not _check_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, f, q = self.p, self.f, self.q
        idx = np.arange(q)
        # digit matrix: coeffs[e, i] = i-th base-p digit of e
        digits = np.empty((q, f), dtype=np.int64)
        t = idx.copy()
        for i in range(f):
            digits[:, i] = t % p
            t //= p
        self.coeff_vectors = digits
        pow_p = p ** np.arange(f)

        da = digits[:, None, :]
        db = digits[None, :, :]
        self.add = (((da + db) % p) * pow_p).sum(axis=2).astype(np.int64)
        self.neg = (((-digits) % p) * pow_p).sum(axis=1).astype(np.int64)

        # multiplication: full convolution then reduce by the modulus
        conv = np.zeros((q, q, 2 * f - 1), dtype=np.int64)
        for i in range(f):
            for j in range(f):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        conv %= p
        # reduce degrees >= f using x^f = -(modulus - leading term)
        red = [-m % p for m in self.modulus[:-1]]
        for deg in range(2 * f - 2, f - 1, -1):
            c = conv[:, :, deg].copy()
            conv[:, :, deg] = 0
            for i, r in enumerate(red):
                conv[:, :, deg - f + i] = (conv[:, :, deg - f + i] + c * r) % p
        self.mul = (conv[:, :, :f] * pow_p).sum(axis=2).astype(np.int64)

        inv = np.full(q, -1, dtype=np.int64)
        for e in range(1, q):
            inv[e] = int(np.where(self.mul[e] == 1)[0][0])
        self.inv = inv

        # frobenius x -> x^p and absolute trace to F_p
        frob = np.array([self.pow(e, p) for e in range(q)], dtype=np.int64)
        self.frob = frob
        tr = np.zeros(q, dtype=np.int64)
        acc = idx.copy()
        for _ in range(f):
            tr = self.add[tr, acc]
            acc = frob[acc]
        assert np.all(tr < p), "trace must land in the prime subfield"
        self.trace = tr

    # -- scalar helpers ----------------------------------------------------

    def pow(self, e: int, n: int) -> int:
        r, b = 1, e
        while n:
            if n & 1:
                r = int(self.mul[r, b])
            b = int(self.mul[b, b])
            n >>= 1
        return r

    def frobenius(self, e: int, iterations: int = 1) -> int:
        x = e
        for _ in range(iterations % self.f):
            x = int(self.frob[x])
        return x

    def elements(self):
        return range(self.q)

    # -- descriptor text form ---------------------------------------------

    def _modulus_str(self) -> str:
        terms = []
        for i in range(self.f, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xi = "x" if i == 1 else f"x^{i}"
                terms.append(xi if c == 1 else f"{c}*{xi}")
        return "+".join(terms)

    def descriptor(self) -> str:
        if self.f == 1:
            return f"gf({self.q})"
        return f"gf({self.q};{self._modulus_str()})"

    def __repr__(self):
        return f"GaloisField({self.descriptor()})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))


@lru_cache(maxsize=None)
def gf(p: int, f: int = 1) -> GaloisField:
    """Cached constructor for the standard field with the fixed modulus."""
    return GaloisField(p, f)
