"""Exact linear algebra over Q and over prime fields.

Vectors are dense lists of Fraction/int; the workhorse is an incremental
row-echelon span (SpanQ) used for rank counting and for projecting onto a
complement of a spanned subspace.
"""

from __future__ import annotations

from fractions import Fraction


class SpanQ:
    """Incrementally built row-echelon basis of a rational subspace."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows = []  # reduced rows, one pivot each
        self.pivots = []  # pivot column of rows[k]
        self.pivot_set = set()

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residue of ``vec`` after subtracting its projection on the span."""
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(self.dim):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        v = self.reduce(vec)
        p = next((j for j in range(self.dim) if v[j]), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(self.dim):
                    if v[j]:
                        row[j] -= c * v[j]
        self.rows.append(v)
        self.pivots.append(p)
        self.pivot_set.add(p)
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def nonpivot_columns(self):
        return [j for j in range(self.dim) if j not in self.pivot_set]


class SpanMod:
    """Row-echelon span over Z/p for a fixed odd prime p."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.rows = []
        self.pivots = []

    @property
    def rank(self):
        return len(self.rows)

    def add(self, vec) -> bool:
        p = self.p
        v = [x % p for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                for j in range(self.dim):
                    if row[j]:
                        v[j] = (v[j] - c * row[j]) % p
        piv = next((j for j in range(self.dim) if v[j]), None)
        if piv is None:
            return False
        inv = pow(v[piv], -1, p)
        v = [(x * inv) % p for x in v]
        self.rows.append(v)
        self.pivots.append(piv)
        return True


def rank_exact(rows, dim):
    """Rank over Q of an iterable of vectors of length ``dim``."""
    span = SpanQ(dim)
    for r in rows:
        span.add(r)
    return span.rank


def rank_mod(rows, dim, p):
    span = SpanMod(dim, p)
    for r in rows:
        span.add(r)
    return span.rank


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd, lcm

    fracs = [Fraction(x) for x in vec]
    m = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * m) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers 64-bit inputs)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def derive_prime(seed: int) -> int:
    """Deterministic 62-bit prime derived from a seed."""
    n = (0x3FFF_FFFF_FFFF_FFC5 ^ (seed * 0x9E37_79B9_7F4A_7C15)) | (1 << 61) | 1
    n &= (1 << 62) - 1
    while not is_probable_prime(n):
        n += 2
    return n
