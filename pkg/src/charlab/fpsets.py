"""Subsets of F_p as membership vectors, set algebra, spectra, norms, energies.

Sets are fixed-width boolean vectors rather than sorted lists: sumsets and
representation spectra then reduce to word-parallel shifts and bincounts, the
dominant kernel cost of the whole suite.  All values are immutable after
construction and every operation here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BadExponent,
    EmptyDivisorSet,
    EmptySet,
    ModulusMismatch,
    TooLarge,
)

DEFAULT_GAP_CAP = 1 << 24  # properness checking is O(prod H_j)

_CHUNK = 1 << 22  # outer-product chunking for pairwise kernels


@lru_cache(maxsize=64)
def inverse_table(p: int) -> np.ndarray:
    """inv[x] = x^{-1} mod p for x in [1, p-1]; inv[0] = 0 and must not be used."""
    inv = np.zeros(p, dtype=np.int64)
    if p > 1:
        inv[1] = 1 % p
    for x in range(2, p):
        inv[x] = (p - (p // x) * inv[p % x]) % p
    inv.setflags(write=False)
    return inv


class FpSet:
    """An immutable subset of F_p backed by a boolean membership vector."""

    __slots__ = ("p", "member", "size", "_elements")

    def __init__(self, p: int, member):
        member = np.array(member, dtype=bool)
        if member.shape != (p,):
            raise ValueError(f"membership vector must have length {p}")
        member.setflags(write=False)
        self.p = p
        self.member = member
        self.size = int(member.sum())
        self._elements = None

    @classmethod
    def from_elements(cls, p: int, elems) -> "FpSet":
        m = np.zeros(p, dtype=bool)
        el = np.asarray(list(elems), dtype=np.int64)
        if el.size:
            m[el % p] = True
        return cls(p, m)

    @classmethod
    def empty(cls, p: int) -> "FpSet":
        return cls(p, np.zeros(p, dtype=bool))

    @classmethod
    def full(cls, p: int) -> "FpSet":
        return cls(p, np.ones(p, dtype=bool))

    def elements(self) -> np.ndarray:
        """Sorted element array (cached, read-only)."""
        if self._elements is None:
            el = np.flatnonzero(self.member).astype(np.int64)
            el.setflags(write=False)
            self._elements = el
        return self._elements

    def indicator(self) -> np.ndarray:
        """0/1 integer vector of length p."""
        return self.member.astype(np.int64)

    def negate(self) -> "FpSet":
        """{-x mod p : x in A}"""
        m = np.zeros(self.p, dtype=bool)
        m[(-self.elements()) % self.p] = True
        return FpSet(self.p, m)

    def translate(self, t: int) -> "FpSet":
        """{x + t mod p : x in A}"""
        m = np.zeros(self.p, dtype=bool)
        m[(self.elements() + t) % self.p] = True
        return FpSet(self.p, m)

    def dilate(self, c: int) -> "FpSet":
        """{c * x mod p : x in A}"""
        m = np.zeros(self.p, dtype=bool)
        m[(self.elements() * (c % self.p)) % self.p] = True
        return FpSet(self.p, m)

    def __len__(self):
        return self.size

    def __contains__(self, x):
        return bool(self.member[x % self.p])

    def __eq__(self, other):
        return (
            isinstance(other, FpSet)
            and self.p == other.p
            and bool(np.array_equal(self.member, other.member))
        )

    def __hash__(self):
        return hash((self.p, self.member.tobytes()))

    def __and__(self, other):
        _same_modulus(self, other)
        return FpSet(self.p, self.member & other.member)

    def __or__(self, other):
        _same_modulus(self, other)
        return FpSet(self.p, self.member | other.member)

    def __repr__(self):
        return f"FpSet(p={self.p}, size={self.size})"


class Spectrum:
    """Nonnegative integer counts indexed by field elements.

    Houses every representation function in the suite; the total mass of a
    spectrum always equals the identity documented by the operation that
    produced it.
    """

    __slots__ = ("p", "counts")

    def __init__(self, p: int, counts):
        counts = np.array(counts, dtype=np.int64)
        if counts.shape != (p,):
            raise ValueError(f"count vector must have length {p}")
        if counts.min(initial=0) < 0:
            raise ValueError("spectrum counts must be nonnegative")
        counts.setflags(write=False)
        self.p = p
        self.counts = counts

    def mass(self) -> int:
        return int(self.counts.sum())

    def support(self) -> FpSet:
        return FpSet(self.p, self.counts > 0)

    def max(self) -> int:
        return int(self.counts.max(initial=0))

    def __getitem__(self, lam: int) -> int:
        return int(self.counts[lam % self.p])

    def __eq__(self, other):
        return (
            isinstance(other, Spectrum)
            and self.p == other.p
            and bool(np.array_equal(self.counts, other.counts))
        )

    def __repr__(self):
        return f"Spectrum(p={self.p}, mass={self.mass()})"


def _same_modulus(*sets) -> int:
    p = sets[0].p
    for s in sets[1:]:
        if s.p != p:
            raise ModulusMismatch(f"moduli differ: {p} vs {s.p}")
    return p


def _pairwise_values(a_el: np.ndarray, b_el: np.ndarray, op: str, p: int):
    """Yield chunks of (a `op` b) mod p over the full Cartesian product."""
    if a_el.size == 0 or b_el.size == 0:
        return
    if op == "/":
        inv = inverse_table(p)
        b_el = b_el[b_el != 0]  # divisor convention: b = 0 is skipped
        if b_el.size == 0:
            return
        b_val = inv[b_el]
    else:
        b_val = b_el
    rows = max(1, _CHUNK // max(1, b_val.size))
    for lo in range(0, a_el.size, rows):
        a = a_el[lo : lo + rows, None]
        if op == "+":
            yield (a + b_val[None, :]) % p
        elif op == "-":
            yield (a - b_val[None, :]) % p
        elif op in ("*", "/"):
            yield (a * b_val[None, :]) % p
        else:
            raise ValueError(f"unknown operation {op!r}")


def _combine(A: FpSet, B: FpSet, op: str) -> FpSet:
    p = _same_modulus(A, B)
    m = np.zeros(p, dtype=bool)
    for vals in _pairwise_values(A.elements(), B.elements(), op, p):
        m[vals.ravel()] = True
    return FpSet(p, m)


def sumset(A: FpSet, B: FpSet) -> FpSet:
    """Minkowski sumset {a + b mod p}."""
    return _combine(A, B, "+")


def difference(A: FpSet, B: FpSet) -> FpSet:
    """{a - b mod p}"""
    return _combine(A, B, "-")


def productset(A: FpSet, B: FpSet) -> FpSet:
    """{a * b mod p}"""
    return _combine(A, B, "*")


def quotientset(A: FpSet, B: FpSet) -> FpSet:
    """{a / b mod p : b != 0}; raises if the divisor set is contained in {0}."""
    _same_modulus(A, B)
    if all(int(b) == 0 for b in B.elements()):
        raise EmptyDivisorSet("quotient by a set contained in {0}")
    return _combine(A, B, "/")


def rep_spectrum(A: FpSet, B: FpSet, op: str) -> Spectrum:
    """Representation counts: counts[x] = #{(a, b) : a `op` b = x}.

    Total mass is |A||B| for +, -, * and |A||B \\ {0}| for / (divisors b = 0
    are skipped, not errors).
    """
    p = _same_modulus(A, B)
    counts = np.zeros(p, dtype=np.int64)
    for vals in _pairwise_values(A.elements(), B.elements(), op, p):
        counts += np.bincount(vals.ravel(), minlength=p)
    return Spectrum(p, counts)


def convolve(f, g) -> np.ndarray:
    """Cyclic convolution (f * g)(x) = sum_y f(y) g(x - y), exact integers."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.ndim != 1 or f.shape != g.shape:
        raise ModulusMismatch("convolution operands must share one modulus")
    if not (np.issubdtype(f.dtype, np.integer) and np.issubdtype(g.dtype, np.integer)):
        raise ValueError("convolve expects integer-valued functions")
    f = f.astype(np.int64)
    g = g.astype(np.int64)
    if np.count_nonzero(f) > np.count_nonzero(g):
        f, g = g, f  # convolution is commutative; iterate the sparser support
    out = np.zeros(f.shape[0], dtype=np.int64)
    for y in np.flatnonzero(f):
        out += f[y] * np.roll(g, y)
    return out


def lp_norm(f, q: float) -> float:
    """(sum_x |f(x)|^q)^(1/q) for q >= 1."""
    if q < 1:
        raise BadExponent(f"norm exponent must be >= 1, got {q}")
    a = np.abs(np.asarray(f, dtype=np.complex128))
    total = float((a**q).sum())
    return total ** (1.0 / q)


def additive_energy(A: FpSet) -> int:
    """Number of quadruples in A^4 with a1 + a2 = a3 + a4."""
    if len(A) == 0:
        raise EmptySet("additive energy of the empty set")
    r = rep_spectrum(A, A, "+").counts
    return int((r * r).sum())


def multiplicative_energy(A: FpSet) -> int:
    """Literal count of quadruples in A^4 with a1 a2 = a3 a4.

    The product spectrum already counts pairs hitting 0, so its squared-count
    sum includes the (2|A| - 1)^2 quadruples with a1 a2 = 0 = a3 a4 that occur
    when 0 is in A; no separate correction is needed to match the literal
    count.
    """
    if len(A) == 0:
        raise EmptySet("multiplicative energy of the empty set")
    r = rep_spectrum(A, A, "*").counts
    return int((r * r).sum())


@dataclass(frozen=True)
class PlunneckeReport:
    op: str
    lhs: int
    rhs: float
    holds: bool


def plunnecke_check(A: FpSet, B: FpSet, C: FpSet, op: str = "-") -> PlunneckeReport:
    """Triangle inequality |A -+ C| <= |A -+ B||B -+ C| / |B|; must always hold.

    The comparison is done in exact integers (lhs * |B| vs the product) so a
    borderline case can never fail by rounding.
    """
    _same_modulus(A, B, C)
    if len(A) == 0 or len(B) == 0 or len(C) == 0:
        raise EmptySet("triangle inequality needs nonempty sets")
    if op == "-":
        lhs = len(difference(A, C))
        ab, bc = len(difference(A, B)), len(difference(B, C))
    elif op == "+":
        lhs = len(sumset(A, C))
        ab, bc = len(sumset(A, B)), len(sumset(C, B))
    else:
        raise ValueError(f"op must be '+' or '-', got {op!r}")
    return PlunneckeReport(op, lhs, ab * bc / len(B), lhs * len(B) <= ab * bc)


@dataclass(frozen=True)
class Gap:
    """Generalized arithmetic progression a0 + {sum x_j a_j : 0 <= x_j < H_j}."""

    p: int
    a0: int
    steps: tuple
    bounds: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(a) for a in self.steps))
        object.__setattr__(self, "bounds", tuple(int(h) for h in self.bounds))
        if len(self.steps) != len(self.bounds) or not self.steps:
            raise ValueError("need matching, nonempty step and bound lists")
        if any(h < 1 for h in self.bounds):
            raise ValueError("bounds H_j must be >= 1")

    @property
    def dimension(self) -> int:
        return len(self.steps)

    def volume(self) -> int:
        return math.prod(self.bounds)


def _gap_sums(gap: Gap, cap: int) -> np.ndarray:
    if gap.volume() > cap:
        raise TooLarge(f"gap volume {gap.volume()} exceeds enumeration cap {cap}")
    sums = np.array([gap.a0 % gap.p], dtype=np.int64)
    for a, h in zip(gap.steps, gap.bounds):
        sums = ((sums[:, None] + (a * np.arange(h, dtype=np.int64))[None, :]) % gap.p).ravel()
    return sums


def gap_enumerate(gap: Gap, cap: int = DEFAULT_GAP_CAP) -> FpSet:
    """The set of all generated sums mod p."""
    m = np.zeros(gap.p, dtype=bool)
    m[_gap_sums(gap, cap)] = True
    return FpSet(gap.p, m)


def gap_is_proper(gap: Gap, cap: int = DEFAULT_GAP_CAP) -> bool:
    """Proper iff all prod(H_j) generated sums are distinct."""
    sums = _gap_sums(gap, cap)
    return int(np.unique(sums).size) == gap.volume()
