"""Prime fields, discrete logarithms and multiplicative characters.

Everything downstream evaluates characters through a PrimeContext: a prime p,
its smallest primitive root g, the full discrete-log table, and a table of the
(p-1)-th roots of unity, so that chi(x) is a pair of table lookups instead of
a trig call.  Character-sum kernels evaluate chi up to O(p^2 |I|) times, which
is why the tables are built once per modulus.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import IndexOutOfRange, NotPrime, TooLarge

DEFAULT_CONTEXT_LIMIT = 1 << 20  # dlog table is O(p) memory


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; fine at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = b"\x00" * len(range(q * q, n + 1, q))
    return [i for i, v in enumerate(sieve) if v]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def smallest_primitive_root(p: int) -> int:
    """Least g generating F_p^*; deterministic so dlog tables are reproducible."""
    phi = p - 1
    qs = prime_factors(phi)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in qs):
            return g
    raise NotPrime(f"no primitive root mod {p}; is it prime?")


class PrimeContext:
    """A prime p with primitive root, dlog table and unit-root table.

    Immutable after construction; characters only index into these tables, so
    one context serves every character mod p and is safe to share across
    threads.
    """

    __slots__ = ("p", "g", "dlog", "roots")

    def __init__(self, p: int, g: int, dlog: np.ndarray):
        self.p = p
        self.g = g
        # dlog[x] = k with g^k = x mod p; dlog[0] = -1 (unset)
        dlog.setflags(write=False)
        self.dlog = dlog
        roots = np.exp(2j * np.pi * np.arange(p - 1) / (p - 1))
        roots.setflags(write=False)
        self.roots = roots

    def __repr__(self):
        return f"PrimeContext(p={self.p}, g={self.g})"

    def character(self, k: int) -> "Character":
        if not 0 <= k <= self.p - 2:
            raise IndexOutOfRange(f"character index {k} outside [0, {self.p - 2}]")
        return Character(self, k)

    def legendre(self) -> "Character":
        """The quadratic character (unique character of order 2)."""
        return self.character((self.p - 1) // 2)

    def character_of_order(self, d: int) -> "Character":
        """A character of exact order d, for d dividing p-1."""
        if d < 1 or (self.p - 1) % d != 0:
            raise IndexOutOfRange(f"no character of order {d} mod {self.p}")
        return self.character((self.p - 1) // d if d > 1 else 0)


def make_context(p: int, limit: int = DEFAULT_CONTEXT_LIMIT) -> PrimeContext:
    """Build the evaluation substrate for F_p with the smallest primitive root."""
    if not is_prime(p) or p < 3:
        raise NotPrime(f"p={p} is not an odd prime")
    if p > limit:
        raise TooLarge(f"p={p} exceeds the context limit {limit}")
    g = smallest_primitive_root(p)
    dlog = np.full(p, -1, dtype=np.int64)
    acc = 1
    for k in range(p - 1):
        dlog[acc] = k
        acc = acc * g % p
    return PrimeContext(p, g, dlog)


class Character:
    """Multiplicative character mod p with index k: chi(g^j) = e(kj/(p-1)).

    chi(0) = 0 by convention and |chi(x)| = 1 off zero.  Sums of values are
    accumulated in double precision; the error of an n-term sum stays below
    n * 1e-13, which every comparison in the suite allows for.
    """

    __slots__ = ("context", "index", "__dict__")

    def __init__(self, context: PrimeContext, index: int):
        self.context = context
        self.index = index

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def order(self) -> int:
        return (self.p - 1) // math.gcd(self.index, self.p - 1)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    def conjugate(self) -> "Character":
        return Character(self.context, (self.p - 1 - self.index) % (self.p - 1))

    @cached_property
    def values(self) -> np.ndarray:
        """chi(x) for x = 0..p-1 as a read-only complex vector."""
        ctx = self.context
        vals = np.zeros(ctx.p, dtype=np.complex128)
        vals[1:] = ctx.roots[(self.index * ctx.dlog[1:]) % (ctx.p - 1)]
        vals.setflags(write=False)
        return vals

    def eval(self, x: int) -> complex:
        """chi(x) for a single field element."""
        x = x % self.p
        if x == 0:
            return 0j
        ctx = self.context
        return complex(ctx.roots[(self.index * int(ctx.dlog[x])) % (ctx.p - 1)])

    def __repr__(self):
        return f"Character(p={self.p}, index={self.index}, order={self.order})"
