"""Character-sum evaluators: binary and ternary sums, complete sums over
products of linear factors, and the paired-shift moment with its explicit
bound.

Every evaluator exists in two independent routes (a direct pair/tuple loop
and a spectral route through representation functions); the routes must agree
within the double-precision budget, which the test suite enforces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySet, ModulusMismatch, TrivialCharacter, WorkCapExceeded
from .field import Character
from .fpsets import FpSet, convolve, rep_spectrum

DAVENPORT_DIRECT_CAP = 250_000  # p^2 cap: the direct route is O(p^2 |I|)
DAVENPORT_EXPANDED_CAP = 1 << 16  # |I|^(2r) complete sums
TERNARY_DIRECT_CAP = 1_000_000  # |A||B||C| cap for the triple loop


@dataclass(frozen=True)
class LinearFactorPoly:
    """f(x) = prod (x + t_i)^{e_i} with pairwise distinct roots t_i.

    Repeated roots passed to `of` are merged by adding exponents; exponents
    are never reduced mod p-1, because (x+t)^{p-1} still vanishes at x = -t
    and that zero must survive for the pole convention chi(0) = 0.
    """

    p: int
    factors: tuple  # ((root, exponent), ...) sorted by root

    @classmethod
    def of(cls, p: int, factors) -> "LinearFactorPoly":
        merged: dict[int, int] = {}
        for t, e in factors:
            t = int(t) % p
            e = int(e)
            if e < 1:
                raise ValueError("factor exponents must be >= 1")
            merged[t] = merged.get(t, 0) + e
        return cls(p, tuple(sorted(merged.items())))

    @property
    def num_roots(self) -> int:
        return len(self.factors)

    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def is_dth_power(self, d: int) -> bool:
        """True iff f = g^d for a polynomial g, i.e. d divides every exponent."""
        return all(e % d == 0 for _, e in self.factors)

    def __str__(self):
        return "*".join(f"(x+{t})^{e}" if e > 1 else f"(x+{t})" for t, e in self.factors)


def char_values_of_poly(chi: Character, poly: LinearFactorPoly) -> np.ndarray:
    """chi(f(x)) for all x in F_p, via exponent arithmetic in the dlog domain.

    dlog f(x) = sum e_i dlog(x + t_i) wherever no factor vanishes; any
    vanishing factor forces chi(f(x)) = 0.
    """
    ctx = chi.context
    p = ctx.p
    if poly.p != p:
        raise ModulusMismatch(f"polynomial mod {poly.p} vs character mod {p}")
    x = np.arange(p, dtype=np.int64)
    dl = np.zeros(p, dtype=np.int64)
    zero = np.zeros(p, dtype=bool)
    for t, e in poly.factors:
        xt = (x + t) % p
        zero |= xt == 0
        dl += e * ctx.dlog[xt]  # dlog[0] = -1 is garbage but masked below
    vals = ctx.roots[(chi.index * (dl % (p - 1))) % (p - 1)].copy()
    vals[zero] = 0
    return vals


def binary_sum(A: FpSet, B: FpSet, chi: Character, strategy: str = "spectral") -> complex:
    """sum_{a in A, b in B} chi(a + b).

    direct   -- sums chi over every pair;
    spectral -- weighs chi by the additive representation function of (A, B).
    The two agree within 1e-8 * |A||B|.
    """
    p = _check_modulus(chi, A, B)
    vals = chi.values
    if strategy == "direct":
        total = 0j
        b_el = B.elements()
        for a in A.elements():
            total += vals[(int(a) + b_el) % p].sum()
        return complex(total)
    if strategy == "spectral":
        return complex(np.dot(rep_spectrum(A, B, "+").counts, vals))
    raise ValueError(f"unknown strategy {strategy!r}")


def ternary_sum(
    A: FpSet,
    B: FpSet,
    C: FpSet,
    chi: Character,
    strategy: str = "spectral",
    direct_cap: int = TERNARY_DIRECT_CAP,
) -> complex:
    """sum over A x B x C of chi(a + b + c).

    The spectral route weighs chi by the triple convolution of the indicator
    functions, so C = {0} collapses to the spectral binary sum exactly (the
    convolution with the point mass at 0 is the identity, in integers).  The
    direct triple loop serves as the oracle for |A||B||C| within the cap.
    """
    p = _check_modulus(chi, A, B, C)
    vals = chi.values
    if strategy == "direct":
        work = len(A) * len(B) * len(C)
        if work > direct_cap:
            raise WorkCapExceeded(f"direct ternary loop of size {work} > cap {direct_cap}")
        total = 0j
        c_el = C.elements()
        for a in A.elements():
            for b in B.elements():
                total += vals[(int(a) + int(b) + c_el) % p].sum()
        return complex(total)
    if strategy == "spectral":
        conv = convolve(convolve(A.indicator(), B.indicator()), C.indicator())
        return complex(np.dot(conv, vals))
    raise ValueError(f"unknown strategy {strategy!r}")


def weil_sum(chi: Character, poly: LinearFactorPoly) -> complex:
    """Complete sum sum_{x in F_p} chi(f(x)) with chi(0) = 0 at the zeros of f."""
    if chi.is_trivial:
        raise TrivialCharacter("complete-sum bound needs a nontrivial character")
    return complex(char_values_of_poly(chi, poly).sum())


@dataclass(frozen=True)
class WeilReport:
    abs_sum: float
    bound: float
    applicable: bool
    holds: bool | None  # None when the d-th power exclusion applies


def weil_check(chi: Character, poly: LinearFactorPoly) -> WeilReport:
    """|sum chi(f(x))| against (m-1) sqrt(p) for f with m distinct roots.

    Applicable only when f is not a d-th power, d = order of chi; the bound
    then must hold.  A p * 1e-12 slack absorbs accumulated rounding, which
    matters only in the m = 1 case where the bound is exactly 0.
    """
    s = weil_sum(chi, poly)
    p = chi.p
    m = poly.num_roots
    bound = (m - 1) * math.sqrt(p)
    applicable = not poly.is_dth_power(chi.order)
    holds = (abs(s) <= bound + p * 1e-12) if applicable else None
    return WeilReport(abs(s), bound, applicable, holds)


def davenport_bound(p: int, s: int, r: int) -> float:
    """The explicit moment bound p^2 s^r r^{2r} + 4 r^2 p s^{2r}."""
    return float(p**2 * s**r * r ** (2 * r) + 4 * r**2 * p * s ** (2 * r))


def davenport_moment(
    chi: Character,
    I: FpSet,
    r: int,
    strategy: str = "direct",
    direct_cap: int = DAVENPORT_DIRECT_CAP,
    expanded_cap: int = DAVENPORT_EXPANDED_CAP,
) -> float:
    """sum_{u1, u2} |sum_{t in I} chi(u1 + t) conj(chi)(u2 + t)|^{2r}.

    direct    -- the u1, u2 double sum, O(p^2 |I|) via one Gram matrix;
    expanded  -- the algebraically identical form sum over 2r-tuples from I
                 of |sum_u chi(f(u))|^2 with f a product of linear factors
                 carrying exponents 1 and p-2.
    Terms with u + t = 0 contribute chi(0) = 0 on both routes, which is what
    makes them agree exactly.
    """
    if chi.is_trivial:
        raise TrivialCharacter("moment needs a nontrivial character")
    if r < 1:
        raise ValueError("moment order r must be >= 1")
    if len(I) == 0:
        raise EmptySet("moment over an empty shift set")
    p = _check_modulus(chi, I)
    if strategy == "direct":
        if p * p > direct_cap:
            raise WorkCapExceeded(f"p^2 = {p * p} exceeds direct cap {direct_cap}")
        V = chi.values[(np.arange(p, dtype=np.int64)[:, None] + I.elements()[None, :]) % p]
        gram = V @ V.conj().T
        mag2 = (gram * gram.conj()).real
        return float((mag2**r).sum())
    if strategy == "expanded":
        tuples = len(I) ** (2 * r)
        if tuples > expanded_cap:
            raise WorkCapExceeded(f"|I|^(2r) = {tuples} exceeds expanded cap {expanded_cap}")
        el = [int(t) for t in I.elements()]
        total = 0.0
        for tup in itertools.product(el, repeat=2 * r):
            factors = [(t, 1) for t in tup[:r]] + [(t, p - 2) for t in tup[r:]]
            inner = char_values_of_poly(chi, LinearFactorPoly.of(p, factors)).sum()
            total += float(abs(inner)) ** 2
        return total
    raise ValueError(f"unknown strategy {strategy!r}")


def _check_modulus(chi: Character, *sets) -> int:
    p = chi.p
    for s in sets:
        if s.p != p:
            raise ModulusMismatch(f"set mod {s.p} vs character mod {p}")
    return p
