"""Counting machinery for the two-equation ratio system and its relatives:
lambda-spectra of sum quotients, the ten-tuple system count with its spectral
identity, sextuple counts, level sets, and point-line incidences for
Cartesian point sets.

The three spectra below count representations of a ratio lambda:

  sum_quotient_spectrum      lambda = (b + c) / s    over B x C x (B+C), s != 0
  sum_pair_ratio_spectrum    lambda = (b + c) / (b' + c')  with b' + c' != 0
  element_ratio_spectrum     lambda = a / a'         over A^2, 0 not in A

They decompose the solution count of the system
(b1+c1)/a = (b1'+c1')/a',  (b2+c2)/a = (b2'+c2')/a'.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySet, ModulusMismatch, WorkCapExceeded, ZeroInSet
from .fpsets import FpSet, Spectrum, _same_modulus, inverse_table, rep_spectrum, sumset

SYSTEM_DIRECT_CAP = 1 << 21  # |A|^2 |B|^4 |C|^4 budget for direct enumeration


def sum_quotient_spectrum(B: FpSet, C: FpSet) -> Spectrum:
    """counts[lam] = #{(b, c, s) in B x C x S : s != 0, lam = (b+c)/s}, S = B+C.

    Every triple with s != 0 lands on exactly one lambda, so the total mass is
    |B||C| * |S \\ {0}|; when 0 is not in S this is |B||C||S|.
    """
    p = _same_modulus(B, C)
    if len(B) == 0 or len(C) == 0:
        raise EmptySet("spectrum of empty sets")
    r = rep_spectrum(B, C, "+").counts
    inv = inverse_table(p)
    counts = np.zeros(p, dtype=np.int64)
    vs = np.flatnonzero(r)
    for s in sumset(B, C).elements():
        if s == 0:
            continue
        np.add.at(counts, (vs * inv[s]) % p, r[vs])
    return Spectrum(p, counts)


def sum_pair_ratio_spectrum(B: FpSet, C: FpSet) -> Spectrum:
    """counts[lam] = #{(b, b', c, c') : b' + c' != 0, lam = (b+c)/(b'+c')}.

    Pointwise bounded by |C| times the sum-quotient spectrum, because each
    nonzero s in B+C has at most |C| representations s = b' + c'.
    """
    p = _same_modulus(B, C)
    if len(B) == 0 or len(C) == 0:
        raise EmptySet("spectrum of empty sets")
    r = rep_spectrum(B, C, "+").counts
    inv = inverse_table(p)
    counts = np.zeros(p, dtype=np.int64)
    vs = np.flatnonzero(r)
    for v2 in vs:
        if v2 == 0:
            continue
        np.add.at(counts, (vs * inv[v2]) % p, r[vs] * r[v2])
    return Spectrum(p, counts)


def element_ratio_spectrum(A: FpSet) -> Spectrum:
    """counts[lam] = #{(a, a') in A^2 : lam = a/a'}; total mass |A|^2.

    Rejects 0 in A outright: silently dropping pairs would break the mass
    identity unpredictably, and the squared-count sum is the multiplicative
    energy only for zero-free sets.
    """
    if len(A) == 0:
        raise EmptySet("spectrum of an empty set")
    if 0 in A:
        raise ZeroInSet("element-ratio spectrum needs 0 outside A")
    p = A.p
    inv = inverse_table(p)
    el = A.elements()
    counts = np.zeros(p, dtype=np.int64)
    for a2 in el:
        np.add.at(counts, (el * inv[a2]) % p, 1)
    return Spectrum(p, counts)


@dataclass(frozen=True)
class SystemCountReport:
    total: int  # all ten-tuple solutions
    trivial: int  # all four pair sums vanish: |A|^2 Z^4
    nontrivial: int
    spectral: int  # sum over lam of g(lam)^2 h(lam)
    reconciliation: int  # sum over lam of h(lam) (g(lam) + Z^2)^2
    zero_overlap: int  # Z = |B intersect (-C)|
    direct: bool  # whether `total` came from direct enumeration


def system_count(
    A: FpSet,
    B: FpSet,
    C: FpSet,
    direct: bool | None = None,
    direct_cap: int = SYSTEM_DIRECT_CAP,
) -> SystemCountReport:
    """Count solutions of (b1+c1)/a = (b1'+c1')/a' and (b2+c2)/a = (b2'+c2')/a'
    over A^2 x B^4 x C^4 with 0 not in A.

    Rewriting both equations as a/a' = (b+c)/(b'+c') groups solutions by the
    common ratio: with g and h the pair-ratio and element-ratio spectra and
    Z = |B intersect (-C)|, the exact identity

        total = sum_lam h(lam) * (g(lam) + Z^2)^2

    bridges the vanishing-sum solutions (Z^2 per equation block and ratio)
    with the spectral count sum_lam g(lam)^2 h(lam), and the two coincide
    whenever Z = 0.  `direct=True` forces literal enumeration instead (within
    the cap); `direct=None` enumerates exactly when the work fits the cap.
    """
    p = _same_modulus(A, B, C)
    if 0 in A:
        raise ZeroInSet("the system divides by elements of A")
    g = sum_pair_ratio_spectrum(B, C).counts
    h = element_ratio_spectrum(A).counts
    Z = len(B & C.negate())
    z2 = Z * Z
    idx = np.flatnonzero(h)
    spectral = sum(int(g[i]) ** 2 * int(h[i]) for i in idx)
    recon = sum(int(h[i]) * (int(g[i]) + z2) ** 2 for i in idx)
    work = len(A) ** 2 * len(B) ** 4 * len(C) ** 4
    if direct is None:
        direct = work <= direct_cap
    if direct:
        if work > direct_cap:
            raise WorkCapExceeded(f"system enumeration of {work} tuples > cap {direct_cap}")
        total = _enumerate_system(A, B, C)
    else:
        total = recon
    trivial = len(A) ** 2 * Z**4
    return SystemCountReport(total, trivial, total - trivial, spectral, recon, Z, direct)


def _enumerate_system(A: FpSet, B: FpSet, C: FpSet) -> int:
    """Exhaustive ten-tuple count.

    For fixed (a, a') the two equation blocks involve disjoint variables, so
    the full enumeration is the quadruple mask (over all (b, c, b', c'))
    summed and squared; every entry of the implicit mask-product corresponds
    to exactly one ten-tuple.
    """
    p = A.p
    sums = ((B.elements()[:, None] + C.elements()[None, :]) % p).ravel()
    total = 0
    for a in A.elements():
        for a2 in A.elements():
            match = (sums[:, None] * int(a2) - sums[None, :] * int(a)) % p == 0
            n = int(match.sum())
            total += n * n
    return total


@dataclass(frozen=True)
class SextupleReport:
    count: int
    bound: float
    bound_ratio: float


def sextuple_count(A: FpSet, B: FpSet, C: FpSet) -> SextupleReport:
    """#{(a1, a2, b1, b2, c1, c2) : a1 (b1 + c1) = a2 (b2 + c2)}.

    Computed spectrally as sum_v q(v)^2 with q(v) = #{(a, b, c) : a(b+c) = v};
    a = 0 sends every (b, c) to v = 0.  The reported ratio divides by
    (|A||B||C|)^{3/2} + |A||B||C| max(|A|, |B|, |C|) with implied constant 1
    and is trend data, not a pass/fail bound.
    """
    p = _same_modulus(A, B, C)
    if len(A) == 0 or len(B) == 0 or len(C) == 0:
        raise EmptySet("sextuple count of empty sets")
    r = rep_spectrum(B, C, "+").counts
    vs = np.flatnonzero(r)
    q = np.zeros(p, dtype=np.int64)
    for a in A.elements():
        if a == 0:
            q[0] += len(B) * len(C)
        else:
            np.add.at(q, (vs * int(a)) % p, r[vs])
    count = int((q * q).sum())
    n = len(A) * len(B) * len(C)
    bound = float(n) ** 1.5 + n * max(len(A), len(B), len(C))
    return SextupleReport(count, bound, count / bound)


@dataclass(frozen=True)
class IncidenceReport:
    incidences: int
    n: int  # point count |A x B|
    m: int  # line count after (slope, intercept) deduplication
    bound: float
    bound_ratio: float


def incidence_count(A: FpSet, B: FpSet, S: FpSet, C: FpSet) -> IncidenceReport:
    """Incidences between the points A x B and the lines {s x = y + c}.

    incidences = #{(a, b, s, c) : s a = b + c}.  Lines are deduplicated by
    their (slope, intercept) canonical form, though distinct (s, c) pairs
    always give distinct lines here.  Empty families yield zero incidences.
    The ratio divides by n^{3/4} m^{2/3} + m + n (implied constant 1).
    """
    p = _same_modulus(A, B, S, C)
    n = len(A) * len(B)
    lines = {(int(s), (-int(c)) % p) for s in S.elements() for c in C.elements()}
    m = len(lines)
    if n == 0 or m == 0:
        return IncidenceReport(0, n, m, float(m + n), 0.0)
    r = rep_spectrum(B, C, "+").counts
    sa = (S.elements()[:, None] * A.elements()[None, :]) % p
    inc = int(r[sa].sum())
    bound = float(n) ** 0.75 * float(m) ** (2.0 / 3.0) + m + n
    return IncidenceReport(inc, n, m, bound, inc / bound)


def level_set(spec: Spectrum, tau: float, restrict: FpSet | None = None) -> FpSet:
    """{lam : counts[lam] >= tau}, intersected with `restrict` when given.

    Monotone: larger tau gives a subset.  tau <= 0 returns everything (counts
    are nonnegative); tau = 1 returns exactly the support.
    """
    m = spec.counts >= tau
    if restrict is not None:
        if restrict.p != spec.p:
            raise ModulusMismatch("restriction set has a different modulus")
        m = m & restrict.member
    return FpSet(spec.p, m)
