"""Brute-force reference implementations.

Each function here recomputes a quantity by literal enumeration, independent
of the spectral kernels it checks.  They are deliberately simple, bounded by
explicit work caps, and shared between the test suite and the `selftest` /
`counts` commands.
"""

from __future__ import annotations

import numpy as np

from .errors import WorkCapExceeded
from .field import Character
from .fpsets import FpSet


def additive_energy_brute(A: FpSet, cap: int = 10**8) -> int:
    """Literal quadruple count of a1 + a2 = a3 + a4 via broadcast enumeration."""
    el = A.elements()
    if el.size**4 > cap:
        raise WorkCapExceeded(f"{el.size}^4 quadruples exceed cap {cap}")
    s = ((el[:, None] + el[None, :]) % A.p).ravel()
    return int((s[:, None] == s[None, :]).sum())


def multiplicative_energy_brute(A: FpSet, cap: int = 10**8) -> int:
    """Literal quadruple count of a1 a2 = a3 a4."""
    el = A.elements()
    if el.size**4 > cap:
        raise WorkCapExceeded(f"{el.size}^4 quadruples exceed cap {cap}")
    s = ((el[:, None] * el[None, :]) % A.p).ravel()
    return int((s[:, None] == s[None, :]).sum())


def system_count_brute(A: FpSet, B: FpSet, C: FpSet, cap: int = 1 << 22) -> int:
    """Ten-tuple solution count of the two-equation ratio system.

    Enumerates, for every (a, a'), the full quadruple grid (b, c, b', c') of
    each equation block as a boolean mask; the blocks share only (a, a'), so
    the per-block counts multiply.
    """
    p = A.p
    work = len(A) ** 2 * len(B) ** 4 * len(C) ** 4
    if work > cap:
        raise WorkCapExceeded(f"system enumeration of {work} tuples > cap {cap}")
    sums = ((B.elements()[:, None] + C.elements()[None, :]) % p).ravel()
    total = 0
    for a in A.elements():
        for a2 in A.elements():
            mask = (sums[:, None] * int(a2) - sums[None, :] * int(a)) % p == 0
            n = int(mask.sum())
            total += n * n
    return total


def sextuple_count_brute(A: FpSet, B: FpSet, C: FpSet, cap: int = 10**7) -> int:
    """Six-loop count of a1(b1+c1) = a2(b2+c2) via all pairs of triples."""
    p = A.p
    n = len(A) * len(B) * len(C)
    if n * n > cap:
        raise WorkCapExceeded(f"{n}^2 triple pairs exceed cap {cap}")
    vals = (
        (A.elements()[:, None, None] * ((B.elements()[None, :, None] + C.elements()[None, None, :]) % p)) % p
    ).ravel()
    return int((vals[:, None] == vals[None, :]).sum())


def incidence_count_brute(A: FpSet, B: FpSet, S: FpSet, C: FpSet, cap: int = 10**7) -> int:
    """Four-loop count of s a = b + c."""
    p = A.p
    work = len(S) * len(A) * len(B) * len(C)
    if work > cap:
        raise WorkCapExceeded(f"{work} quadruples exceed cap {cap}")
    sa = ((S.elements()[:, None] * A.elements()[None, :]) % p).ravel()
    bc = ((B.elements()[:, None] + C.elements()[None, :]) % p).ravel()
    return int((sa[:, None] == bc[None, :]).sum())


def binary_sum_loop(A: FpSet, B: FpSet, chi: Character) -> complex:
    """Plain double loop over pairs, one chi.eval call per pair."""
    total = 0j
    for a in A.elements():
        for b in B.elements():
            total += chi.eval(int(a) + int(b))
    return total


def convolve_loop(f, g) -> list[int]:
    """Cyclic convolution by a double loop over supports, Python integers."""
    p = len(f)
    out = [0] * p
    for y in range(p):
        fy = int(f[y])
        if fy == 0:
            continue
        for z in range(p):
            gz = int(g[z])
            if gz:
                out[(y + z) % p] += fy * gz
    return out


def shift_norm_loop(conv, t: int, q: float) -> float:
    """||conv(. + t) - conv||_q recomputed with Python integer powers."""
    p = len(conv)
    if float(q).is_integer():
        qq = int(q)
        total = sum(abs(int(conv[(x + t) % p]) - int(conv[x])) ** qq for x in range(p))
        return float(total) ** (1.0 / qq)
    total = sum(abs(int(conv[(x + t) % p]) - int(conv[x])) ** q for x in range(p))
    return float(total) ** (1.0 / q)


def gap_proper_brute(p: int, a0: int, steps, bounds) -> bool:
    """Duplicate detection over the literal tuple enumeration."""
    import itertools

    seen = set()
    for xs in itertools.product(*(range(h) for h in bounds)):
        v = (a0 + sum(x * a for x, a in zip(xs, steps))) % p
        if v in seen:
            return False
        seen.add(v)
    return True
