"""Almost-period search for convolutions and the transfer-chain checks.

The almost-periodicity statement is existential; at desk scale we search
exhaustively over every base shift s in S and report the maximizer, so the
observed |T| can be compared against the predicted floor |S| (2K)^{-c q / eps^2}
(the constant c is a free knob, reported and never asserted).

Norms of shifted-convolution differences are accumulated in exact integer
arithmetic (convolutions of integer functions are integer valued) with the
q-th root taken last, so the membership test is free of accumulation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadEpsilon, BadExponent, EmptySet, ModulusMismatch, TrivialCharacter
from .field import Character
from .fpsets import FpSet, convolve, lp_norm, sumset


def shift_deviation_norm(conv: np.ndarray, t: int, q: float) -> float:
    """|| conv(. + t) - conv ||_q with exact integer accumulation for integer q."""
    d = np.roll(conv, -t).astype(np.int64) - conv
    if q == 2:
        return math.sqrt(float((d * d).sum()))
    if float(q).is_integer():
        qq = int(q)
        return float(sum(abs(int(v)) ** qq for v in d)) ** (1.0 / qq)
    ad = np.abs(d).astype(np.float64)
    return float((ad**q).sum()) ** (1.0 / q)


@dataclass(frozen=True)
class PeriodReport:
    shift: int  # the winning base shift s in S
    periods: FpSet  # T, a subset of S - s; always contains 0
    epsilon: float
    q: float
    norm_budget: float  # eps * |A| * ||f||_q
    max_deviation: float  # largest deviation norm attained over T
    predicted_floor: float  # |S| (2K)^{-c q / eps^2} for the configured c
    doubling: float  # K = |A + S| / |A|


def cs_period_search(
    A: FpSet,
    S: FpSet,
    f,
    epsilon: float,
    q: float,
    floor_constant: float = 1.0,
) -> PeriodReport:
    """Find s in S and T inside S - s whose shifts move f * A little in L_q.

    T = {t in S - s : ||(f*A)(.+t) - (f*A)||_q <= eps |A| ||f||_q}, computed
    exhaustively for every candidate s; the winner maximizes |T|, ties broken
    by the smallest s.  The zero shift always qualifies, so 0 is in T.
    """
    if len(A) == 0 or len(S) == 0:
        raise EmptySet("period search needs nonempty A and S")
    if not 0 < epsilon <= 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1], got {epsilon}")
    if q < 2:
        raise BadExponent(f"period norms need q >= 2, got {q}")
    p = A.p
    if S.p != p:
        raise ModulusMismatch(f"moduli differ: {p} vs {S.p}")
    f = np.asarray(f)
    if f.shape != (p,):
        raise ModulusMismatch("weight function must have length p")
    conv = convolve(f, A.indicator())
    budget = epsilon * len(A) * lp_norm(f, q)

    s_el = [int(s) for s in S.elements()]
    norms: dict[int, float] = {}
    for s in s_el:
        for sig in s_el:
            t = (sig - s) % p
            if t not in norms:
                norms[t] = shift_deviation_norm(conv, t, q)

    best_s, best_T = None, None
    for s in s_el:  # ascending, so ties keep the smallest s
        T = [(sig - s) % p for sig in s_el if norms[(sig - s) % p] <= budget]
        if best_T is None or len(T) > len(best_T):
            best_s, best_T = s, T

    periods = FpSet.from_elements(p, best_T)
    max_dev = max((norms[t] for t in best_T), default=0.0)
    K = len(sumset(A, S)) / len(A)
    floor = cs_floor(len(S), K, epsilon, q, floor_constant)
    return PeriodReport(best_s, periods, epsilon, q, budget, max_dev, floor, K)


def cs_floor(size_s: int, K: float, epsilon: float, q: float, c: float = 1.0) -> float:
    """|S| (2K)^{-c q / eps^2}: the predicted period count with constant c.

    Reported alongside the observed |T|, never asserted; the true constant in
    the exponent is unspecified.
    """
    return size_s * (2.0 * K) ** (-(c * q) / (epsilon * epsilon))


@dataclass(frozen=True)
class L1TransferReport:
    l1: float
    l2: float
    support_bound: float  # l2 * sqrt(2 |A + B|)
    holds: bool  # l1 <= support_bound; Cauchy-Schwarz, must always hold
    epsilon: float
    epsilon_budget: float  # eps * sqrt(2 L) |A||B| with L = |A+B|/|B|, informational


def l1_transfer_check(A: FpSet, B: FpSet, t: int, epsilon: float) -> L1TransferReport:
    """L1 vs L2 control of the shifted-convolution difference of A * B.

    The difference (A*B)(.+t) - (A*B) is supported on at most 2|A+B| points,
    so its L1 norm is bounded by the L2 norm times sqrt(2|A+B|).  `holds` is
    decided in exact integers ((sum |d|)^2 <= 2|A+B| sum d^2) so borderline
    equality cases cannot flip by rounding.
    """
    p = A.p
    if B.p != p:
        raise ModulusMismatch(f"moduli differ: {p} vs {B.p}")
    conv = convolve(A.indicator(), B.indicator())
    d = np.roll(conv, -(t % p)) - conv
    l1_int = int(np.abs(d).sum())
    l2sq_int = int((d * d).sum())
    size_ab = len(sumset(A, B)) if len(A) and len(B) else 0
    holds = l1_int * l1_int <= 2 * size_ab * l2sq_int
    l2 = math.sqrt(float(l2sq_int))
    eps_budget = epsilon * math.sqrt(2.0 * size_ab / len(B)) * len(A) * len(B) if len(B) else 0.0
    return L1TransferReport(
        float(l1_int), l2, l2 * math.sqrt(2.0 * size_ab), holds, epsilon, eps_budget
    )


@dataclass(frozen=True)
class ChainReport:
    lhs: complex  # sum over A x B of chi(a + b)
    shifted_sum: complex  # sum over t in T, x of (A*B)(x + t) chi(x)
    diff_sum: complex  # sum over t in T, x of ((A*B)(x) - (A*B)(x + t)) chi(x)
    l1_total: float  # sum over t in T of ||(A*B)(.+t) - (A*B)||_1
    identity_gap: float  # | |T| lhs - (shifted_sum + diff_sum) |
    chain_holds: bool  # |lhs| |T| <= |shifted_sum| + l1_total


def transfer_chain_verify(A: FpSet, B: FpSet, chi: Character, T: FpSet) -> ChainReport:
    """Verify the shift decomposition of the binary sum over a period set T.

    Identity: |T| sum_x (A*B)(x) chi(x) = sum_{t,x} (A*B)(x+t) chi(x)
                                         + sum_{t,x} ((A*B)(x) - (A*B)(x+t)) chi(x),
    exact in integers on the convolution side, so the gap is pure chi
    rounding.  The chain inequality replaces the second term by its L1 mass
    and must hold (triangle inequality); a 1e-9 * |A||B||T| slack covers the
    accumulated double-precision error.
    """
    if chi.is_trivial:
        raise TrivialCharacter("transfer chain needs a nontrivial character")
    if len(T) == 0:
        raise EmptySet("transfer chain needs a nonempty period set")
    p = A.p
    if B.p != p or T.p != p or chi.p != p:
        raise ModulusMismatch("transfer chain operands must share one modulus")
    conv = convolve(A.indicator(), B.indicator())
    vals = chi.values
    lhs = complex(np.dot(conv, vals))
    shifted = 0j
    diff = 0j
    l1_total = 0
    for t in T.elements():
        rolled = np.roll(conv, -int(t))
        shifted += complex(np.dot(rolled, vals))
        diff += complex(np.dot(conv - rolled, vals))
        l1_total += int(np.abs(conv - rolled).sum())
    gap = abs(len(T) * lhs - (shifted + diff))
    scale = max(1, len(A) * len(B) * len(T))
    chain_holds = abs(lhs) * len(T) <= abs(shifted) + float(l1_total) + 1e-9 * scale
    return ChainReport(lhs, shifted, diff, float(l1_total), gap, chain_holds)
