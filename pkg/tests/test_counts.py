import itertools

import numpy as np
import pytest

from charlab import (
    FpSet,
    element_ratio_spectrum,
    incidence_count,
    level_set,
    multiplicative_energy,
    sextuple_count,
    sum_pair_ratio_spectrum,
    sum_quotient_spectrum,
    sumset,
    system_count,
)
from charlab.errors import EmptySet, WorkCapExceeded, ZeroInSet
from charlab.oracles import (
    incidence_count_brute,
    sextuple_count_brute,
    system_count_brute,
)


def S(p, *elems):
    return FpSet.from_elements(p, elems)


def nz(spec):
    return {x: spec[x] for x in range(spec.p) if spec[x]}


def rand_set(rng, p, n, avoid_zero=False):
    pool = np.arange(1 if avoid_zero else 0, p)
    return FpSet.from_elements(p, rng.permutation(pool)[:n])


def test_sum_quotient_examples():
    assert nz(sum_quotient_spectrum(S(7, 1), S(7, 2))) == {1: 1}
    assert nz(sum_quotient_spectrum(S(7, 1, 2), S(7, 1))) == {1: 2, 3: 1, 5: 1}
    # B + C = {0}: the only divisor is excluded, spectrum is empty
    assert sum_quotient_spectrum(S(7, 1), S(7, 6)).mass() == 0


def test_sum_quotient_mass_identity():
    rng = np.random.default_rng(1)
    for _ in range(25):
        p = int(rng.choice([11, 13, 29]))
        B = rand_set(rng, p, int(rng.integers(1, 7)))
        C = rand_set(rng, p, int(rng.integers(1, 7)))
        f = sum_quotient_spectrum(B, C)
        SS = sumset(B, C)
        nonzero = len(SS) - (1 if 0 in SS else 0)
        assert f.mass() == len(B) * len(C) * nonzero
        if 0 not in SS:
            assert f.mass() == len(B) * len(C) * len(SS)


def test_pair_ratio_examples():
    assert nz(sum_pair_ratio_spectrum(S(7, 1), S(7, 2))) == {1: 1}
    assert nz(sum_pair_ratio_spectrum(S(5, 0, 1), S(5, 1))) == {1: 2, 2: 1, 3: 1}


def test_pair_ratio_mass_and_pointwise_bound():
    rng = np.random.default_rng(2)
    for _ in range(25):
        p = int(rng.choice([11, 13, 29]))
        B = rand_set(rng, p, int(rng.integers(1, 7)))
        C = rand_set(rng, p, int(rng.integers(1, 7)))
        g = sum_pair_ratio_spectrum(B, C)
        zero_pairs = len(B & C.negate())
        assert g.mass() == len(B) * len(C) * (len(B) * len(C) - zero_pairs)
        f = sum_quotient_spectrum(B, C)
        assert np.all(g.counts <= len(C) * f.counts)


def test_element_ratio_examples():
    assert nz(element_ratio_spectrum(S(7, 1, 2))) == {1: 2, 2: 1, 4: 1}
    assert nz(element_ratio_spectrum(S(7, 4))) == {1: 1}
    h = element_ratio_spectrum(S(101, 1, 2, 4))
    assert int((h.counts**2).sum()) == 19 == multiplicative_energy(S(101, 1, 2, 4))
    assert h.mass() == 9
    with pytest.raises(ZeroInSet):
        element_ratio_spectrum(S(7, 0, 1))
    with pytest.raises(EmptySet):
        element_ratio_spectrum(FpSet.empty(7))


def test_system_count_singleton():
    rep = system_count(S(5, 1), S(5, 1), S(5, 1))
    assert rep.total == rep.spectral == rep.reconciliation == 1
    assert rep.trivial == 0 and rep.zero_overlap == 0


def test_system_count_frozen_example():
    # brute force over the 2^2 * 2^4 * 2^4 = 1024 ten-tuples (precomputed)
    rep = system_count(S(5, 1, 2), S(5, 0, 1), S(5, 1, 4), direct=True)
    assert rep.total == 50
    assert rep.reconciliation == 50
    assert rep.zero_overlap == 1 and rep.trivial == 4 and rep.nontrivial == 46
    assert rep.spectral == 26  # differs from total exactly when Z > 0


def test_system_count_zero_overlap_collapse():
    rng = np.random.default_rng(3)
    found = 0
    for _ in range(40):
        p = int(rng.choice([5, 7, 11, 13]))
        A = rand_set(rng, p, int(rng.integers(1, 5)), avoid_zero=True)
        B = rand_set(rng, p, int(rng.integers(1, 5)))
        C = rand_set(rng, p, int(rng.integers(1, 5)))
        rep = system_count(A, B, C, direct=True)
        assert rep.total == rep.reconciliation == system_count_brute(A, B, C)
        if rep.zero_overlap == 0:
            assert rep.spectral == rep.total
            found += 1
    assert found > 0


def test_system_ten_tuple_micro_oracle():
    # literal itertools enumeration cross-checks the vectorized brute force
    p = 5
    A, B, C = S(p, 1, 2), S(p, 0, 1), S(p, 1, 4)
    total = 0
    for tup in itertools.product(
        A.elements(), A.elements(), *([B.elements()] * 2), *([C.elements()] * 2),
        *([B.elements()] * 2), *([C.elements()] * 2),
    ):
        a, a2, b1, b1p, c1, c1p, b2, b2p, c2, c2p = (int(v) for v in tup)
        if ((b1 + c1) * a2 - (b1p + c1p) * a) % p == 0 and (
            (b2 + c2) * a2 - (b2p + c2p) * a
        ) % p == 0:
            total += 1
    assert total == system_count_brute(A, B, C) == 50


def test_system_count_validation():
    with pytest.raises(ZeroInSet):
        system_count(S(5, 0, 1), S(5, 1), S(5, 1))
    big = FpSet.from_elements(101, range(1, 30))
    with pytest.raises(WorkCapExceeded):
        system_count(big, big, big, direct=True)
    # spectral-only mode has no cap
    rep = system_count(S(5, 1, 2), S(5, 0, 1), S(5, 1, 4), direct=False)
    assert rep.total == rep.reconciliation == 50 and not rep.direct


def test_sextuple_examples():
    assert sextuple_count(S(7, 1), S(7, 2), S(7, 3)).count == 1
    assert sextuple_count(S(7, 1), S(7, 0, 1), S(7, 0, 1)).count == 6


def test_sextuple_oracle():
    rng = np.random.default_rng(4)
    for _ in range(25):
        p = int(rng.choice([29, 53]))
        A = rand_set(rng, p, int(rng.integers(1, 8)))
        B = rand_set(rng, p, int(rng.integers(1, 8)))
        C = rand_set(rng, p, int(rng.integers(1, 8)))
        rep = sextuple_count(A, B, C)
        assert rep.count == sextuple_count_brute(A, B, C)
        assert rep.bound_ratio == pytest.approx(rep.count / rep.bound)
    with pytest.raises(EmptySet):
        sextuple_count(FpSet.empty(7), S(7, 1), S(7, 1))


def test_incidence_examples():
    A, B = S(7, 1, 2, 4), S(7, 2, 4, 5)
    r = incidence_count(A, B, S(7, 1), S(7, 0))  # line y = x
    assert r.incidences == len(A & B)
    r = incidence_count(S(7, 0, 1), S(7, 0, 1), S(7, 1), S(7, 0, 1))
    assert r.incidences == 3 and r.n == 4 and r.m == 2
    r = incidence_count(FpSet.empty(7), S(7, 1), S(7, 1), S(7, 1))
    assert r.incidences == 0 and r.n == 0


def test_incidence_oracle():
    rng = np.random.default_rng(5)
    for _ in range(25):
        p = int(rng.choice([29, 53]))
        A = rand_set(rng, p, int(rng.integers(1, 8)))
        B = rand_set(rng, p, int(rng.integers(1, 8)))
        Sl = rand_set(rng, p, int(rng.integers(1, 8)))
        C = rand_set(rng, p, int(rng.integers(1, 8)))
        rep = incidence_count(A, B, Sl, C)
        assert rep.incidences == incidence_count_brute(A, B, Sl, C)
        assert rep.m == len(Sl) * len(C)  # distinct (s, c) are distinct lines


def test_level_set():
    f = sum_quotient_spectrum(S(7, 1, 2), S(7, 1))
    assert len(level_set(f, 0)) == 7  # counts >= 0 everywhere
    assert level_set(f, 1) == f.support()
    assert level_set(f, 2) == S(7, 1)
    assert len(level_set(f, f.max() + 1)) == 0
    assert level_set(f, 1, restrict=S(7, 1, 6)) == S(7, 1)
    taus = [0, 1, 2, 3]
    sets = [level_set(f, t) for t in taus]
    for small, big in zip(sets[1:], sets):
        assert np.all(small.member <= big.member)
