import numpy as np
import pytest

from charlab import (
    FpSet,
    Gap,
    additive_energy,
    convolve,
    difference,
    gap_enumerate,
    gap_is_proper,
    lp_norm,
    multiplicative_energy,
    plunnecke_check,
    productset,
    quotientset,
    rep_spectrum,
    sumset,
)
from charlab.errors import (
    BadExponent,
    EmptyDivisorSet,
    EmptySet,
    ModulusMismatch,
    TooLarge,
)
from charlab.oracles import (
    additive_energy_brute,
    gap_proper_brute,
    multiplicative_energy_brute,
)


def S(p, *elems):
    return FpSet.from_elements(p, elems)


def test_fpset_basics():
    A = S(7, 1, 3, 3, 8)  # 8 reduces to 1
    assert len(A) == 2
    assert 1 in A and 3 in A and 2 not in A
    assert list(A.elements()) == [1, 3]
    assert A == S(7, 1, 3)
    assert len(FpSet.full(7)) == 7
    assert len(FpSet.empty(7)) == 0


def test_set_transforms():
    A = S(7, 1, 2)
    assert A.negate() == S(7, 5, 6)
    assert A.translate(3) == S(7, 4, 5)
    assert A.dilate(3) == S(7, 3, 6)
    assert (A & S(7, 2, 3)) == S(7, 2)
    assert (A | S(7, 2, 3)) == S(7, 1, 2, 3)


def test_sumset_examples():
    assert sumset(S(7, 0, 1), S(7, 0, 2)) == S(7, 0, 1, 2, 3)
    assert quotientset(S(7, 1, 2, 4), S(7, 1)) == S(7, 1, 2, 4)
    assert productset(S(7, 1, 3), S(7, 2, 5)) == S(7, 2, 5, 6, 1)
    assert difference(S(7, 0, 1), S(7, 0, 1)) == S(7, 0, 1, 6)


def test_sumset_size_lower_bound():
    rng = np.random.default_rng(3)
    p = 53
    for _ in range(30):
        A = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 20)])
        B = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 20)])
        assert len(sumset(A, B)) >= max(len(A), len(B))


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        sumset(S(7, 1), S(11, 1))


def test_quotient_empty_divisor():
    with pytest.raises(EmptyDivisorSet):
        quotientset(S(7, 1), S(7, 0))


def test_rep_spectrum_examples():
    r = rep_spectrum(S(5, 0, 1), S(5, 0, 1), "+")
    assert [r[0], r[1], r[2]] == [1, 2, 1] and r.mass() == 4
    q = rep_spectrum(S(7, 1, 2), S(7, 1, 2), "/")
    assert {x: q[x] for x in range(7) if q[x]} == {1: 2, 2: 1, 4: 1}
    assert rep_spectrum(S(7, 1, 2), FpSet.empty(7), "+").mass() == 0


def test_rep_spectrum_mass_and_support():
    rng = np.random.default_rng(5)
    p = 31
    for _ in range(20):
        A = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 12)])
        B = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 12)])
        r = rep_spectrum(A, B, "+")
        assert r.mass() == len(A) * len(B)
        assert r.support() == sumset(A, B)
        nz = len(B) - (1 if 0 in B else 0)
        assert rep_spectrum(A, B, "/").mass() == len(A) * nz


def test_convolve():
    e0 = FpSet.from_elements(5, [0]).indicator()
    assert np.array_equal(convolve(e0, e0), e0)
    A, B = S(5, 1, 2), S(5, 0, 2)
    assert np.array_equal(
        convolve(A.indicator(), B.indicator()), rep_spectrum(A, B, "+").counts
    )
    ones = np.ones(5, dtype=np.int64)
    assert np.array_equal(convolve(ones, B.indicator()), 2 * ones)
    assert convolve(ones, ones).sum() == 25  # mass multiplies


def test_convolve_validation():
    with pytest.raises(ModulusMismatch):
        convolve(np.ones(5, dtype=np.int64), np.ones(7, dtype=np.int64))
    with pytest.raises(ValueError):
        convolve(np.ones(5), np.ones(5))  # floats rejected


def test_lp_norm():
    A = S(11, 1, 2, 3, 4)
    assert lp_norm(A.indicator(), 2) == pytest.approx(2.0)
    assert lp_norm(A.indicator(), 1) == pytest.approx(4.0)
    f = np.zeros(11, dtype=np.int64)
    f[5] = 3
    assert lp_norm(f, 2) == pytest.approx(3.0)
    with pytest.raises(BadExponent):
        lp_norm(f, 0.5)


def test_energy_examples():
    assert additive_energy(S(11, 0, 1)) == 6
    assert multiplicative_energy(S(101, 1, 2, 4)) == 19
    assert additive_energy(S(11, 4)) == 1
    assert multiplicative_energy(S(11, 4)) == 1
    with pytest.raises(EmptySet):
        additive_energy(FpSet.empty(11))


def test_energy_diagonal_bound_and_sidon():
    A = S(11, 1, 2, 5)  # Sidon: all unordered pair sums distinct
    assert additive_energy(A) == 2 * len(A) ** 2 - len(A)  # the minimum for |A| >= 2
    B = S(11, 1, 2, 3)
    assert additive_energy(B) > 2 * len(B) ** 2 - len(B)
    rng = np.random.default_rng(23)
    for _ in range(20):
        C = FpSet.from_elements(61, rng.permutation(61)[: rng.integers(1, 12)])
        assert additive_energy(C) >= len(C) ** 2  # diagonal quadruples alone


def test_energy_brute_force_agreement():
    rng = np.random.default_rng(11)
    for case in range(40):
        p = int(rng.choice([13, 53, 101]))
        n = int(rng.integers(1, 13))
        A = FpSet.from_elements(p, rng.permutation(p)[:n])
        if case % 2 == 0 and 0 not in A:
            A = A | FpSet.from_elements(p, [0])
        assert additive_energy(A) == additive_energy_brute(A)
        assert multiplicative_energy(A) == multiplicative_energy_brute(A)


def test_plunnecke_examples():
    r = plunnecke_check(S(5, 0), S(5, 0), S(5, 0))
    assert (r.lhs, r.rhs, r.holds) == (1, 1.0, True)
    r = plunnecke_check(S(7, 0, 1), S(7, 0), S(7, 0, 1))
    assert r.lhs == 3 and r.rhs == pytest.approx(4.0) and r.holds


def test_plunnecke_random_triples():
    rng = np.random.default_rng(13)
    p = 101
    for _ in range(200):
        A = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 25)])
        B = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 25)])
        C = FpSet.from_elements(p, rng.permutation(p)[: rng.integers(1, 25)])
        assert plunnecke_check(A, B, C, "-").holds
        assert plunnecke_check(A, B, C, "+").holds
    with pytest.raises(EmptySet):
        plunnecke_check(FpSet.empty(101), B, C)


def test_gap_examples():
    assert gap_enumerate(Gap(11, 0, (1,), (5,))) == S(11, 0, 1, 2, 3, 4)
    assert gap_is_proper(Gap(11, 0, (1,), (5,)))
    assert not gap_is_proper(Gap(11, 0, (1, 1), (2, 2)))  # 1+0 collides with 0+1
    assert gap_is_proper(Gap(11, 0, (1, 2), (2, 2)))
    g = Gap(5, 0, (3,), (4,))
    assert gap_enumerate(g) == S(5, 0, 3, 1, 4)
    assert gap_is_proper(g)


def test_gap_cap():
    with pytest.raises(TooLarge):
        gap_enumerate(Gap(101, 0, (1, 2), (300, 300)), cap=10_000)


def test_gap_properness_oracle():
    rng = np.random.default_rng(17)
    p = 101
    for _ in range(40):
        d = int(rng.integers(1, 4))
        steps = [int(rng.integers(1, p)) for _ in range(d)]
        bounds = [int(rng.integers(1, 5)) for _ in range(d)]
        a0 = int(rng.integers(0, p))
        assert gap_is_proper(Gap(p, a0, steps, bounds)) == gap_proper_brute(
            p, a0, steps, bounds
        )
