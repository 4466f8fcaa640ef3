import cmath

import numpy as np
import pytest

from charlab import make_context
from charlab.errors import IndexOutOfRange, NotPrime, TooLarge
from charlab.field import divisors, is_prime, primes_up_to, smallest_primitive_root


def test_make_context_smallest_root():
    ctx = make_context(7)
    assert ctx.g == 3  # 2 has order 3 mod 7; 3 generates


def test_dlog_table_p5():
    ctx = make_context(5)
    assert ctx.g == 2
    assert [int(ctx.dlog[x]) for x in (1, 2, 4, 3)] == [0, 1, 2, 3]
    assert ctx.dlog[0] == -1


def test_dlog_is_bijection():
    for p in (7, 101, 499):
        ctx = make_context(p)
        assert sorted(int(k) for k in ctx.dlog[1:]) == list(range(p - 1))


def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        make_context(4)
    with pytest.raises(NotPrime):
        make_context(2)  # context needs an odd prime


def test_context_limit():
    with pytest.raises(TooLarge):
        make_context(101, limit=100)


def test_character_orders():
    ctx = make_context(7)
    assert ctx.character(0).order == 1
    assert ctx.character(0).is_trivial
    assert ctx.character(3).order == 2
    ctx13 = make_context(13)
    assert ctx13.character(4).order == 3


def test_character_index_range():
    ctx = make_context(7)
    with pytest.raises(IndexOutOfRange):
        ctx.character(6)
    with pytest.raises(IndexOutOfRange):
        ctx.character(-1)


def test_legendre_values():
    chi = make_context(7).legendre()
    assert chi.order == 2
    assert chi.eval(3) == pytest.approx(-1)
    assert chi.eval(1) == pytest.approx(1)
    assert make_context(5).legendre().eval(4) == pytest.approx(1)


def test_eval_conventions():
    ctx = make_context(13)
    assert ctx.character(0).eval(9) == pytest.approx(1)  # trivial character
    assert make_context(7).legendre().eval(0) == 0
    chi = ctx.character(4)  # order 3; dlog(g) = 1
    assert chi.eval(ctx.g) == pytest.approx(cmath.exp(2j * cmath.pi / 3))


def test_orthogonality():
    for p in (7, 13, 101):
        ctx = make_context(p)
        for d in divisors(p - 1):
            if d == 1:
                continue
            chi = ctx.character_of_order(d)
            assert abs(chi.values.sum()) < 1e-9


def test_multiplicativity_random_pairs():
    for p in (7, 101):
        ctx = make_context(p)
        chi = ctx.character(1)
        rng = np.random.default_rng(p)
        xs = rng.integers(0, p, size=1000)
        ys = rng.integers(0, p, size=1000)
        for x, y in zip(xs, ys):
            lhs = chi.eval(int(x) * int(y) % p)
            rhs = chi.eval(int(x)) * chi.eval(int(y))
            assert abs(lhs - rhs) < 1e-12


def test_conjugation():
    ctx = make_context(13)
    chi = ctx.character(5)
    conj = chi.conjugate()
    assert conj.index == (13 - 1 - 5) % 12
    assert np.allclose(conj.values, np.conj(chi.values), atol=1e-12)
    assert ctx.character(0).conjugate().index == 0


def test_order_property_roots_of_unity():
    ctx = make_context(101)
    for k in (1, 4, 20):
        chi = ctx.character(k)
        d = chi.order
        vals = chi.values[1:]
        assert np.allclose(vals**d, np.ones(100), atol=1e-9)


def test_values_immutable():
    chi = make_context(11).legendre()
    with pytest.raises(ValueError):
        chi.values[3] = 5.0


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primes_up_to(30)[-1] == 29
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert smallest_primitive_root(7) == 3


def test_character_of_order():
    ctx = make_context(13)
    for d in (2, 3, 4, 6, 12):
        assert ctx.character_of_order(d).order == d
    with pytest.raises(IndexOutOfRange):
        ctx.character_of_order(5)
