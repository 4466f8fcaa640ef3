import pytest

from charlab import parse_config
from charlab.errors import BadValue, NotPrime, UnknownKey


def test_parse_lists_and_comments():
    cfg = parse_config(
        """
        # a comment line
        experiment = demo
        p_list = 7, 11   # trailing comment
        p_list = 13
        seed_list = 1, 2
        epsilon_list = 0.25, 0.5
        """
    )
    assert cfg.experiment == "demo"
    assert cfg.p_list == [7, 11, 13]  # repeated keys extend the list
    assert cfg.seed_list == [1, 2]
    assert cfg.epsilon_list == [0.25, 0.5]


def test_defaults():
    cfg = parse_config("")
    assert cfg.q == 2.0
    assert cfg.chi == ["legendre"]
    assert cfg.seed_list == [0]
    assert cfg.p_list == [] and cfg.primes() == []


def test_set_specs_with_nested_commas():
    cfg = parse_config("set_a = interval(a=0,n=10), residues\nset_b = random(n=5,seed=3)")
    assert [s.raw for s in cfg.set_a] == ["interval(a=0,n=10)", "residues()"]
    assert cfg.set_b[0].kind == "random"


def test_nonprime_rejected_at_load():
    with pytest.raises(NotPrime):
        parse_config("p_list = 8")


def test_unknown_key_is_hard_error():
    with pytest.raises(UnknownKey):
        parse_config("p_lists = 7")


def test_bad_values():
    with pytest.raises(BadValue):
        parse_config("q = fast")
    with pytest.raises(BadValue):
        parse_config("instances = 3\ninstances = 4")  # scalar keys appear once
    with pytest.raises(BadValue):
        parse_config("just some words")
    with pytest.raises(BadValue):
        parse_config("chi = order:x")


def test_chi_specs():
    cfg = parse_config("chi = legendre, index:3, order:4")
    assert cfg.chi == ["legendre", "index:3", "order:4"]


def test_p_max_sweep():
    cfg = parse_config("p_max = 20\np_list = 29")
    assert cfg.primes() == [3, 5, 7, 11, 13, 17, 19, 29]
    assert cfg.primes(residue_one_mod_four=True) == [5, 13, 17, 29]
