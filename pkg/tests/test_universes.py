import logging

import pytest

from ninfty.characters import character_table, permutation_character, regular_character, trivial_character
from ninfty.gsets import GSet
from ninfty.universes import (Universe, UniverseError, all_universes, complete_universe, fixed_universe,
                              generated_universe, make_universe, parse_universe, restrict_universe,
                              trivial_universe)

from conftest import group

GROUPS = ["C2", "C3", "C4", "C6", "C2xC2", "S3", "D8", "Q8", "A4", "C12"]


def test_basic_universes_of_c4():
    C4 = group("C4")
    assert trivial_universe(C4).constituents == {0}
    assert complete_universe(C4).constituents == {0, 1, 2, 3}
    fixed = fixed_universe(C4, C4.parse_subgroup("C2"))
    assert len(fixed.constituents) == 2
    table = character_table(C4)
    assert all(table.is_real(i) for i in fixed.constituents)


def test_restriction_examples():
    C4 = group("C4")
    c2 = C4.parse_subgroup("C2")
    U = complete_universe(C4)
    assert restrict_universe(U, C4.whole) is U
    assert restrict_universe(U, c2) == complete_universe(c2)
    assert restrict_universe(fixed_universe(C4, c2), c2) == trivial_universe(c2)
    with pytest.raises(UniverseError):
        restrict_universe(complete_universe(c2), C4.whole)


@pytest.mark.parametrize("name", GROUPS)
def test_regular_generates_complete(name):
    G = group(name)
    assert generated_universe(G, [regular_character(G)]) == complete_universe(G)
    for H in G.subgroups:
        assert restrict_universe(complete_universe(G), H) == complete_universe(H)


@pytest.mark.parametrize("name", GROUPS)
def test_fixed_is_generated_by_quotient_set(name):
    G = group(name)
    for N in G.subgroups:
        if N.is_normal():
            perm = permutation_character(GSet.orbit(G.whole, N))
            assert fixed_universe(G, N) == generated_universe(G, [perm])


def test_trivial_constituent_is_added(caplog):
    S3 = group("S3")
    sgn = character_table(S3).irreducibles[1]
    with caplog.at_level(logging.INFO, logger="ninfty.universes"):
        U = generated_universe(S3, [sgn])
    assert U.constituents == {0, 1}
    assert "trivial" in caplog.text


def test_invalid_universes():
    C4 = group("C4")
    table = character_table(C4)
    complex_one = next(i for i in range(4) if not table.is_real(i))
    with pytest.raises(UniverseError):
        Universe(C4.whole, frozenset({0, complex_one}))
    with pytest.raises(UniverseError):
        Universe(C4.whole, frozenset({1}))
    with pytest.raises(UniverseError):
        generated_universe(C4, [trivial_character(C4) - regular_character(C4)])
    with pytest.raises(UniverseError):
        make_universe(C4, "bogus")


def test_parse_universe():
    C4 = group("C4")
    assert parse_universe(C4, "complete") == complete_universe(C4)
    assert parse_universe(C4, "trivial") == trivial_universe(C4)
    assert parse_universe(C4, "fixed:C2") == fixed_universe(C4, C4.parse_subgroup("C2"))
    assert parse_universe(C4, "gen:reg") == complete_universe(C4)
    assert parse_universe(C4, "gen:perm:C2") == fixed_universe(C4, C4.parse_subgroup("C2"))
    U = parse_universe(C4, "gen:triv,regbar:C2")
    assert len(U.constituents) == 3
    for bad in ["nonsense", "gen:", "gen:irr:9", "gen:perm:S3", "fixed:C3"]:
        with pytest.raises(Exception):
            parse_universe(C4, bad)


@pytest.mark.parametrize("name", GROUPS)
def test_all_universes(name):
    G = group(name)
    table = character_table(G)
    blocks = [b for b in table.real_classes() if b[0] != 0]
    us = list(all_universes(G))
    assert len(us) == 2 ** len(blocks)
    assert len(set(us)) == len(us)
    assert trivial_universe(G) in us and complete_universe(G) in us
    for U in us:
        assert parse_universe(G, U.to_spec()) == U
