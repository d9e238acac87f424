import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ninfty.groups import (PRESETS, FiniteGroup, GroupError, OrderBoundExceeded, compose, construct_group,
                           double_cosets, format_cycles, invert, parse_cycles, quotient_group)

from conftest import group

SMALL = ["C1", "C2", "C3", "C4", "C6", "C2xC2", "S3", "D8", "Q8"]


def brute_subgroups(G):
    """Every subset containing the identity and closed under multiplication."""
    out = []
    rest = range(1, G.order)
    for r in range(G.order):
        for extra in itertools.combinations(rest, r):
            s = {0, *extra}
            if all(G.mul[a][b] in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def test_orders_of_presets():
    expected = {"C1": 1, "C7": 7, "C12": 12, "C2xC6": 12, "C3xC3": 9, "S3": 6, "D8": 8, "D10": 10,
                "D12": 12, "Q8": 8, "A4": 12, "S4": 24, "A5": 60}
    for name, n in expected.items():
        assert group(name).order == n


def test_s3_has_three_element_classes():
    assert len(group("S3").whole.element_classes) == 3


def test_perm_spec_gives_klein_group():
    V = construct_group("perm:(1 2)(3 4),(1 3)(2 4)")
    assert V.order == 4
    assert V.exponent == 2


def test_elements_are_sorted_and_closed():
    for name in SMALL + ["A4", "D12"]:
        G = group(name)
        assert list(G.elements) == sorted(G.elements)
        assert G.elements[0] == tuple(range(G.degree))
        for a in range(G.order):
            assert G.mul[a][G.inv[a]] == 0
            assert G.elements[G.mul[a][1 % G.order]] == compose(G.elements[a], G.elements[1 % G.order])


@pytest.mark.parametrize("name", ["C4", "S3", "Q8"])
def test_multiplication_is_associative(name):
    G = group(name)
    m = G.mul
    for a, b, c in itertools.product(range(G.order), repeat=3):
        assert m[m[a][b]][c] == m[a][m[b][c]]


@pytest.mark.parametrize("name", SMALL)
def test_subgroups_match_brute_force(name):
    G = group(name)
    assert sorted(map(sorted, brute_subgroups(G))) == sorted(sorted(s.members) for s in G.subgroups)


@pytest.mark.parametrize("name,subs,classes", [("C2", 2, 2), ("C4", 3, 3), ("S3", 6, 4), ("D8", 10, 8),
                                               ("Q8", 6, 6), ("A4", 10, 5), ("S4", 30, 11), ("A5", 59, 9)])
def test_lattice_sizes(name, subs, classes):
    lat = group(name).lattice
    assert len(lat.subgroups) == subs
    assert len(lat.classes) == classes


def test_c4_lattice_is_a_chain():
    e, c2, c4 = group("C4").subgroups
    assert e < c2 < c4
    assert [s.order for s in (e, c2, c4)] == [1, 2, 4]


@pytest.mark.parametrize("name", ["S3", "D8", "A4", "S4"])
def test_conjugation_witnesses(name):
    G = group(name)
    lat = G.lattice
    for s in G.subgroups:
        canon = lat.canonical(s)
        g = lat.witness(s)
        assert canon.conjugate(g) == s
        assert min(x.index for x in lat.conjugacy_classes[lat.class_of[s.index]]) == canon.index
        for t in G.subgroups:
            if t <= canon:
                assert t.conjugate(g) <= s


@pytest.mark.parametrize("name", ["S3", "D8", "Q8"])
def test_lattice_recomputation_is_identical(name):
    a = construct_group(name)
    b = construct_group(name)
    assert a.labels == b.labels
    assert [s.members for s in a.subgroups] == [s.members for s in b.subgroups]
    assert a.lattice.classes == b.lattice.classes


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D8", "A4", "S4"])
def test_labels_round_trip(name):
    G = group(name)
    assert len(set(G.labels)) == len(G.labels)
    for s, label in zip(G.subgroups, G.labels):
        assert G.parse_subgroup(label) is s
        assert G.parse_subgroup(f"#{s.index}") is s
    assert G.parse_subgroup("G") is G.whole
    assert G.parse_subgroup("e") is G.trivial


def test_unknown_labels_and_groups():
    with pytest.raises(GroupError):
        group("C4").parse_subgroup("S3")
    for bad in ["BADNAME", "C0", "x", "perm:(1 2", "D7"]:
        with pytest.raises(GroupError):
            construct_group(bad)


def test_order_bound(monkeypatch):
    with pytest.raises(OrderBoundExceeded):
        construct_group("S4", bound=10)
    monkeypatch.setenv("NINFTY_ORDER_BOUND", "30")
    with pytest.raises(OrderBoundExceeded):
        construct_group("A5")
    assert construct_group("S4").order == 24


def test_double_coset_examples():
    G = group("C4")
    assert [I for _, I in double_cosets(G.whole, G.whole)] == [G.whole]
    c2 = G.parse_subgroup("C2")
    dc = double_cosets(c2, c2)
    assert len(dc) == 2 and all(I == c2 for _, I in dc)
    S = group("S3")
    dc = double_cosets(S.parse_subgroup("C2"), S.parse_subgroup("C3"))
    assert len(dc) == 1 and dc[0][1] == S.trivial


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2", "D8", "Q8", "A4", "D12", "S4"])
def test_double_coset_mass_formula(name):
    G = group(name)
    for H in G.subgroups:
        for K in G.subgroups:
            total = sum(H.order * K.order // I.order for _, I in double_cosets(H, K))
            assert total == G.order


def test_quotients():
    C4 = group("C4")
    Q = quotient_group(C4, C4.parse_subgroup("C2"))
    assert Q.group.order == 2
    assert quotient_group(C4, C4.whole).group.order == 1
    S = group("S3")
    Q = quotient_group(S, S.parse_subgroup("C3"))
    assert Q.group.order == 2
    assert Q.preimage(Q.group.trivial) == S.parse_subgroup("C3")
    assert Q.image(S.parse_subgroup("C2")) == Q.group.whole
    with pytest.raises(GroupError):
        quotient_group(S, S.parse_subgroup("C2"))


def test_normality_and_intersections():
    D8 = group("D8")
    for s in D8.subgroups:
        assert s.is_normal() == all(s.conjugate(g) == s for g in range(D8.order))
        for t in D8.subgroups:
            assert set(s.intersection(t).members) == set(s.members) & set(t.members)
            assert s <= s.join(t) and t <= s.join(t)


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_compose_and_invert(p, q):
    p, q = tuple(p), tuple(q)
    assert compose(p, invert(p)) == tuple(range(6))
    assert compose(invert(q), invert(p)) == invert(compose(p, q))
    assert parse_cycles(format_cycles(p), 6) == p


def test_all_presets_construct():
    for name in PRESETS:
        assert isinstance(group(name), FiniteGroup)
