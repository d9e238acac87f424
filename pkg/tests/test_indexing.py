import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from ninfty.gsets import GSet, all_gsets, conjugate, restrict
from ninfty.indexing import (IndexingError, IndexingSystem, brute_force_systems, check_composition_closure,
                             closure, complete_system, enumerate_all, family_sequence, from_pairs, hasse_dot,
                             join, meet, naive_systems, pair_classes, parse_pairs, restrict_system,
                             satisfies_definition, system_from_json, trivial_system, validate)

from conftest import group

GOLDEN = json.loads((Path(__file__).parent / "golden" / "indexing_counts.json").read_text())["counts"]


def diag(G):
    return {(H, H) for H in G.subgroups}


def pairs(G, text):
    return set(parse_pairs(G, text))


def test_trivial_and_complete_systems():
    C2 = group("C2")
    assert trivial_system(C2).pairs == frozenset(diag(C2))
    assert complete_system(C2).pairs == frozenset(diag(C2) | {(C2.whole, C2.trivial)})
    C4 = group("C4")
    assert complete_system(C4).pairs == frozenset(diag(C4) | pairs(C4, "C2/e,C4/C2,C4/e"))


def test_validate_examples():
    C4 = group("C4")
    assert validate(C4, diag(C4)).valid
    report = validate(C4, diag(C4) | pairs(C4, "C4/C2,C2/e"))
    assert not report.valid
    comp = [v for v in report.violations if v.axiom == "composition"]
    assert comp and comp[0].missing == (C4.whole, C4.trivial)
    assert validate(C4, diag(C4) | pairs(C4, "C2/e,C4/e")).valid
    assert "reflexivity" in validate(C4, pairs(C4, "C4/e")).axioms()


def test_validate_report_json():
    C4 = group("C4")
    doc = validate(C4, diag(C4) | pairs(C4, "C4/e")).to_json()
    assert doc["valid"] is False
    assert {v["axiom"] for v in doc["violations"]} == {"restriction"}


def test_closure_examples():
    C4 = group("C4")
    assert closure(C4, []) == trivial_system(C4)
    assert closure(C4, pairs(C4, "C4/e")).pairs == frozenset(diag(C4) | pairs(C4, "C2/e,C4/e"))
    assert closure(C4, pairs(C4, "C4/C2,C2/e")) == complete_system(C4)


def test_closure_is_the_least_superset():
    for name in ["C4", "S3", "C2xC2"]:
        G = group(name)
        systems = enumerate_all(G).systems
        pc = pair_classes(G)
        for seed in range(1 << len(pc)):
            above = [A for A in systems if A.mask & seed == seed]
            least = min(above, key=lambda A: bin(A.mask).count("1"))
            assert all(least <= A for A in above)
            assert IndexingSystem(G.lattice, pc.close(seed)) == least


@pytest.mark.parametrize("name", ["C4", "S3", "D8", "Q8"])
def test_closure_operator_laws(name):
    G = group(name)
    pc = pair_classes(G)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, pc.full_mask), st.integers(0, pc.full_mask))
    def check(a, b):
        ca = pc.close(a)
        assert ca & a == a
        assert pc.close(ca) == ca
        assert pc.close(a & b) & ca == pc.close(a & b)
        assert validate(G, IndexingSystem(G.lattice, ca).pairs).valid

    check()


@pytest.mark.parametrize("name", ["C1", "C2", "C3"])
def test_groups_of_order_at_most_three(name):
    G = group(name)
    systems = enumerate_all(G).systems
    assert len(systems) == (1 if name == "C1" else 2)
    assert systems[0] == trivial_system(G) and systems[-1] == complete_system(G)


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2", "C6", "C8", "C9", "D10"])
def test_enumeration_matches_naive_filter(name):
    G = group(name)
    naive = sorted(A.mask for A in naive_systems(G))
    assert naive == sorted(A.mask for A in enumerate_all(G).systems)
    assert len(naive) == GOLDEN[name]


@pytest.mark.parametrize("name", ["C12", "Q8", "D8", "A4", "C2xC4", "C3xC3"])
def test_enumeration_matches_golden_counts(name):
    G = group(name)
    systems = enumerate_all(G).systems
    assert len(systems) == GOLDEN[name]
    assert len(set(systems)) == len(systems)


def _class_unions(G):
    pc = pair_classes(G)
    for mask in range(1 << len(pc)):
        yield {p for c in range(len(pc)) if mask >> c & 1 for p in pc.members(c)}


def test_validate_agrees_with_definition_on_c4_raw_sets():
    C4 = group("C4")
    every = [(L, K) for L in C4.subgroups for K in C4.subgroups if K <= L]
    for mask in range(1 << len(every)):
        chosen = {p for i, p in enumerate(every) if mask >> i & 1}
        assert validate(C4, chosen).valid == satisfies_definition(C4, chosen)


@pytest.mark.parametrize("name", ["S3", "C2xC2"])
def test_validate_agrees_with_definition(name):
    G = group(name)
    for chosen in _class_unions(G):
        assert validate(G, chosen).valid == satisfies_definition(G, chosen)


def test_conjugation_violations_are_reported():
    S3 = group("S3")
    one = (S3.parse_subgroup("C2"), S3.trivial)
    report = validate(S3, diag(S3) | {one})
    assert report.axioms() == {"conjugation"}


def test_meet_and_join():
    C4 = group("C4")
    low = closure(C4, pairs(C4, "C2/e"))
    high = closure(C4, pairs(C4, "C4/C2"))
    assert meet(complete_system(C4), trivial_system(C4)) == trivial_system(C4)
    assert join(low, high) == complete_system(C4)
    for A in enumerate_all(C4).systems:
        assert join(trivial_system(C4), A) == A


@pytest.mark.parametrize("name", ["S3", "C2xC2", "Q8"])
def test_lattice_closure_of_enumeration(name):
    systems = set(enumerate_all(group(name)).systems)
    for a in systems:
        for b in systems:
            assert meet(a, b) in systems
            assert join(a, b) in systems
            assert a <= join(a, b) and meet(a, b) <= a


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2", "Q8"])
def test_hasse_edges_are_covers(name):
    L = enumerate_all(group(name))
    systems = L.systems
    covers = set()
    for i, a in enumerate(systems):
        for j, b in enumerate(systems):
            if a < b and not any(a < c < b for c in systems):
                covers.add((i, j))
    assert set(L.hasse_edges) == covers


def test_restrict_system_examples():
    C4 = group("C4")
    c2 = C4.parse_subgroup("C2")
    assert restrict_system(complete_system(C4), C4.whole) == complete_system(C4)
    assert restrict_system(complete_system(C4), c2) == complete_system(c2)
    assert restrict_system(closure(C4, pairs(C4, "C4/C2")), c2) == trivial_system(c2)


@pytest.mark.parametrize("name", ["S3", "D8", "A4"])
def test_restrictions_validate(name):
    G = group(name)
    for A in enumerate_all(G).systems:
        for H in G.lattice.representatives():
            R = restrict_system(A, H)
            assert validate(H, R.pairs).valid


def test_json_round_trip_and_errors():
    S3 = group("S3")
    for A in enumerate_all(S3).systems:
        assert system_from_json(S3, json.dumps(A.to_json())) == A
    with pytest.raises(IndexingError):
        from_pairs(S3, diag(S3) | {(S3.whole, S3.trivial)})
    with pytest.raises(IndexingError):
        parse_pairs(S3, "S3-e")


def test_brute_force_oracle_on_c4():
    C4 = group("C4")
    assert len(brute_force_systems(C4)) == 5


def test_family_sequence_examples():
    C2 = group("C2")
    for n in (0, 1):
        fam = family_sequence(trivial_system(C2), n)
        assert len(fam) == len(C2.subgroups)
    triv2 = family_sequence(trivial_system(C2), 2)
    assert all(T.is_trivial() for T in triv2.gsets())
    regular = GSet.orbit(C2.whole, C2.trivial)
    assert regular not in triv2
    assert regular in family_sequence(complete_system(C2), 2)


@pytest.mark.parametrize("name", ["C4", "S3"])
def test_family_sequence_closed_under_subgroups_and_conjugacy(name):
    G = group(name)
    for A in enumerate_all(G).systems:
        fam = family_sequence(A, 3)
        for T in fam.gsets():
            for M in T.group.lattice.subgroups:
                assert restrict(T, M) in fam
            for g in range(G.order):
                assert conjugate(T, g) in fam


def test_composition_closure_small_cases():
    C4 = group("C4")
    assert check_composition_closure(trivial_system(C4), 5).passed
    assert check_composition_closure(complete_system(C4), 4).passed


def test_composition_closure_detects_missing_axiom():
    C4 = group("C4")
    broken = IndexingSystem(C4.lattice, pair_classes(C4).mask_of(diag(C4) | pairs(C4, "C4/C2,C2/e")))
    report = check_composition_closure(broken, 4)
    assert not report.passed
    assert report.to_json()["status"] == "fail"


def test_hasse_dot():
    L = enumerate_all(group("C4"))
    dot = hasse_dot(L, {0: "red"})
    assert dot.startswith("digraph")
    assert dot.count("->") == len(L.hasse_edges)
    assert 'fillcolor="red"' in dot
