import itertools

import pytest

from ninfty.groups import double_cosets_within
from ninfty.gsets import (GMap, GSet, GSetError, all_gsets, coinduce, conjugate, disjoint_union, factor_surjection,
                          from_graph, from_pairs, graph_subgroup, graphs_conjugate, induce, orbit_decompose,
                          parse_gset, product, restrict)

from conftest import group


def orbit_set(H, label):
    return GSet.orbit(H, H.parent.parse_subgroup(label))


def brute_coinduce(K, G, X):
    """All functions f: G -> X with f(kx) = k f(x), acted on by (g.f)(x) = f(xg)."""
    mul = G.parent.mul
    elems = list(G.members)
    maps = []
    for values in itertools.product(range(X.size), repeat=len(elems)):
        f = dict(zip(elems, values))
        if all(f[mul[k][x]] == X.action[k][f[x]] for k in K.members for x in elems):
            maps.append(f)
    index = {tuple(sorted(f.items())): i for i, f in enumerate(maps)}
    action = {}
    for g in G.members:
        action[g] = tuple(index[tuple(sorted((x, f[mul[x][g]]) for x in elems))] for f in maps)
    return GSet(G, len(maps), action)


def brute_induce(H, G, T):
    """G x_H T as classes of pairs (g, t) under (gh, t) ~ (g, h t)."""
    mul = G.parent.mul
    cls = {}
    points = []
    for g in G.members:
        for t in range(T.size):
            if (g, t) in cls:
                continue
            i = len(points)
            points.append((g, t))
            for h in H.members:
                cls[(mul[g][h], T.action[G.parent.inv[h]][t])] = i
    action = {x: tuple(cls[(mul[x][g], t)] for g, t in points) for x in G.members}
    return GSet(G, len(points), action)


def test_orbit_decompose_examples():
    C4 = group("C4")
    assert orbit_decompose(GSet.trivial(C4.whole, 3)) == [(C4.whole, 3)]
    assert orbit_decompose(orbit_set(C4.whole, "e")) == [(C4.trivial, 1)]
    S3 = group("S3")
    natural = GSet.from_generators(S3.whole, 3, {g: S3.elements[g] for g in S3.generator_indices})
    ((K, m),) = orbit_decompose(natural)
    assert m == 1 and K.order == 2
    assert natural.stabilizer(0).order == 2


def test_restrict_examples():
    C4 = group("C4")
    c2 = C4.parse_subgroup("C2")
    T = orbit_set(C4.whole, "e")
    assert restrict(T, C4.whole).is_isomorphic(T)
    assert orbit_decompose(restrict(T, c2)) == [(C4.trivial, 2)]
    S3 = group("S3")
    R = restrict(orbit_set(S3.whole, "C2"), S3.parse_subgroup("C3"))
    assert orbit_decompose(R) == [(S3.trivial, 1)]


def test_induce_examples():
    C4 = group("C4")
    c2 = C4.parse_subgroup("C2")
    assert induce(c2, C4.whole, GSet.orbit(c2, C4.trivial)).is_isomorphic(orbit_set(C4.whole, "e"))
    T = orbit_set(C4.whole, "C2")
    assert induce(C4.whole, C4.whole, T).is_isomorphic(T)
    S3 = group("S3")
    s2 = S3.parse_subgroup("C2")
    assert induce(s2, S3.whole, GSet.trivial(s2, 1)).is_isomorphic(orbit_set(S3.whole, "C2"))


def test_coinduce_examples():
    C2 = group("C2")
    X = GSet.trivial(C2.trivial, 2)
    Y = coinduce(C2.trivial, C2.whole, X)
    assert Y.size == 4
    assert Y.orbit_types() == [(C2.trivial, 1), (C2.whole, 2)]
    assert coinduce(C2.whole, C2.whole, GSet.trivial(C2.whole, 3)).is_isomorphic(GSet.trivial(C2.whole, 3))
    C4 = group("C4")
    c2 = C4.parse_subgroup("C2")
    Z = coinduce(c2, C4.whole, GSet.orbit(c2, C4.trivial))
    assert Z.size == 4
    assert Z.is_isomorphic(brute_coinduce(c2, C4.whole, GSet.orbit(c2, C4.trivial)))


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2"])
def test_coinduce_and_induce_match_brute_force(name):
    G = group(name)
    for K in G.subgroups:
        for X in all_gsets(K, 2):
            if X.size:
                assert coinduce(K, G.whole, X).is_isomorphic(brute_coinduce(K, G.whole, X))
            assert induce(K, G.whole, X).is_isomorphic(brute_induce(K, G.whole, X))


def test_product_examples():
    C4 = group("C4")
    T = orbit_set(C4.whole, "C2")
    assert product(T, GSet.trivial(C4.whole, 1)).is_isomorphic(T)
    assert product(T, T).orbit_types() == [(C4.parse_subgroup("C2"), 2)]
    S3 = group("S3")
    P = product(orbit_set(S3.whole, "C2"), orbit_set(S3.whole, "C2"))
    assert P.orbit_types() == [(S3.trivial, 1), (S3.parse_subgroup("C2"), 1)]


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2", "C6", "D8"])
def test_cardinalities(name):
    G = group(name)
    for H in G.subgroups:
        for K in G.subgroups:
            if not K <= H:
                continue
            T = GSet.orbit(H, K)
            assert T.size == H.order // K.order
            assert len(induce(K, G.whole, GSet.trivial(K, 2))) == 2 * G.order // K.order
            if G.order // K.order <= 4:
                assert len(coinduce(K, G.whole, GSet.trivial(K, 2))) == 2 ** (G.order // K.order)
            assert len(product(GSet.orbit(G.whole, H), GSet.orbit(G.whole, K))) == \
                (G.order // H.order) * (G.order // K.order)


@pytest.mark.parametrize("name", ["C4", "S3", "D8"])
def test_double_coset_formula_for_sets(name):
    G = group(name)
    for K in G.subgroups:
        for T in all_gsets(K, 2):
            up = induce(K, G.whole, T)
            for H in G.subgroups:
                parts = [induce(I, H, restrict(conjugate(T, g), I))
                         for g, I in double_cosets_within(H, K, G.whole)]
                assert restrict(up, H).is_isomorphic(disjoint_union(H, parts))


def test_graph_examples():
    C2 = group("C2")
    gamma = graph_subgroup(GSet.trivial(C2.whole, 3))
    assert all(p == (0, 1, 2) for _, p in gamma.hom)
    reg = graph_subgroup(orbit_set(C2.whole, "e"))
    assert dict(reg.hom)[1] == (1, 0)


def test_graph_round_trip_on_c4_sets():
    C4 = group("C4")
    sets = [T for H in C4.subgroups for T in all_gsets(H, 4)]
    graphs = [graph_subgroup(T) for T in sets]
    for T, gamma in zip(sets, graphs):
        assert from_graph(gamma).is_isomorphic(T)
        assert graph_subgroup(from_graph(gamma)) == gamma
        sigma = (1, 0) + tuple(range(2, T.size)) if T.size >= 2 else None
        assert graphs_conjugate(gamma, gamma.conjugate(1, sigma))
    for (S, a), (T, b) in itertools.combinations(zip(sets, graphs), 2):
        same = S.group == T.group and S.is_isomorphic(T)
        assert graphs_conjugate(a, b) == same


def test_from_pairs_rejects_non_graphs():
    C2 = group("C2")
    with pytest.raises(GSetError):
        from_pairs(C2, 2, [(0, (0, 1)), (0, (1, 0))])
    with pytest.raises(GSetError):
        from_pairs(C2, 2, [(0, (0, 1)), (1, (0, 0))])


def test_action_must_be_a_homomorphism():
    C4 = group("C4")
    gen = C4.generator_indices[0]
    with pytest.raises(GSetError):
        GSet.from_generators(C4.whole, 3, {gen: (1, 2, 0)})
    assert GSet.from_generators(C4.whole, 2, {gen: (1, 0)}).size == 2


def test_factor_identity_and_fold():
    C4 = group("C4")
    T = orbit_set(C4.whole, "e")
    assert factor_surjection(GMap(T, T, tuple(range(4)))).steps() == []
    two = disjoint_union(C4.whole, [T, T])
    f = GMap(two, T, tuple(range(4)) * 2)
    fac = factor_surjection(f)
    assert [s[0] for s in fac.steps()] == ["fold"]
    assert fac.steps()[0][2] == 2
    assert fac.reconstruct() == f.images


def test_factor_projection_with_conjugation():
    S3 = group("S3")
    src = orbit_set(S3.whole, "e")
    for label in ["C2", "C2.1", "C2.2"]:
        tgt = GSet.orbit(S3.whole, S3.parse_subgroup(label))
        x = 0
        images = tuple(tgt.act(g, x) for g in range(S3.order))
        f = GMap(src, tgt, tuple(images[g] for g in _point_to_element(src)))
        fac = factor_surjection(f)
        kind, A, B, g = fac.steps()[0]
        assert kind == "projection" and A <= B.conjugate(g)
        assert fac.reconstruct() == f.images


def _point_to_element(T):
    """Element carrying point 0 of a free orbit to each point."""
    out = [None] * T.size
    for g in T.group.members:
        out[T.act(g, 0)] = g
    return out


def test_factor_rejects_non_equivariant():
    C2 = group("C2")
    T = orbit_set(C2.whole, "e")
    with pytest.raises(GSetError):
        factor_surjection(GMap(T, GSet.trivial(C2.whole, 2), (0, 1)))


def test_parse_and_json_round_trip():
    S3 = group("S3")
    T = parse_gset(S3, "orbits:[C2*2,e]")
    assert T.orbit_types() == [(S3.trivial, 1), (S3.parse_subgroup("C2"), 2)]
    assert GSet.from_json(S3, T.to_json()).is_isomorphic(T)
    with pytest.raises((GSetError, ValueError)):
        parse_gset(S3, "orbits:[C7]")
