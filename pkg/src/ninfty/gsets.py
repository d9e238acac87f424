"""Finite G-sets with explicit point-level action tables.

A GSet lives over a Subgroup H of some FiniteGroup; ``action[h]`` is the
permutation of ``range(size)`` by which the element with index h acts.
Orbit types are taken up to H-conjugacy.
"""
from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .groups import (FiniteGroup, GroupError, Perm, Subgroup, compose, format_cycles,
                     left_coset_reps, right_coset_reps)


class GSetError(ValueError):
    pass


class GSet:
    """A finite H-set given by its full action table."""

    def __init__(self, group: Subgroup, size: int, action: dict[int, Perm], check: bool = True):
        self.group = group
        self.size = size
        self.action = action
        if check:
            self._check()

    def _check(self) -> None:
        H = self.group
        if set(self.action) != set(H.members):
            raise GSetError("action table must cover exactly the group's elements")
        ident = tuple(range(self.size))
        if self.action[0] != ident:
            raise GSetError("identity does not act trivially")
        mul = H.parent.mul
        for a in H.generators:
            pa = self.action[a]
            for b in H.members:
                if self.action[mul[a][b]] != compose(pa, self.action[b]):
                    raise GSetError("action is not a homomorphism")

    @classmethod
    def from_generators(cls, group: Subgroup, size: int, images: dict[int, Sequence[int]]) -> GSet:
        """Extend generator images to a full action table (fails if not a homomorphism)."""
        mul = group.parent.mul
        act: dict[int, Perm] = {0: tuple(range(size))}
        gens = {g: tuple(p) for g, p in images.items() if g != 0}
        for g, p in gens.items():
            if sorted(p) != list(range(size)):
                raise GSetError(f"image of generator {g} is not a permutation of {size} points")
            if g not in group:
                raise GSetError(f"element {g} is not in {group.label}")
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, p in gens.items():
                    y = mul[g][x]
                    q = compose(p, act[x])
                    if y not in act:
                        act[y] = q
                        nxt.append(y)
                    elif act[y] != q:
                        raise GSetError("generator images do not define a homomorphism")
            frontier = nxt
        if len(act) != group.order:
            raise GSetError("images must be given for a generating set of the group")
        out = cls(group, size, act, check=False)
        out._check()
        return out

    def __repr__(self) -> str:
        body = ", ".join(f"{k.label}*{m}" for k, m in self.orbit_types())
        return f"GSet({self.group.label}: [{body}])"

    def __len__(self) -> int:
        return self.size

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    @cached_property
    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.size
        out = []
        gens = [self.action[g] for g in self.group.generators]
        for x in range(self.size):
            if seen[x]:
                continue
            orb = [x]
            seen[x] = True
            for y in orb:
                for p in gens:
                    z = p[y]
                    if not seen[z]:
                        seen[z] = True
                        orb.append(z)
            out.append(tuple(sorted(orb)))
        return out

    def stabilizer(self, x: int) -> Subgroup:
        return self.group.parent.subgroup(h for h in self.group.members if self.action[h][x] == x)

    def orbit_types(self) -> list[tuple[Subgroup, int]]:
        """Multiset of orbit types H/K as (canonical K, multiplicity), sorted by K."""
        lat = self.group.lattice
        c = Counter(lat.canonical(self.stabilizer(orb[0])) for orb in self.orbits)
        return sorted(c.items(), key=lambda kv: kv[0].index)

    def orbit_key(self) -> tuple[tuple[int, int], ...]:
        return tuple((k.index, m) for k, m in self.orbit_types())

    def is_isomorphic(self, other: GSet) -> bool:
        return self.group == other.group and self.orbit_key() == other.orbit_key()

    def fixed_points(self, g: int) -> int:
        p = self.action[g]
        return sum(1 for i, j in enumerate(p) if i == j)

    def is_trivial(self) -> bool:
        return all(len(o) == 1 for o in self.orbits)

    # constructors

    @classmethod
    def orbit(cls, H: Subgroup, K: Subgroup) -> GSet:
        """H/K with points the left cosets, ordered by least element."""
        if not K <= H:
            raise GSetError(f"{K.label} is not contained in {H.label}")
        mul = H.parent.mul
        reps = left_coset_reps(K, H)
        coset_of = {}
        for i, r in enumerate(reps):
            for k in K.members:
                coset_of[mul[r][k]] = i
        action = {h: tuple(coset_of[mul[h][r]] for r in reps) for h in H.members}
        return cls(H, len(reps), action, check=False)

    @classmethod
    def trivial(cls, H: Subgroup, n: int) -> GSet:
        ident = tuple(range(n))
        return cls(H, n, {h: ident for h in H.members}, check=False)

    @classmethod
    def from_orbits(cls, H: Subgroup, orbits: Iterable[tuple[Subgroup, int]]) -> GSet:
        parts = []
        for K, m in orbits:
            parts += [cls.orbit(H, K)] * m
        return disjoint_union(H, parts)

    def to_json(self) -> dict:
        G = self.group.parent
        return {
            "group": G.name,
            "subgroup": self.group.label,
            "points": self.size,
            "action": {format_cycles(G.elements[g]): list(self.action[g]) for g in self.group.generators},
            "orbits": [[k.label, m] for k, m in self.orbit_types()],
        }

    @classmethod
    def from_json(cls, G: FiniteGroup, doc: dict | str) -> GSet:
        if isinstance(doc, str):
            doc = json.loads(doc)
        from .groups import parse_cycles
        H = G.parse_subgroup(doc.get("subgroup", "G"))
        images = {G.index(parse_cycles(k, G.degree)): v for k, v in doc["action"].items()}
        return cls.from_generators(H, doc["points"], images)


def disjoint_union(H: Subgroup, parts: Sequence[GSet]) -> GSet:
    offsets = []
    n = 0
    for p in parts:
        if p.group != H:
            raise GSetError("disjoint union of sets over different groups")
        offsets.append(n)
        n += p.size
    action = {}
    for h in H.members:
        img: list[int] = []
        for off, p in zip(offsets, parts):
            img += [off + y for y in p.action[h]]
        action[h] = tuple(img)
    return GSet(H, n, action, check=False)


def parse_gset(G: FiniteGroup, text: str, over: Subgroup | None = None) -> GSet:
    """Parse ``orbits:[K1*m1, K2*m2, ...]`` into a disjoint union of orbits H/Ki."""
    H = over or G.whole
    m = re.fullmatch(r"\s*orbits:\[(.*)\]\s*", text)
    if not m:
        raise GSetError(f"malformed G-set literal {text!r}")
    orbits = []
    for item in filter(None, (s.strip() for s in m.group(1).split(","))):
        label, _, mult = item.partition("*")
        try:
            count = int(mult) if mult else 1
        except ValueError:
            raise GSetError(f"bad multiplicity in {item!r}") from None
        orbits.append((G.parse_subgroup(label), count))
    return GSet.from_orbits(H, orbits)


def all_gsets(H: Subgroup, max_size: int, allowed: Iterable[Subgroup] | None = None) -> Iterable[GSet]:
    """Every H-set of size <= max_size up to isomorphism, optionally with orbit types restricted."""
    reps = [K for K in H.lattice.representatives() if allowed is None or K in set(allowed)]
    sizes = [K.index_in(H) for K in reps]

    def rec(i: int, room: int) -> Iterable[list[tuple[Subgroup, int]]]:
        if i == len(reps):
            yield []
            return
        for m in range(room // sizes[i] + 1):
            for rest in rec(i + 1, room - m * sizes[i]):
                yield ([(reps[i], m)] if m else []) + rest

    for orbits in rec(0, max_size):
        yield GSet.from_orbits(H, orbits)


# operations
# ----------

def orbit_decompose(T: GSet) -> list[tuple[Subgroup, int]]:
    return T.orbit_types()


def restrict(T: GSet, M: Subgroup) -> GSet:
    if not M <= T.group:
        raise GSetError(f"{M.label} is not a subgroup of {T.group.label}")
    return GSet(M, T.size, {m: T.action[m] for m in M.members}, check=False)


def conjugate(T: GSet, g: int) -> GSet:
    """The gHg^-1-set g.T: same points, ghg^-1 acting as h did."""
    G = T.group.parent
    H2 = T.group.conjugate(g)
    return GSet(H2, T.size, {G.conj(g, h): T.action[h] for h in T.group.members}, check=False)


def induce(H: Subgroup, up_to: Subgroup, T: GSet) -> GSet:
    """up_to x_H T, with point (i, t) at index i*|T| + t for the i-th left coset rep."""
    if T.group != H:
        raise GSetError("T is not an H-set")
    if not H <= up_to:
        raise GSetError(f"{H.label} is not contained in {up_to.label}")
    G = H.parent
    mul, inv = G.mul, G.inv
    reps = left_coset_reps(H, up_to)
    coset_of = {}
    for i, r in enumerate(reps):
        for h in H.members:
            coset_of[mul[r][h]] = i
    n = T.size
    action = {}
    for g in up_to.members:
        img = [0] * (len(reps) * n)
        for i, r in enumerate(reps):
            x = mul[g][r]
            j = coset_of[x]
            k = mul[inv[reps[j]]][x]
            tk = T.action[k]
            for t in range(n):
                img[i * n + t] = j * n + tk[t]
        action[g] = tuple(img)
    return GSet(up_to, len(reps) * n, action, check=False)


def coinduce(K: Subgroup, up_to: Subgroup, X: GSet) -> GSet:
    """Map_K(up_to, X): K-equivariant maps f with f(kx) = k f(x), acted on by (g.f)(x) = f(xg).

    A map is determined by its values on the right coset representatives of K,
    so points are tuples in X^m (m = index), enumerated lexicographically.
    """
    if X.group != K:
        raise GSetError("X is not a K-set")
    if not K <= up_to:
        raise GSetError(f"{K.label} is not contained in {up_to.label}")
    G = K.parent
    mul, inv = G.mul, G.inv
    reps = right_coset_reps(K, up_to)
    m = len(reps)
    coset_of = {}
    for j, r in enumerate(reps):
        for k in K.members:
            coset_of[mul[k][r]] = j
    n = X.size
    points = list(itertools.product(range(n), repeat=m))
    index = {p: i for i, p in enumerate(points)}
    images = {}
    for g in up_to.generators:
        # r_j g = k_j r_tau(j)
        moves = []
        for r in reps:
            x = mul[r][g]
            t = coset_of[x]
            moves.append((t, X.action[mul[x][inv[reps[t]]]]))
        images[g] = [index[tuple(kact[f[t]] for t, kact in moves)] for f in points]
    return GSet.from_generators(up_to, len(points), images)


def product(S: GSet, T: GSet) -> GSet:
    """Diagonal action on S x T, point (s, t) at index s*|T| + t."""
    if S.group != T.group:
        raise GSetError("product of sets over different groups")
    n = T.size
    action = {}
    for h in S.group.members:
        ps, pt = S.action[h], T.action[h]
        action[h] = tuple(ps[s] * n + pt[t] for s in range(S.size) for t in range(n))
    return GSet(S.group, S.size * n, action, check=False)


# graph subgroups
# ---------------

@dataclass(frozen=True)
class GraphSubgroup:
    """The graph {(h, hom(h))} in G x Sigma_n of a homomorphism H -> Sigma_n."""
    group: Subgroup
    n: int
    hom: tuple[tuple[int, Perm], ...]

    def elements(self) -> frozenset[tuple[int, Perm]]:
        return frozenset(self.hom)

    def conjugate(self, g: int, sigma: Perm | None = None) -> GraphSubgroup:
        """(g, sigma) Gamma (g, sigma)^-1."""
        from .groups import invert
        G = self.group.parent
        sigma = sigma or tuple(range(self.n))
        sinv = invert(sigma)
        pairs = {(G.conj(g, h), compose(sigma, compose(p, sinv))) for h, p in self.hom}
        return from_pairs(G, self.n, pairs)


def graph_subgroup(T: GSet) -> GraphSubgroup:
    return GraphSubgroup(T.group, T.size, tuple(sorted(T.action.items())))


def from_pairs(G: FiniteGroup, n: int, pairs: Iterable[tuple[int, Sequence[int]]]) -> GraphSubgroup:
    """Build a graph subgroup from an explicit subgroup of G x Sigma_n."""
    pairs = {(g, tuple(p)) for g, p in pairs}
    ident = tuple(range(n))
    for g, p in pairs:
        if sorted(p) != list(range(n)):
            raise GSetError("second coordinates must be permutations")
        if g == 0 and p != ident:
            raise GSetError("subgroup meets Sigma_n nontrivially, so it is not a graph")
    proj: dict[int, Perm] = {}
    for g, p in pairs:
        if g in proj and proj[g] != p:
            raise GSetError("subgroup is not a graph (not closed or meets Sigma_n)")
        proj[g] = p
    mul = G.mul
    for a, pa in proj.items():
        for b, pb in proj.items():
            c = mul[a][b]
            if proj.get(c) != compose(pa, pb):
                raise GSetError("pairs are not closed under multiplication")
    try:
        H = G.subgroup(proj)
    except GroupError:
        raise GSetError("projection to G is not a subgroup") from None
    return GraphSubgroup(H, n, tuple(sorted(proj.items())))


def from_graph(gamma: GraphSubgroup) -> GSet:
    return GSet(gamma.group, gamma.n, dict(gamma.hom), check=True)


def graphs_conjugate(a: GraphSubgroup, b: GraphSubgroup) -> bool:
    """Whether a and b are conjugate in G x Sigma_n."""
    if a.n != b.n or a.group.order != b.group.order:
        return False
    Ta, Tb = from_graph(a), from_graph(b)
    G = a.group.parent
    for g in range(G.order):
        if a.group.conjugate(g) == b.group and conjugate(Ta, g).is_isomorphic(Tb):
            return True
    return False


# maps and the surjection factorization
# -------------------------------------

@dataclass(frozen=True)
class GMap:
    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise GSetError("map between sets over different groups")
        if len(self.images) != self.source.size or any(not 0 <= y < self.target.size for y in self.images):
            raise GSetError("map images out of range")

    def is_equivariant(self) -> bool:
        f = self.images
        for h in self.source.group.generators:
            ps, pt = self.source.action[h], self.target.action[h]
            if any(f[ps[x]] != pt[f[x]] for x in range(self.source.size)):
                return False
        return True


@dataclass(frozen=True)
class OrbitProjection:
    """Orbit map H/A -> H/B, aH -> h g B, with A <= g B g^-1.

    ``source_base`` has stabilizer exactly A and ``target_base`` exactly B
    (both canonical in their classes); ``conjugator`` is g.
    """
    source_orbit: tuple[int, ...]
    source_base: int
    source_stabilizer: Subgroup
    target_base: int
    target_stabilizer: Subgroup
    conjugator: int

    @property
    def is_isomorphism(self) -> bool:
        return self.source_stabilizer.order == self.target_stabilizer.order


@dataclass(frozen=True)
class SurjectionComponent:
    """The part of a map lying over one orbit of its image: a fold of ``width``
    copies of the orbit, preceded by one orbit projection per source orbit."""
    target_orbit: tuple[int, ...]
    projections: tuple[OrbitProjection, ...]

    @property
    def width(self) -> int:
        return len(self.projections)


@dataclass(frozen=True)
class SurjectionFactorization:
    source: GSet
    target: GSet
    image: tuple[int, ...]
    components: tuple[SurjectionComponent, ...]

    @property
    def inclusion(self) -> tuple[int, ...] | None:
        """Image points, if the image is a proper summand of the target."""
        return self.image if len(self.image) < self.target.size else None

    def steps(self) -> list[tuple]:
        """The non-identity pieces: ``("projection", A, B, g)``, ``("fold", orbit, width)``,
        ``("inclusion", image)``."""
        out: list[tuple] = []
        for c in self.components:
            for p in c.projections:
                if not p.is_isomorphism:
                    out.append(("projection", p.source_stabilizer, p.target_stabilizer, p.conjugator))
        for c in self.components:
            if c.width > 1:
                out.append(("fold", c.target_orbit, c.width))
        if self.inclusion is not None:
            out.append(("inclusion", self.image))
        return out

    def reconstruct(self) -> tuple[int, ...]:
        """Rebuild the point map from the factorization data alone."""
        H = self.source.group
        mul = H.parent.mul
        out = [-1] * self.source.size
        for c in self.components:
            for p in c.projections:
                for h in H.members:
                    out[self.source.act(h, p.source_base)] = self.target.act(mul[h][p.conjugator], p.target_base)
        return tuple(out)


def factor_surjection(f: GMap) -> SurjectionFactorization:
    """Split an equivariant map into orbit projections, folds and an image inclusion."""
    if not f.is_equivariant():
        raise GSetError("map is not equivariant")
    S, T = f.source, f.target
    H = S.group
    lat = H.lattice
    target_orbit_of = {x: o for o in T.orbits for x in o}
    by_target: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for o in S.orbits:
        by_target.setdefault(target_orbit_of[f.images[o[0]]], []).append(o)

    def base_point(X: GSet, orb: tuple[int, ...]) -> tuple[int, Subgroup]:
        canon = lat.canonical(X.stabilizer(orb[0]))
        for x in orb:
            if X.stabilizer(x) == canon:
                return x, canon
        raise AssertionError("orbit has no point with the canonical stabilizer")

    components = []
    for tgt in sorted(by_target):
        s_base, B = base_point(T, tgt)
        projections = []
        for o in by_target[tgt]:
            t0, A = base_point(S, o)
            s0 = f.images[t0]
            g = next(g for g in H.members if T.act(g, s_base) == s0)
            assert A <= B.conjugate(g)
            projections.append(OrbitProjection(o, t0, A, s_base, B, g))
        components.append(SurjectionComponent(tgt, tuple(projections)))
    image = tuple(sorted(x for o in by_target for x in o))
    return SurjectionFactorization(S, T, image, tuple(components))
