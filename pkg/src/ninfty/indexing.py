"""Indexing systems encoded by their admissible orbits.

An indexing system over an ambient group H is recorded as the set of pairs
(L, K) with K <= L <= H such that L/K is an admissible L-set.  Because
admissible sets are closed under coproducts and summands, the orbits
determine everything.  The orbit-level axioms are

* reflexivity     (L, L) for every L
* conjugation     (L, K) => (gLg^-1, gKg^-1) for g in H
* restriction     (L, K), M <= L, g in L => (M, M ∩ gKg^-1)
* composition     (L, K), (K, J) => (L, J)
* products        (L, K), (L, J), g in L => (L, K ∩ gJg^-1)

Internally a system is a bitmask over conjugacy classes of pairs, and the
last three axioms become Horn clauses over those classes.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .groups import FiniteGroup, GroupError, Subgroup, SubgroupLattice
from .gsets import GSet, all_gsets, conjugate, disjoint_union, induce, product, restrict

Pair = tuple[Subgroup, Subgroup]


class IndexingError(ValueError):
    pass


def _lattice(G: FiniteGroup | Subgroup | SubgroupLattice) -> SubgroupLattice:
    if isinstance(G, SubgroupLattice):
        return G
    return G.lattice


class PairClasses:
    """Conjugacy classes of pairs K <= L of subgroups of the ambient group, and the
    Horn clauses the axioms impose on them."""

    def __init__(self, lattice: SubgroupLattice):
        self.lattice = lattice
        G = lattice.group
        amb = lattice.ambient
        subs = lattice.subgroups
        self.pairs: list[Pair] = [(L, K) for L in subs for K in subs if K <= L]
        ids = {(L.index, K.index): i for i, (L, K) in enumerate(self.pairs)}
        conj = G.conj_table
        seen: dict[int, int] = {}
        orbits = []
        for i, (L, K) in enumerate(self.pairs):
            if i in seen:
                continue
            orb = sorted({ids[(conj[L.index][g], conj[K.index][g])] for g in amb.members})
            orbits.append(orb)
            for j in orb:
                seen[j] = -1
        # canonical representative: canonical L, then least K
        def rep(orb):
            return min(orb, key=lambda j: (self.pairs[j][0].index, self.pairs[j][1].index))
        orbits.sort(key=lambda orb: (self.pairs[rep(orb)][0].index, self.pairs[rep(orb)][1].index))
        self.orbits = orbits
        self.representatives: list[Pair] = [self.pairs[rep(o)] for o in orbits]
        self.class_of_pair = [0] * len(self.pairs)
        for c, orb in enumerate(orbits):
            for j in orb:
                self.class_of_pair[j] = c
        self._ids = ids
        self.diagonal = [c for c, (L, K) in enumerate(self.representatives) if L == K]
        self.diagonal_mask = sum(1 << c for c in self.diagonal)
        self.nondiagonal = [c for c, (L, K) in enumerate(self.representatives) if L != K]
        self.full_mask = (1 << len(orbits)) - 1

    def __len__(self) -> int:
        return len(self.orbits)

    def class_of(self, L: Subgroup, K: Subgroup) -> int:
        try:
            return self.class_of_pair[self._ids[(L.index, K.index)]]
        except KeyError:
            raise IndexingError(f"({L.label}, {K.label}) is not a pair of subgroups of "
                                f"{self.lattice.ambient.label} with K <= L") from None

    def members(self, c: int) -> list[Pair]:
        return [self.pairs[j] for j in self.orbits[c]]

    def mask_of(self, pairs: Iterable[Pair]) -> int:
        m = 0
        for L, K in pairs:
            m |= 1 << self.class_of(L, K)
        return m

    @cached_property
    def rules(self) -> list[tuple[int, int, int]]:
        """Horn clauses (a, b, c): classes a and b present force c (a == b for one premise)."""
        out = set()
        diag = self.diagonal_mask
        lat = self.lattice

        def add(a: int, b: int, c: int) -> None:
            if diag >> c & 1 or c == a or c == b:
                return
            if diag >> a & 1:
                a = b
            if diag >> b & 1:
                b = a
            if diag >> a & 1:
                raise AssertionError("diagonal premises cannot force a non-diagonal pair")
            out.add((min(a, b), max(a, b), c))

        for c, (L, K) in enumerate(self.representatives):
            if L == K:
                continue
            below_L = lat.subgroups_of(L)
            k_conjugates = {K.conjugate(g) for g in L.members}
            for M in below_L:
                for Kg in k_conjugates:
                    add(c, c, self.class_of(M, M.intersection(Kg)))
            for J in lat.subgroups_of(K):
                add(c, self.class_of(K, J), self.class_of(L, J))
            for J in below_L:
                b = self.class_of(L, J)
                for Jg in {J.conjugate(g) for g in L.members}:
                    add(c, b, self.class_of(L, K.intersection(Jg)))
        return sorted(out)

    @cached_property
    def _triggers(self) -> dict[int, list[tuple[int, int]]]:
        t: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for a, b, c in self.rules:
            t[a].append((b, c))
            if b != a:
                t[b].append((a, c))
        return t

    def close(self, mask: int, closed: int = 0) -> int:
        """Least closed mask above ``mask``; ``closed`` is a closed submask whose
        consequences need not be re-derived."""
        mask |= self.diagonal_mask
        triggers = self._triggers
        fresh = mask & ~closed
        work = [c for c in range(len(self)) if fresh >> c & 1]
        while work:
            a = work.pop()
            for b, c in triggers.get(a, ()):
                if mask >> b & 1 and not mask >> c & 1:
                    mask |= 1 << c
                    work.append(c)
        return mask

    def violated_rule(self, mask: int) -> tuple[int, int, int] | None:
        for a, b, c in self.rules:
            if mask >> a & 1 and mask >> b & 1 and not mask >> c & 1:
                return a, b, c
        return None


def pair_classes(G: FiniteGroup | Subgroup | SubgroupLattice) -> PairClasses:
    lat = _lattice(G)
    pc = lat.__dict__.get("_pair_classes")
    if pc is None:
        pc = lat.__dict__["_pair_classes"] = PairClasses(lat)
    return pc


class IndexingSystem:
    """An indexing system over ``lattice.ambient`` (immutable)."""

    def __init__(self, lattice: SubgroupLattice, mask: int):
        self.lattice = lattice
        self.mask = mask

    @property
    def classes(self) -> PairClasses:
        return pair_classes(self.lattice)

    @property
    def group(self) -> Subgroup:
        return self.lattice.ambient

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexingSystem) and other.lattice is self.lattice and other.mask == self.mask

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.mask))

    def __le__(self, other: IndexingSystem) -> bool:
        _same(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: IndexingSystem) -> bool:
        return self <= other and self != other

    def __contains__(self, pair: Pair) -> bool:
        return self.admits(*pair)

    def admits(self, L: Subgroup, K: Subgroup) -> bool:
        """Whether the orbit L/K is admissible."""
        return bool(self.mask >> self.classes.class_of(L, K) & 1)

    def admits_set(self, T: GSet) -> bool:
        L = T.group
        return all(self.admits(L, T.stabilizer(o[0])) for o in T.orbits)

    @property
    def pairs(self) -> frozenset[Pair]:
        pc = self.classes
        return frozenset(p for c in range(len(pc)) if self.mask >> c & 1 for p in pc.members(c))

    def canonical_pairs(self) -> list[Pair]:
        pc = self.classes
        return [pc.representatives[c] for c in range(len(pc)) if self.mask >> c & 1]

    def transfers(self) -> list[Pair]:
        """Canonical non-diagonal pairs."""
        return [(L, K) for L, K in self.canonical_pairs() if L != K]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __repr__(self) -> str:
        body = ", ".join(f"{L.label}/{K.label}" for L, K in self.transfers())
        return f"IndexingSystem({self.group.label}: {{{body}}})"

    def to_json(self) -> dict:
        return {
            "group": self.lattice.group.name,
            "ambient": self.group.label,
            "pairs": [[L.label, K.label] for L, K in self.canonical_pairs()],
        }


def _same(a: IndexingSystem, b: IndexingSystem) -> None:
    if a.lattice is not b.lattice:
        raise IndexingError("indexing systems over different groups")


def system_from_json(G: FiniteGroup, doc: dict | str) -> IndexingSystem:
    if isinstance(doc, str):
        doc = json.loads(doc)
    amb = G.parse_subgroup(doc.get("ambient", "G"))
    pairs = [(G.parse_subgroup(a), G.parse_subgroup(b)) for a, b in doc["pairs"]]
    A = closure(amb.lattice, pairs)
    if A.mask != pair_classes(amb.lattice).mask_of(pairs) | A.classes.diagonal_mask:
        raise IndexingError("pair list in document is not closed")
    return A


def parse_pairs(G: FiniteGroup, text: str) -> list[Pair]:
    """``C4/C2, C2/e`` -> [(C4, C2), (C2, e)]."""
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        a, sep, b = item.partition("/")
        if not sep:
            raise IndexingError(f"pairs are written L/K, got {item!r}")
        out.append((G.parse_subgroup(a), G.parse_subgroup(b)))
    return out


# constructors and lattice operations
# -----------------------------------

def trivial_system(G: FiniteGroup | Subgroup | SubgroupLattice) -> IndexingSystem:
    lat = _lattice(G)
    return IndexingSystem(lat, pair_classes(lat).diagonal_mask)


def complete_system(G: FiniteGroup | Subgroup | SubgroupLattice) -> IndexingSystem:
    lat = _lattice(G)
    return IndexingSystem(lat, pair_classes(lat).full_mask)


def closure(G: FiniteGroup | Subgroup | SubgroupLattice, seed: Iterable[Pair]) -> IndexingSystem:
    """Least indexing system containing the given pairs."""
    lat = _lattice(G)
    pc = pair_classes(lat)
    return IndexingSystem(lat, pc.close(pc.mask_of(seed)))


def meet(a: IndexingSystem, b: IndexingSystem) -> IndexingSystem:
    _same(a, b)
    return IndexingSystem(a.lattice, a.mask & b.mask)


def join(a: IndexingSystem, b: IndexingSystem) -> IndexingSystem:
    _same(a, b)
    return IndexingSystem(a.lattice, a.classes.close(a.mask | b.mask))


def restrict_system(A: IndexingSystem, H: Subgroup) -> IndexingSystem:
    """The system over H whose admissible orbits are those of A."""
    if not H <= A.group:
        raise IndexingError(f"{H.label} is not contained in {A.group.label}")
    lat = H.lattice
    if lat is A.lattice:
        return A
    pc = pair_classes(lat)
    mask = 0
    for c, (L, K) in enumerate(pc.representatives):
        if A.admits(L, K):
            mask |= 1 << c
    return IndexingSystem(lat, mask)


def from_pairs(G: FiniteGroup | Subgroup | SubgroupLattice, pairs: Iterable[Pair]) -> IndexingSystem:
    """Wrap a pair set that is already an indexing system (validated)."""
    lat = _lattice(G)
    pairs = set(pairs)
    report = validate(lat, pairs)
    if not report.valid:
        raise IndexingError(f"not an indexing system: {report.violations[0]}")
    return IndexingSystem(lat, pair_classes(lat).mask_of(pairs))


# validation
# ----------

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    missing: Pair | None

    def describe(self) -> str:
        w = ", ".join(_fmt(x) for x in self.witness)
        miss = f" demands {_fmt(self.missing)}" if self.missing else ""
        return f"{self.axiom}: {w}{miss}"

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": [_jsonable(x) for x in self.witness],
                "missing": _jsonable(self.missing) if self.missing else None}


def _fmt(x) -> str:
    if isinstance(x, Subgroup):
        return x.label
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


def _jsonable(x):
    if isinstance(x, Subgroup):
        return x.label
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def validate(G: FiniteGroup | Subgroup | SubgroupLattice, pairs: Iterable[Pair]) -> ValidationReport:
    """Check a raw pair set against every orbit-level axiom, reporting one witness per
    (axiom, missing pair)."""
    lat = _lattice(G)
    amb = lat.ambient
    P = set(pairs)
    found: dict[tuple[str, Pair | None], Violation] = {}

    def need(axiom: str, witness: tuple, pair: Pair) -> None:
        if pair not in P and (axiom, pair) not in found:
            found[(axiom, pair)] = Violation(axiom, witness, pair)

    for L, K in P:
        if not (K <= L <= amb):
            found[("pair", (L, K))] = Violation("pair", ((L, K),), None)
    P = {(L, K) for L, K in P if K <= L <= amb}
    for L in lat.subgroups:
        need("reflexivity", (L,), (L, L))
    by_top: dict[Subgroup, list[Subgroup]] = defaultdict(list)
    for L, K in P:
        by_top[L].append(K)
    conjugates: dict[tuple[Subgroup, Subgroup], set[Subgroup]] = {}

    def conj_by(K: Subgroup, L: Subgroup) -> set[Subgroup]:
        # distinct L-conjugates of K; the witness element is recovered on demand
        if (K, L) not in conjugates:
            conjugates[(K, L)] = {K.conjugate(g) for g in L.members}
        return conjugates[(K, L)]

    def element(L: Subgroup, K: Subgroup, Kg: Subgroup) -> int:
        return next(g for g in L.members if K.conjugate(g) == Kg)

    for L, K in sorted(P, key=lambda p: (p[0].index, p[1].index)):
        for g in amb.generators:
            need("conjugation", ((L, K), g), (L.conjugate(g), K.conjugate(g)))
        for M in lat.subgroups_of(L):
            for Kg in conj_by(K, L):
                pair = (M, M.intersection(Kg))
                if pair not in P and ("restriction", pair) not in found:
                    need("restriction", ((L, K), M, element(L, K, Kg)), pair)
        for J in by_top.get(K, []):
            need("composition", ((L, K), (K, J)), (L, J))
        for J in by_top[L]:
            for Jg in conj_by(J, L):
                pair = (L, K.intersection(Jg))
                if pair not in P and ("product", pair) not in found:
                    need("product", ((L, K), (L, J), element(L, J, Jg)), pair)
    violations = tuple(found.values())
    return ValidationReport(not violations, violations)


def satisfies_definition(G: FiniteGroup | Subgroup | SubgroupLattice, pairs: Iterable[Pair]) -> bool:
    """Check closure properties directly on G-sets built from the admissible orbits:
    trivial sets, restriction, conjugation, Cartesian products and self-induction."""
    lat = _lattice(G)
    amb = lat.ambient
    P = set(pairs)

    def admissible(T: GSet) -> bool:
        return all((T.group, T.stabilizer(o[0])) in P for o in T.orbits)

    for L in lat.subgroups:
        if not admissible(GSet.trivial(L, 1)):
            return False
    orbits = {}
    for L, K in P:
        if not (K <= L <= amb):
            return False
        orbits[(L, K)] = GSet.orbit(L, K)
    for (L, K), T in orbits.items():
        for g in amb.members:
            if not admissible(conjugate(T, g)):
                return False
        for M in lat.subgroups_of(L):
            if not admissible(restrict(T, M)):
                return False
        for (L2, J), S in orbits.items():
            if L2 == L and not admissible(product(T, S)):
                return False
            if L2 == K and not admissible(induce(K, L, S)):
                return False
    return True


# enumeration
# -----------

@dataclass
class IndexingLattice:
    lattice: SubgroupLattice
    systems: list[IndexingSystem]
    hasse_edges: list[tuple[int, int]]   # (lower, upper) positions in ``systems``

    def __len__(self) -> int:
        return len(self.systems)

    def index(self, A: IndexingSystem) -> int:
        return self.systems.index(A)

    def to_json(self) -> dict:
        return {
            "group": self.lattice.group.name,
            "ambient": self.lattice.ambient.label,
            "count": len(self.systems),
            "systems": [A.to_json()["pairs"] for A in self.systems],
            "hasse": [list(e) for e in self.hasse_edges],
        }


def next_closures(pc: PairClasses) -> Iterator[int]:
    """Closed masks in lectic order (NextClosure over the non-diagonal classes)."""
    items = pc.nondiagonal
    m = len(items)
    bit = [1 << c for c in items]
    A = pc.close(0)
    yield A
    full = pc.close(pc.full_mask)
    while A != full:
        for i in range(m - 1, -1, -1):
            if A & bit[i]:
                A &= ~bit[i]
                continue
            B = pc.close(A | bit[i])
            # diagonal classes sit in both masks, so comparing raw low bits is lectic
            if (A ^ B) & (bit[i] - 1) == 0:
                A = B
                yield A
                break


def enumerate_all(G: FiniteGroup | Subgroup | SubgroupLattice) -> IndexingLattice:
    """Every indexing system, ordered by size then mask, with Hasse edges."""
    lat = _lattice(G)
    pc = pair_classes(lat)
    masks = sorted(set(next_closures(pc)), key=lambda m: (bin(m).count("1"), m))
    systems = [IndexingSystem(lat, m) for m in masks]
    return IndexingLattice(lat, systems, hasse_edges(pc, masks))


def hasse_edges(pc: PairClasses, masks: Sequence[int]) -> list[tuple[int, int]]:
    """Covering pairs: the upper covers of A are the minimal closures of A plus one class."""
    pos = {m: i for i, m in enumerate(masks)}
    edges = []
    for i, A in enumerate(masks):
        ups = {pc.close(A | (1 << c), closed=A) for c in pc.nondiagonal if not A >> c & 1}
        for B in ups:
            if not any(C != B and C & ~B == 0 for C in ups):
                edges.append((i, pos[B]))
    return sorted(edges)


def brute_force_systems(G: FiniteGroup | Subgroup | SubgroupLattice) -> list[IndexingSystem]:
    """Oracle: every conjugation-closed, diagonal-containing pair set accepted by ``validate``.

    Candidates are explored as a binary decision tree over the non-diagonal
    classes (no closure operator involved).  A branch is cut as soon as some
    axiom instance has all premises decided-present and its conclusion
    decided-absent, which no completion can repair; every surviving leaf is
    then checked with ``validate``.
    """
    lat = _lattice(G)
    pc = pair_classes(lat)
    items = pc.nondiagonal
    touching: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for rule in pc.rules:
        for c in set(rule):
            touching[c].append(rule)
    out = []

    def dead(c: int, present: int, decided: int) -> bool:
        for a, b, d in touching[c]:
            if decided >> d & 1 and not present >> d & 1 and present >> a & 1 and present >> b & 1:
                return True
        return False

    def rec(i: int, present: int, decided: int) -> None:
        if i == len(items):
            pairs = [p for c in range(len(pc)) if present >> c & 1 for p in pc.members(c)]
            if validate(lat, pairs).valid:
                out.append(IndexingSystem(lat, present))
            return
        c = items[i]
        d2 = decided | 1 << c
        for p2 in (present, present | 1 << c):
            if not dead(c, p2, d2):
                rec(i + 1, p2, d2)

    base = pc.diagonal_mask
    rec(0, base, base)
    return sorted(out, key=lambda A: (len(A), A.mask))


def naive_systems(G: FiniteGroup | Subgroup | SubgroupLattice) -> list[IndexingSystem]:
    """Oracle without pruning: filter all 2^m candidates through ``validate``."""
    lat = _lattice(G)
    pc = pair_classes(lat)
    items = pc.nondiagonal
    out = []
    for bits in range(1 << len(items)):
        mask = pc.diagonal_mask
        for i, c in enumerate(items):
            if bits >> i & 1:
                mask |= 1 << c
        pairs = [p for c in range(len(pc)) if mask >> c & 1 for p in pc.members(c)]
        if validate(lat, pairs).valid:
            out.append(IndexingSystem(lat, mask))
    return sorted(out, key=lambda A: (len(A), A.mask))


# family sequences
# ----------------

@dataclass(frozen=True)
class FamilySequence:
    """Graph subgroups of admissible sets of one arity, up to conjugacy in G x Sigma_n.

    Each member is keyed as (canonical H index, orbit-type key of the H-set),
    minimized over the normalizer of H.
    """
    system: IndexingSystem
    arity: int
    members: frozenset[tuple[int, tuple[tuple[int, int], ...]]]

    def key(self, T: GSet) -> tuple[int, tuple[tuple[int, int], ...]]:
        return graph_key(self.system.lattice, T)

    def __contains__(self, T: GSet) -> bool:
        return T.size == self.arity and self.key(T) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def gsets(self) -> list[GSet]:
        G = self.system.lattice.group
        subs = G.subgroups
        return [GSet.from_orbits(subs[h], [(subs[k], m) for k, m in orbits]) for h, orbits in sorted(self.members)]


def graph_key(lat: SubgroupLattice, T: GSet) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Conjugacy invariant of Gamma_T in G x Sigma_n: the H-set up to isomorphism,
    with H moved to its class representative and minimized over its normalizer."""
    H = T.group
    g0 = lat.witness(H)  # g0 . canon . g0^-1 == H
    G = lat.group
    T = conjugate(T, G.inv[g0])
    canon = T.group
    best = None
    hl = canon.lattice
    for g in lat.ambient.members:
        if canon.conjugate(g) != canon:
            continue
        c = defaultdict(int)
        for K, m in T.orbit_types():
            c[hl.canonical(K.conjugate(g)).index] += m
        key = tuple(sorted(c.items()))
        if best is None or key < best:
            best = key
    return canon.index, best


def family_sequence(A: IndexingSystem, n: int) -> FamilySequence:
    """Graphs of all admissible H-sets of size n, for every subgroup H."""
    lat = A.lattice
    members = set()
    for H in lat.representatives():
        allowed = [K for K in H.lattice.representatives() if A.admits(H, K)]
        for T in all_gsets(H, n, allowed):
            if T.size == n:
                members.add(graph_key(lat, T))
    return FamilySequence(A, n, frozenset(members))


# operadic composition closure
# ----------------------------

@dataclass(frozen=True)
class CompositionReport:
    passed: bool
    checked: int
    counterexample: tuple | None = None

    def to_json(self) -> dict:
        ce = None
        if self.counterexample:
            T, fibers, S = self.counterexample
            ce = {"base": repr(T), "fibers": [repr(x) for x in fibers], "composite": repr(S)}
        return {"axiom": "composition-closure", "status": "pass" if self.passed else "fail",
                "checked": self.checked, "witnesses": [ce] if ce else []}


def check_composition_closure(A: IndexingSystem, n_max: int) -> CompositionReport:
    """For admissible H-sets T with |T| <= n_max and admissible fibers S_t over the
    stabilizers (total size <= n_max), check that the composite ⊔_t S_t is admissible.

    The composite is built point-wise: an orbit H/K of T with fiber S contributes
    H x_K S.
    """
    lat = A.lattice
    checked = 0
    for H in lat.representatives():
        allowed = [K for K in H.lattice.representatives() if A.admits(H, K)]
        fiber_cache: dict[Subgroup, list[GSet]] = {}

        def fibers(K: Subgroup, room: int) -> list[GSet]:
            if K not in fiber_cache:
                ok = [J for J in K.lattice.representatives() if A.admits(K, J)]
                fiber_cache[K] = list(all_gsets(K, n_max, ok))
            return [S for S in fiber_cache[K] if S.size <= room]

        for T in all_gsets(H, n_max, allowed):
            slots = [(T.stabilizer(o[0]), o) for o in T.orbits]
            for choice in _fiber_choices(slots, fibers, n_max):
                parts = [induce(K, H, S) for (K, _), S in zip(slots, choice)]
                composite = disjoint_union(H, parts)
                checked += 1
                if not A.admits_set(composite):
                    return CompositionReport(False, checked, (T, tuple(choice), composite))
    return CompositionReport(True, checked)


def _fiber_choices(slots, fibers, room):
    if not slots:
        yield []
        return
    (K, _), rest = slots[0], slots[1:]
    for S in fibers(K, room):
        for tail in _fiber_choices(rest, fibers, room - S.size):
            yield [S] + tail


# DOT output
# ----------

def hasse_dot(L: IndexingLattice, highlight: dict[int, str] | None = None, name: str = "indexing") -> str:
    """Hasse diagram in DOT; nodes are labelled by their number of admissible pair classes.
    ``highlight`` maps system positions to a fill colour."""
    highlight = highlight or {}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i, A in enumerate(L.systems):
        attrs = [f'label="{len(A.transfers())}"']
        title = "; ".join(f"{a.label}/{b.label}" for a, b in A.transfers()) or "trivial"
        attrs.append(f'tooltip="{title}"')
        if i in highlight:
            attrs += ["style=filled", f'fillcolor="{highlight[i]}"']
        lines.append(f"  s{i} [{', '.join(attrs)}];")
    for a, b in L.hasse_edges:
        lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
