"""Operad models as descriptors, and the indexing systems they determine.

No operad spaces are built.  Each model carries enough data to decide which
orbits H/K are admissible:

* disks (and Steiner): H/K embeds H-equivariantly in U restricted to H, which
  happens iff the K-fixed subspace is strictly larger than every K'-fixed
  subspace for K < K' <= H;
* isometries: Z[H/K] (x) U embeds in U, i.e. every constituent of
  Ind_K^H Res_K U already occurs in U.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .characters import character_table, constituents_contained, fixed_dim, induce_character, kernel_contains
from .groups import FiniteGroup, Subgroup, quotient_group
from .indexing import (IndexingLattice, IndexingSystem, Pair, complete_system, enumerate_all,
                       meet, pair_classes, trivial_system)
from .universes import Universe, all_universes, parse_universe, restrict_universe

KINDS = ("trivial", "complete", "disks", "steiner", "isometries", "explicit")
UNIVERSE_KINDS = ("disks", "steiner", "isometries")


class OperadError(ValueError):
    pass


@dataclass(frozen=True)
class OperadModel:
    group: Subgroup
    kind: str
    universe: Universe | None = None
    system: IndexingSystem | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OperadError(f"unknown operad kind {self.kind!r}")
        if self.kind in UNIVERSE_KINDS:
            if self.universe is None:
                raise OperadError(f"{self.kind} needs a universe")
            if self.universe.group != self.group:
                raise OperadError("the universe lives over a different group")
        if self.kind == "explicit":
            if self.system is None:
                raise OperadError("explicit models need an indexing system")
            if self.system.group != self.group:
                raise OperadError("the indexing system lives over a different group")

    @classmethod
    def trivial(cls, G: FiniteGroup | Subgroup) -> OperadModel:
        return cls(_sub(G), "trivial")

    @classmethod
    def complete(cls, G: FiniteGroup | Subgroup) -> OperadModel:
        return cls(_sub(G), "complete")

    @classmethod
    def disks(cls, U: Universe) -> OperadModel:
        return cls(U.group, "disks", U)

    @classmethod
    def steiner(cls, U: Universe) -> OperadModel:
        return cls(U.group, "steiner", U)

    @classmethod
    def isometries(cls, U: Universe) -> OperadModel:
        return cls(U.group, "isometries", U)

    @classmethod
    def explicit(cls, A: IndexingSystem) -> OperadModel:
        return cls(A.group, "explicit", system=A)

    def describe(self) -> str:
        if self.universe is not None:
            return f"{self.kind}({self.universe.to_spec()})"
        return self.kind

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperadModel):
            return NotImplemented
        return (self.group, self.kind, self.universe) == (other.group, other.kind, other.universe) and \
            (self.kind != "explicit" or self.system == other.system)

    def __hash__(self) -> int:
        return hash((self.group, self.kind, self.universe))


def _sub(G: FiniteGroup | Subgroup) -> Subgroup:
    return G.whole if isinstance(G, FiniteGroup) else G


# admissibility tests on single orbits
# ------------------------------------

@lru_cache(maxsize=None)
def _restricted(U: Universe, H: Subgroup) -> Universe:
    return restrict_universe(U, H)


def disks_admissible(U: Universe, H: Subgroup, K: Subgroup, prune: bool = True) -> bool:
    """Whether H/K embeds H-equivariantly in U."""
    chi = _restricted(U, H).character
    lat = U.group.lattice
    top = fixed_dim(chi, K)
    over = lat.minimal_overgroups(K, H) if prune else lat.overgroups(K, H)
    return all(fixed_dim(chi, Kp) < top for Kp in over)


def isometries_admissible(U: Universe, H: Subgroup, K: Subgroup) -> bool:
    """Whether Z[H/K] (x) U embeds in U, as H-representations."""
    ind = induce_character(K, H, _restricted(U, K).character)
    return constituents_contained(ind, _restricted(U, H).character)


def _system(G: Subgroup, test) -> IndexingSystem:
    lat = G.lattice
    pc = pair_classes(lat)
    mask = pc.diagonal_mask
    for c in pc.nondiagonal:
        L, K = pc.representatives[c]
        if test(L, K):
            mask |= 1 << c
    return IndexingSystem(lat, mask)


@lru_cache(maxsize=None)
def _universe_system(kind: str, U: Universe) -> IndexingSystem:
    if kind == "isometries":
        return _system(U.group, lambda L, K: isometries_admissible(U, L, K))
    return _system(U.group, lambda L, K: disks_admissible(U, L, K))


def admissibles(M: OperadModel) -> IndexingSystem:
    if M.kind == "trivial":
        return trivial_system(M.group)
    if M.kind == "complete":
        return complete_system(M.group)
    if M.kind == "explicit":
        return M.system
    return _universe_system("isometries" if M.kind == "isometries" else "disks", M.universe)


# operad-level functors
# ---------------------

def operad_product(M1: OperadModel, M2: OperadModel) -> OperadModel:
    if M1.group != M2.group:
        raise OperadError("operads over different groups")
    return OperadModel.explicit(meet(admissibles(M1), admissibles(M2)))


def operad_coinduce(M: OperadModel, up_to: FiniteGroup | Subgroup) -> OperadModel:
    """Coinduction from H = M.group up to G: K/L is admissible iff every
    restriction of g.(K/L) to H ∩ gKg^-1 is admissible for M."""
    G = _sub(up_to)
    H = M.group
    if not H <= G:
        raise OperadError(f"{H.label} is not contained in {G.label}")
    A = admissibles(M)
    conj = G.parent.conj_table
    subs = G.parent._subgroups

    def ok(K: Subgroup, L: Subgroup) -> bool:
        for g in G.members:
            Kg = subs[conj[K.index][g]]
            Lg = subs[conj[L.index][g]]
            Mp = H.intersection(Kg)
            for Lx in {conj[Lg.index][x] for x in Kg.members}:
                if not A.admits(Mp, Mp.intersection(subs[Lx])):
                    return False
        return True

    return OperadModel.explicit(_system(G, ok))


def check_family(G: Subgroup, family: Iterable[Subgroup]) -> frozenset[Subgroup]:
    fam = frozenset(family)
    if not fam:
        raise OperadError("a family must be nonempty")
    lat = G.lattice
    for A in fam:
        if not A <= G:
            raise OperadError(f"{A.label} is not a subgroup of {G.label}")
        for B in lat.subgroups_of(A):
            if B not in fam:
                raise OperadError(f"not a family: {A.label} is present but its subgroup {B.label} is not")
        for g in G.members:
            if A.conjugate(g) not in fam:
                raise OperadError(f"not a family: missing a conjugate of {A.label}")
    return fam


def operad_cotensor(M: OperadModel, family: Iterable[Subgroup]) -> OperadModel:
    """Maps out of E F into M, for F a family of subgroups.

    L/K is admissible iff for every A in F the restriction of L/K to L ∩ A is
    admissible for M.
    """
    G = M.group
    fam = check_family(G, family)
    A_M = admissibles(M)
    conj = G.parent.conj_table
    subs = G.parent._subgroups

    def ok(L: Subgroup, K: Subgroup) -> bool:
        conjugates = {conj[K.index][x] for x in L.members}
        for A in fam:
            Mp = L.intersection(A)
            for Kx in conjugates:
                if not A_M.admits(Mp, Mp.intersection(subs[Kx])):
                    return False
        return True

    return OperadModel.explicit(_system(G, ok))


def operad_fixed_points(M: OperadModel, N: Subgroup) -> OperadModel:
    """N-fixed points, an operad over G/N (M must live over a whole group)."""
    G = M.group
    if G != G.parent.whole:
        raise OperadError("fixed points are taken for models over the whole group")
    if not N.is_normal_in(G):
        raise OperadError(f"{N.label} is not normal in {G.label}")
    Q = quotient_group(G.parent, N)
    A = admissibles(M)
    return OperadModel.explicit(_system(Q.group.whole, lambda L, K: A.admits(Q.preimage(L), Q.preimage(K))))


def make_model(G: FiniteGroup | Subgroup, kind: str, universe: str | Universe | None = None) -> OperadModel:
    H = _sub(G)
    if kind in UNIVERSE_KINDS:
        if universe is None:
            raise OperadError(f"{kind} needs a universe")
        U = universe if isinstance(universe, Universe) else parse_universe(H, universe)
        return OperadModel(H, kind, U)
    if kind in ("trivial", "complete"):
        return OperadModel(H, kind)
    raise OperadError(f"unknown operad kind {kind!r}")


# separation
# ----------

@dataclass
class Separation:
    mode: str
    universe: Universe
    spec: str
    witness: Pair
    disks: IndexingSystem
    isometries: IndexingSystem
    normal: Subgroup | None = None
    missing: Pair | None = None      # G/N, not disks-admissible
    swept: int = 0
    verified: bool = False

    def to_json(self) -> dict:
        G, K = self.witness
        doc = {
            "mode": self.mode,
            "group": G.parent.name,
            "universe": self.spec,
            "constituents": sorted(self.universe.constituents),
            "witness": f"{G.label}/{K.label}",
            "disks": self.disks.to_json()["pairs"],
            "isometries": self.isometries.to_json()["pairs"],
            "verified": self.verified,
        }
        if self.normal is not None:
            doc["normal"] = self.normal.label
        if self.missing is not None:
            doc["missing"] = f"{self.missing[0].label}/{self.missing[1].label}"
        if self.mode == "all-isometries":
            doc["universes_swept"] = self.swept
        return doc


MODES = ("pairwise", "all-isometries")


def _is_simple(G: Subgroup) -> bool:
    return not _proper_normals(G)


def _proper_normals(G: Subgroup) -> list[Subgroup]:
    return [N for N in G.lattice.subgroups if 1 < N.order < G.order and N.is_normal_in(G)]


def find_separating_universe(G: FiniteGroup | Subgroup, mode: str = "pairwise") -> Separation | None:
    """A universe U whose disks and isometries operads differ.

    ``pairwise`` compares D(U) with L(U); ``all-isometries`` additionally checks
    D(U) against L(W) for every universe W (non-simple groups only).
    """
    if mode not in MODES:
        raise OperadError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    H = _sub(G)
    if H.order <= 3:
        return None
    e = H.lattice.subgroups[0]
    normals = _proper_normals(H)
    if not normals:
        if mode == "all-isometries":
            return None
        return _simple_search(H, e)
    N = normals[0]
    spec = f"gen:triv,regbar:{N.label}"
    U = parse_universe(H, spec)
    D = _universe_system("disks", U)
    L = _universe_system("isometries", U)
    verified = D.admits(H, e) and not L.admits(H, e)
    out = Separation(mode, U, spec, (H, e), D, L, normal=N, missing=(H, N))
    if mode == "pairwise":
        out.verified = verified
        return out
    verified = verified and not D.admits(H, N)
    for W in all_universes(H):
        out.swept += 1
        if _universe_system("isometries", W) == D:
            verified = False
    out.verified = verified
    return out


def _simple_search(H: Subgroup, e: Subgroup) -> Separation | None:
    table = character_table(H)
    for i in range(1, len(table)):
        j = table.conjugate_of[i]
        if j < i:
            continue
        if any(kernel_contains(table.irreducibles[i], N) for N in H.lattice.subgroups if N.order > 1
               and N.is_normal_in(H)):
            continue
        spec = "gen:triv,irr:%d" % i
        U = parse_universe(H, spec)
        D = _universe_system("disks", U)
        L = _universe_system("isometries", U)
        if D.admits(H, e) and not L.admits(H, e):
            return Separation("pairwise", U, spec, (H, e), D, L, verified=True)
    return None


# census
# ------

@dataclass
class CensusRow:
    system: IndexingSystem
    disks: list[str]
    isometries: list[str]

    def to_json(self) -> dict:
        return {"pairs": self.system.to_json()["pairs"], "transfers": len(self.system.transfers()),
                "disks": self.disks, "isometries": self.isometries}


@dataclass
class Census:
    group: Subgroup
    lattice: IndexingLattice
    rows: list[CensusRow]
    universes: int

    def realized_by(self, kind: str) -> list[int]:
        return [i for i, r in enumerate(self.rows) if getattr(r, kind)]

    def to_json(self) -> dict:
        return {
            "group": self.group.parent.name,
            "universes": self.universes,
            "systems": len(self.rows),
            "disks_realized": len(self.realized_by("disks")),
            "isometries_realized": len(self.realized_by("isometries")),
            "rows": [r.to_json() for r in self.rows],
        }


def realization_census(G: FiniteGroup | Subgroup) -> Census:
    H = _sub(G)
    lat = enumerate_all(H)
    rows = [CensusRow(A, [], []) for A in lat.systems]
    n = 0
    for W in all_universes(H):
        n += 1
        spec = W.to_spec()
        rows[lat.index(_universe_system("disks", W))].disks.append(spec)
        rows[lat.index(_universe_system("isometries", W))].isometries.append(spec)
    return Census(H, lat, rows, n)
