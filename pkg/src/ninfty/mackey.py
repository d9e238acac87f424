"""The Burnside Mackey functor with transfers and norms only along admissible maps.

A(H) is the free abelian group on the H-orbit types H/J (J up to H-conjugacy),
with the product of H-sets as multiplication.  Restriction, transfer
(induction) and conjugation are integer matrices; the norm is coinduction of
sets and is only multiplicative, so it is applied to actual H-sets.

Everything that does not depend on the indexing system (the matrices and the
G-set computations behind the multiplicative formula) is cached per group;
a BurnsideMackey only decides which transfers and norms are exposed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .groups import FiniteGroup, Subgroup, double_cosets_within
from .gsets import GSet, all_gsets, coinduce, conjugate, induce, product, restrict
from .indexing import IndexingSystem

Vector = tuple[int, ...]


class InadmissibleError(ValueError):
    """A transfer or norm along a map the indexing system does not admit."""


def _key(L: Subgroup, K: Subgroup) -> str:
    return f"{L.label}/{K.label}"


class BurnsideData:
    """Matrices of the complete Burnside Mackey functor of one group."""

    def __init__(self, G: FiniteGroup):
        self.group = G
        self._basis: dict[int, list[Subgroup]] = {}
        self._res: dict[tuple[int, int], list[Vector]] = {}
        self._tr: dict[tuple[int, int], list[Vector]] = {}
        self._conj: dict[tuple[int, int], list[Vector]] = {}
        self._mult: dict[int, list[list[Vector]]] = {}
        self._mdc: dict[tuple, bool] = {}

    def basis(self, H: Subgroup) -> list[Subgroup]:
        if H.index not in self._basis:
            self._basis[H.index] = H.lattice.representatives()
        return self._basis[H.index]

    def vector(self, T: GSet) -> Vector:
        """Coordinates of the isomorphism class of T."""
        basis = self.basis(T.group)
        pos = {J.index: i for i, J in enumerate(basis)}
        v = [0] * len(basis)
        for J, m in T.orbit_types():
            v[pos[J.index]] += m
        return tuple(v)

    def gset(self, H: Subgroup, v: Vector) -> GSet:
        if any(c < 0 for c in v):
            raise ValueError("only non-negative vectors are H-sets")
        return GSet.from_orbits(H, [(J, c) for J, c in zip(self.basis(H), v) if c])

    def orbit(self, H: Subgroup, i: int) -> GSet:
        return GSet.orbit(H, self.basis(H)[i])

    def res(self, H: Subgroup, K: Subgroup) -> list[Vector]:
        key = (H.index, K.index)
        if key not in self._res:
            if not K <= H:
                raise ValueError(f"{K.label} is not contained in {H.label}")
            self._res[key] = [self.vector(restrict(self.orbit(H, i), K)) for i in range(len(self.basis(H)))]
        return self._res[key]

    def tr(self, K: Subgroup, H: Subgroup) -> list[Vector]:
        key = (K.index, H.index)
        if key not in self._tr:
            if not K <= H:
                raise ValueError(f"{K.label} is not contained in {H.label}")
            self._tr[key] = [self.vector(induce(K, H, self.orbit(K, i))) for i in range(len(self.basis(K)))]
        return self._tr[key]

    def conj(self, g: int, K: Subgroup) -> list[Vector]:
        key = (g, K.index)
        if key not in self._conj:
            self._conj[key] = [self.vector(conjugate(self.orbit(K, i), g)) for i in range(len(self.basis(K)))]
        return self._conj[key]

    def mult(self, H: Subgroup) -> list[list[Vector]]:
        if H.index not in self._mult:
            n = len(self.basis(H))
            orbits = [self.orbit(H, i) for i in range(n)]
            self._mult[H.index] = [[self.vector(product(orbits[i], orbits[j])) for j in range(n)]
                                   for i in range(n)]
        return self._mult[H.index]

    def multiplicative_formula(self, H: Subgroup, K: Subgroup, Kp: Subgroup, X: GSet) -> bool:
        """res^H_{K'} N_K^H X against the product over K'gK of N^{K'}_{K'∩gKg^-1} res c_g X."""
        key = (H.index, K.index, Kp.index, self.vector(X))
        if key not in self._mdc:
            lhs = restrict(coinduce(K, H, X), Kp)
            rhs = GSet.trivial(Kp, 1)
            for g, I in double_cosets_within(Kp, K, H):
                rhs = product(rhs, coinduce(I, Kp, restrict(conjugate(X, g), I)))
            self._mdc[key] = lhs.is_isomorphic(rhs)
        return self._mdc[key]


def burnside_data(G: FiniteGroup) -> BurnsideData:
    if "_burnside" not in G.__dict__:
        G.__dict__["_burnside"] = BurnsideData(G)
    return G.__dict__["_burnside"]


def apply(mat: list[Vector], v: Vector) -> Vector:
    if not mat:
        return ()
    out = [0] * len(mat[0])
    for c, col in zip(v, mat):
        if c:
            for i, x in enumerate(col):
                out[i] += c * x
    return tuple(out)


def add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(int(j == i) for j in range(n))


@dataclass
class Report:
    axiom: str
    checked: int = 0
    witnesses: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "status": self.status, "checked": self.checked,
                "witnesses": self.witnesses}


class BurnsideMackey:
    def __init__(self, system: IndexingSystem):
        self.system = system
        self.group = system.group
        self.data = burnside_data(self.group.parent)

    @cached_property
    def subgroups(self) -> list[Subgroup]:
        return self.group.lattice.subgroups

    def basis(self, H: Subgroup) -> list[Subgroup]:
        return self.data.basis(H)

    def rank(self, H: Subgroup) -> int:
        return len(self.basis(H))

    def unit(self, H: Subgroup) -> Vector:
        return unit_vector(self.rank(H), self.rank(H) - 1)

    def _admit(self, H: Subgroup, K: Subgroup, what: str) -> None:
        if not self.system.admits(H, K):
            raise InadmissibleError(f"{what} along {_key(H, K)}: the orbit {_key(H, K)} is not admissible")

    def res(self, H: Subgroup, K: Subgroup, v: Vector) -> Vector:
        return apply(self.data.res(H, K), v)

    def tr(self, K: Subgroup, H: Subgroup, v: Vector) -> Vector:
        self._admit(H, K, "transfer")
        return apply(self.data.tr(K, H), v)

    def transfer_matrix(self, K: Subgroup, H: Subgroup) -> list[Vector]:
        self._admit(H, K, "transfer")
        return self.data.tr(K, H)

    def conj(self, g: int, K: Subgroup, v: Vector) -> Vector:
        return apply(self.data.conj(g, K), v)

    def mul(self, H: Subgroup, a: Vector, b: Vector) -> Vector:
        table = self.data.mult(H)
        out = (0,) * self.rank(H)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out = add(out, tuple(x * y * c for c in table[i][j]))
        return out

    def norm(self, K: Subgroup, H: Subgroup, X: GSet) -> GSet:
        self._admit(H, K, "norm")
        return coinduce(K, H, X)

    def norm_vector(self, K: Subgroup, H: Subgroup, v: Vector) -> Vector:
        return self.data.vector(self.norm(K, H, self.data.gset(K, v)))

    def transfers(self) -> list[tuple[Subgroup, Subgroup]]:
        """Every admissible (H, K), diagonal included."""
        return [(H, K) for H in self.subgroups for K in self.subgroups if K <= H and self.system.admits(H, K)]

    def to_json(self) -> dict:
        doc = {"group": self.group.parent.name, "subgroups": {}}
        for H in self.subgroups:
            entry = {"basis": [_key(H, J) for J in self.basis(H)],
                     "product": [[list(v) for v in row] for row in self.data.mult(H)]}
            doc["subgroups"][H.label] = entry
        doc["transfers"] = {f"{K.label}->{H.label}": [list(c) for c in self.data.tr(K, H)]
                            for H, K in self.transfers() if H != K}
        return doc


def build_burnside(G: FiniteGroup | Subgroup | IndexingSystem, A: IndexingSystem | None = None) -> BurnsideMackey:
    if isinstance(G, IndexingSystem):
        return BurnsideMackey(G)
    if A is None:
        raise ValueError("an indexing system is required")
    H = G.whole if isinstance(G, FiniteGroup) else G
    if A.group != H:
        raise ValueError("the indexing system lives over a different group")
    return BurnsideMackey(A)


def verify_double_coset(M: BurnsideMackey) -> Report:
    rep = Report("double-coset")
    for H, K in M.transfers():
        for Kp in M.group.lattice.subgroups_of(H):
            cosets = double_cosets_within(Kp, K, H)
            for i in range(M.rank(K)):
                b = unit_vector(M.rank(K), i)
                lhs = M.res(H, Kp, M.tr(K, H, b))
                rhs = (0,) * M.rank(Kp)
                try:
                    for g, I in cosets:
                        Kg = K.conjugate(g)
                        rhs = add(rhs, M.tr(I, Kp, M.res(Kg, I, M.conj(g, K, b))))
                except InadmissibleError as exc:
                    rhs = str(exc)
                rep.checked += 1
                if lhs != rhs:
                    rep.witnesses.append({"H": H.label, "K": K.label, "K'": Kp.label,
                                          "basis": _key(K, M.basis(K)[i]), "lhs": list(lhs),
                                          "rhs": rhs if isinstance(rhs, str) else list(rhs)})
    return rep


def verify_multiplicative_double_coset(M: BurnsideMackey, max_size: int = 3) -> Report:
    rep = Report("multiplicative-double-coset")
    for H, K in M.transfers():
        sets = list(all_gsets(K, max_size))
        for Kp in M.group.lattice.subgroups_of(H):
            missing = [I for g, I in double_cosets_within(Kp, K, H) if not M.system.admits(Kp, I)]
            for X in sets:
                rep.checked += 1
                ok = not missing and M.data.multiplicative_formula(H, K, Kp, X)
                if not ok:
                    rep.witnesses.append({"H": H.label, "K": K.label, "K'": Kp.label,
                                          "X": [[J.label, m] for J, m in X.orbit_types()]})
    return rep


def frobenius_check(M: BurnsideMackey) -> Report:
    rep = Report("frobenius")
    for H, K in M.transfers():
        for i in range(M.rank(H)):
            a = unit_vector(M.rank(H), i)
            ra = M.res(H, K, a)
            for j in range(M.rank(K)):
                b = unit_vector(M.rank(K), j)
                lhs = M.tr(K, H, M.mul(K, ra, b))
                rhs = M.mul(H, a, M.tr(K, H, b))
                rep.checked += 1
                if lhs != rhs:
                    rep.witnesses.append({"H": H.label, "K": K.label, "a": _key(H, M.basis(H)[i]),
                                          "b": _key(K, M.basis(K)[j]), "lhs": list(lhs), "rhs": list(rhs)})
    return rep


def verify_all(M: BurnsideMackey, max_size: int = 3) -> list[Report]:
    return [verify_double_coset(M), verify_multiplicative_double_coset(M, max_size), frobenius_check(M)]
