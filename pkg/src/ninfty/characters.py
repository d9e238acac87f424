"""Complex character tables computed modulo a prime.

All arithmetic happens in F_p with p = 1 (mod exponent of the ambient group)
and p > 4|G|^2, a single prime shared by a group and all its subgroups.  The
irreducibles are found Dixon-style as common eigenvectors of the class
multiplication matrices, split by one random combination of them.
Integer-valued quantities (degrees, multiplicities, fixed dimensions) are
lifted back from their residues.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cache, cached_property
from typing import Iterable, Sequence

from .groups import FiniteGroup, GroupError, Subgroup, format_cycles
from .gsets import GSet


class CharacterError(ValueError):
    pass


MAX_PRIME = 1 << 61
# Floor for the prime, so that permutation characters of large sets (degree
# far above |G|) still lift correctly.
MIN_PRIME = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@cache
def dixon_prime(order: int, exponent: int, bound: int = MAX_PRIME) -> int:
    """Least prime p = 1 (mod exponent) with p > max(4 order^2, MIN_PRIME)."""
    lo = max(4 * order * order, MIN_PRIME)
    p = lo + 1 + (-(lo + 1 - 1)) % exponent  # first value > lo that is 1 mod exponent
    while p < bound:
        if _is_prime(p):
            return p
        p += exponent
    raise CharacterError(f"no suitable prime below {bound}")


def prime_for(G: FiniteGroup) -> int:
    return dixon_prime(G.order, G.exponent)


# polynomials over F_p, coefficient lists low -> high
# ----------------------------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pdivmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = f[:]
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        d = len(f) - len(g)
        q[d] = c
        for i, gi in enumerate(g):
            f[d + i] = (f[d + i] - c * gi) % p
        _trim(f)
    return q, f


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pdivmod(_trim(out), m, p)[1]


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def roots_mod_p(f: Sequence[int], p: int, rng: random.Random) -> list[int]:
    """Distinct roots in F_p of f (Cantor-Zassenhaus equal-degree splitting)."""
    f = _trim([c % p for c in f])
    g = _pgcd(f, _psub(_ppowmod([0, 1], p, f, p), [0, 1], p), p)
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(-h[0] * pow(h[1], -1, p) % p)
            continue
        while True:
            a = rng.randrange(p)
            w = _psub(_ppowmod([a, 1], (p - 1) // 2, h, p), [1], p)
            d = _pgcd(h, w, p) if w else h
            if 1 < len(d) < len(h):
                stack += [d, _pdivmod(h, d, p)[0]]
                break
    return sorted(roots)


def charpoly_mod_p(A: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) via Hessenberg reduction."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                for j in range(n):
                    H[i][j] = (H[i][j] - u * H[m][j]) % p
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    # recurrence on leading principal submatrices
    polys = [[1]]
    for k in range(n):
        nxt = [0] + polys[k]
        for i in range(len(polys[k])):
            nxt[i] = (nxt[i] - H[k][k] * polys[k][i]) % p
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * H[i + 1][i] % p
            c = prod * H[i][k] % p
            if c:
                for j, x in enumerate(polys[i]):
                    nxt[j] = (nxt[j] - c * x) % p
        polys.append(nxt)
    return polys[n]


def nullspace_mod_p(A: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    rows = [[x % p for x in r] for r in A]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                u = rows[i][c]
                rows[i] = [(x - u * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f] % p
        basis.append(v)
    return basis


# class data
# ----------

class ClassData:
    """Conjugacy classes of a subgroup together with the shared prime."""

    def __init__(self, H: Subgroup):
        self.group = H
        self.prime = prime_for(H.parent)
        self.classes = H.element_classes
        self.sizes = [len(c) for c in self.classes]
        self.class_of = {x: i for i, c in enumerate(self.classes) for x in c}
        inv = H.parent.inv
        self.inverse = [self.class_of[inv[c[0]]] for c in self.classes]
        self.order_inv = pow(H.order, -1, self.prime)

    def __len__(self) -> int:
        return len(self.classes)


@cache
def class_data(H: Subgroup) -> ClassData:
    return ClassData(H)


def _as_subgroup(G: FiniteGroup | Subgroup) -> Subgroup:
    return G.whole if isinstance(G, FiniteGroup) else G


def lift(x: int, p: int) -> int:
    x %= p
    return x if x <= p // 2 else x - p


@dataclass(frozen=True)
class ClassFunction:
    """Residues mod p of a class function, one per conjugacy class of ``group``."""
    group: Subgroup
    values: tuple[int, ...]
    kind: str = "virtual"

    @property
    def data(self) -> ClassData:
        return class_data(self.group)

    @property
    def prime(self) -> int:
        return self.data.prime

    @property
    def degree(self) -> int:
        return lift(self.values[0], self.prime)

    def __call__(self, g: int) -> int:
        return self.values[self.data.class_of[g]]

    def _check(self, other: ClassFunction) -> None:
        if other.group != self.group:
            raise CharacterError("class functions over different groups")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        p = self.prime
        kind = self.kind if self.kind == other.kind == "virtual" else "character"
        if "virtual" in (self.kind, other.kind):
            kind = "virtual"
        return ClassFunction(self.group, tuple((a + b) % p for a, b in zip(self.values, other.values)), kind)

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        p = self.prime
        return ClassFunction(self.group, tuple((a - b) % p for a, b in zip(self.values, other.values)))

    def __mul__(self, other: ClassFunction | int) -> ClassFunction:
        p = self.prime
        if isinstance(other, int):
            kind = self.kind if other >= 0 else "virtual"
            return ClassFunction(self.group, tuple(a * other % p for a in self.values), kind)
        self._check(other)
        kind = "virtual" if "virtual" in (self.kind, other.kind) else "character"
        return ClassFunction(self.group, tuple(a * b % p for a, b in zip(self.values, other.values)), kind)

    __rmul__ = __mul__

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, tuple(self.values[j] for j in self.data.inverse), self.kind)

    def inner(self, other: ClassFunction) -> int:
        """<self, other> = 1/|H| sum |C| self(C) conj(other(C)), lifted to an integer."""
        self._check(other)
        d = self.data
        p = d.prime
        s = sum(n * a * other.values[j] for n, a, j in zip(d.sizes, self.values, d.inverse))
        return lift(s * d.order_inv, p)

    def lifted(self) -> list[int | None]:
        """Values lifted to integers when the lift is within +-degree, else None."""
        deg = abs(self.degree)
        out: list[int | None] = []
        for v in self.values:
            x = lift(v, self.prime)
            out.append(x if abs(x) <= deg else None)
        return out

    def constituents(self) -> dict[int, int]:
        """Multiplicity of each irreducible (by table index), zeros omitted."""
        table = character_table(self.group)
        out = {}
        for i, chi in enumerate(table.irreducibles):
            m = self.inner(chi)
            if m:
                out[i] = m
        return out

    def is_character(self) -> bool:
        return all(m > 0 for m in self.constituents().values())


# the table
# ---------

@dataclass(frozen=True)
class CharacterTable:
    group: Subgroup
    prime: int
    irreducibles: tuple[ClassFunction, ...]
    degrees: tuple[int, ...]
    conjugate_of: tuple[int, ...]   # index of the complex-conjugate irreducible

    @property
    def classes(self) -> list[tuple[int, ...]]:
        return class_data(self.group).classes

    def __len__(self) -> int:
        return len(self.irreducibles)

    def is_real(self, i: int) -> bool:
        return self.conjugate_of[i] == i

    def real_classes(self) -> list[tuple[int, ...]]:
        """Irreducibles grouped into conjugation-closed blocks (trivial first)."""
        out = []
        seen = set()
        for i in range(len(self)):
            if i not in seen:
                blk = tuple(sorted({i, self.conjugate_of[i]}))
                seen.update(blk)
                out.append(blk)
        return out

    def to_json(self) -> dict:
        G = self.group.parent
        d = class_data(self.group)
        return {
            "group": G.name,
            "subgroup": self.group.label,
            "prime": self.prime,
            "classes": [{"representative": format_cycles(G.elements[c[0]]), "size": len(c)}
                        for c in d.classes],
            "degrees": list(self.degrees),
            "conjugate_of": list(self.conjugate_of),
            "characters": [[v if v is not None else {"residue": r}
                            for v, r in zip(chi.lifted(), chi.values)]
                           for chi in self.irreducibles],
        }


def _class_matrices(d: ClassData) -> list[list[list[int]]]:
    """M_j[i][k] = #{x in C_j : x^-1 z_k in C_i} for a fixed z_k in C_k."""
    G = d.group.parent
    mul, inv = G.mul, G.inv
    r = len(d)
    reps = [c[0] for c in d.classes]
    mats = []
    for cj in d.classes:
        M = [[0] * r for _ in range(r)]
        for x in cj:
            xi = inv[x]
            for k, z in enumerate(reps):
                M[d.class_of[mul[xi][z]]][k] += 1
        mats.append(M)
    return mats


@cache
def character_table(G: FiniteGroup | Subgroup, seed: int = 0) -> CharacterTable:
    H = _as_subgroup(G)
    d = class_data(H)
    p = d.prime
    r = len(d)
    rng = random.Random(seed)
    mats = _class_matrices(d)
    for _ in range(64):
        coeffs = [rng.randrange(p) for _ in range(r)]
        B = [[sum(c * M[i][k] for c, M in zip(coeffs, mats)) % p for k in range(r)] for i in range(r)]
        eigen = roots_mod_p(charpoly_mod_p(B, p), p, rng)
        if len(eigen) == r:
            break
    else:
        raise CharacterError("class matrices could not be split; prime is unsuitable")

    chars = []
    for lam in eigen:
        shifted = [[(B[i][k] - (lam if i == k else 0)) % p for k in range(r)] for i in range(r)]
        (w,) = nullspace_mod_p(shifted, p)
        scale = pow(w[0], -1, p)
        w = [x * scale % p for x in w]
        # |H| = d^2 * sum_k w_k w_{k*} / |C_k|
        s = sum(w[k] * w[d.inverse[k]] * pow(d.sizes[k], -1, p) for k in range(r)) % p
        deg2 = H.order * pow(s, -1, p) % p
        deg = _isqrt_exact(deg2)
        values = tuple(deg * w[k] * pow(d.sizes[k], -1, p) % p for k in range(r))
        chars.append(values)
    chars.sort(key=lambda v: (v[0], v))
    irr = tuple(ClassFunction(H, v, "irreducible") for v in chars)
    index = {chi.values: i for i, chi in enumerate(irr)}
    conj = tuple(index[chi.conjugate().values] for chi in irr)
    degrees = tuple(chi.degree for chi in irr)
    return CharacterTable(H, p, irr, degrees, conj)


def _isqrt_exact(n: int) -> int:
    import math
    s = math.isqrt(n)
    if s * s != n:
        raise CharacterError(f"degree^2 residue {n} is not a square integer; prime too small")
    return s


# constructions
# -------------

def trivial_character(H: FiniteGroup | Subgroup) -> ClassFunction:
    H = _as_subgroup(H)
    return ClassFunction(H, (1,) * len(class_data(H)), "character")


def regular_character(H: FiniteGroup | Subgroup) -> ClassFunction:
    H = _as_subgroup(H)
    return ClassFunction(H, (H.order,) + (0,) * (len(class_data(H)) - 1), "permutation")


def permutation_character(T: GSet) -> ClassFunction:
    d = class_data(T.group)
    return ClassFunction(T.group, tuple(T.fixed_points(c[0]) % d.prime for c in d.classes), "permutation")


def character_sum(H: Subgroup, chars: Iterable[ClassFunction]) -> ClassFunction:
    total = ClassFunction(H, (0,) * len(class_data(H)), "character")
    for chi in chars:
        total = total + chi
    return total


def restrict_character(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    if not H <= chi.group:
        raise CharacterError(f"{H.label} is not contained in {chi.group.label}")
    d = class_data(H)
    kind = chi.kind if chi.kind != "irreducible" else "character"
    return ClassFunction(H, tuple(chi(c[0]) for c in d.classes), kind)


def induce_character(K: Subgroup, up_to: Subgroup, chi: ClassFunction) -> ClassFunction:
    """Ind_K^up_to chi (g) = 1/|K| sum over x in up_to with x^-1 g x in K of chi(x^-1 g x)."""
    if chi.group != K:
        raise CharacterError("character is not defined on K")
    if not K <= up_to:
        raise CharacterError(f"{K.label} is not contained in {up_to.label}")
    G = K.parent
    d = class_data(up_to)
    p = d.prime
    kinv = pow(K.order, -1, p)
    values = []
    for c in d.classes:
        g = c[0]
        s = 0
        for x in up_to.members:
            y = G.conj(G.inv[x], g)
            if y in K:
                s += chi(y)
        values.append(s * kinv % p)
    kind = "virtual" if chi.kind == "virtual" else ("permutation" if chi.kind == "permutation" else "character")
    return ClassFunction(up_to, tuple(values), kind)


def fixed_dim(chi: ClassFunction, H: Subgroup) -> int:
    """Dimension of the H-fixed subspace: 1/|H| sum_{h in H} chi(h), lifted into [0, chi(e)]."""
    if not H <= chi.group:
        raise CharacterError(f"{H.label} is not contained in {chi.group.label}")
    p = chi.prime
    s = sum(chi(h) for h in H.members) * pow(H.order, -1, p) % p
    if s > chi.degree or chi.degree < 0:
        raise CharacterError("fixed dimension out of range; not a genuine character")
    return s


def constituents_contained(alpha: ClassFunction, beta: ClassFunction) -> bool:
    """Every irreducible constituent of alpha also occurs in beta."""
    if alpha.group != beta.group:
        raise CharacterError("characters of different groups")
    table = character_table(alpha.group)
    for chi in table.irreducibles:
        if alpha.inner(chi) > 0 and beta.inner(chi) <= 0:
            return False
    return True


def kernel_contains(chi: ClassFunction, N: Subgroup) -> bool:
    """N acts trivially in the representation affording chi."""
    return fixed_dim(restrict_character(chi, N) if N != chi.group else chi, N) == chi.degree
