"""Finite permutation groups, their subgroups and subgroup lattices.

Every group is stored with its full element list (sorted lexicographically on
permutation images, so the identity has index 0) and a multiplication table on
element indices.  Everything downstream works with element indices.

Permutations are tuples of 0-based images and compose right to left:
``compose(p, q)[x] == p[q[x]]``, which makes ``g . x = g[x]`` a left action.
"""
from __future__ import annotations

import math
import os
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]

DEFAULT_ORDER_BOUND = 10_000


class GroupError(ValueError):
    """Malformed group specification or invalid group-theoretic request."""


class OrderBoundExceeded(GroupError):
    pass


def order_bound() -> int:
    value = os.environ.get("NINFTY_ORDER_BOUND")
    if value is None:
        return DEFAULT_ORDER_BOUND
    try:
        return int(value)
    except ValueError:
        raise GroupError(f"NINFTY_ORDER_BOUND must be an integer, got {value!r}") from None


# permutations
# ------------

def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"not a permutation: {tuple(p)}")


def parse_cycles(text: str, degree: int = 0) -> Perm:
    """Parse cycle notation with 1-based points, e.g. ``(1 2)(3 4)`` or ``()``."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\))+", text):
        raise GroupError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
        if any(x < 0 for x in pts):
            raise GroupError(f"points are 1-based: {text!r}")
        if len(set(pts)) != len(pts):
            raise GroupError(f"repeated point in cycle: {text!r}")
        cycles.append(pts)
    n = max([degree] + [x + 1 for c in cycles for x in c])
    img = list(range(n))
    seen: set[int] = set()
    for c in cycles:
        if seen & set(c):
            raise GroupError(f"cycles are not disjoint: {text!r}")
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _pad(p: Perm, n: int) -> Perm:
    return tuple(p) + tuple(range(len(p), n))


# groups
# ------

class FiniteGroup:
    """A finite permutation group with enumerated elements.

    ``elements[i]`` is the i-th permutation in lexicographic order and
    ``mul[i][j]`` is the index of ``elements[i] * elements[j]``.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 name: str | None = None, bound: int | None = None):
        gens = [tuple(g) for g in generators]
        for g in gens:
            check_perm(g)
        n = max([len(g) for g in gens] + [degree or 0, 1])
        gens = [_pad(g, n) for g in gens]
        bound = order_bound() if bound is None else bound

        ident = tuple(range(n))
        found = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = compose(g, x)
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
                        if len(found) > bound:
                            raise OrderBoundExceeded(
                                f"group order exceeds the configured bound {bound}")
            frontier = nxt

        self.degree = n
        self.name = name
        self.generators = tuple(gens)
        self.elements: tuple[Perm, ...] = tuple(sorted(found))
        self._index = {p: i for i, p in enumerate(self.elements)}
        idx = self._index
        els = self.elements
        self.mul: list[list[int]] = [[idx[compose(a, b)] for b in els] for a in els]
        self.inv: list[int] = [idx[invert(a)] for a in els]
        self.generator_indices = tuple(idx[g] for g in gens)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    identity = 0

    def index(self, perm: Sequence[int]) -> int:
        try:
            return self._index[_pad(tuple(perm), self.degree)]
        except KeyError:
            raise GroupError(f"{format_cycles(tuple(perm))} is not an element of {self!r}") from None

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mul[r][x]
        return r

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            out.append(k)
        return out

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return SubgroupLattice(self.whole)

    @cached_property
    def whole(self) -> Subgroup:
        return self._subgroups[-1]

    @cached_property
    def trivial(self) -> Subgroup:
        return self._subgroups[0]

    @property
    def subgroups(self) -> list[Subgroup]:
        return self._subgroups

    # subgroup machinery shared by all lattices of this group

    def closure(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by the given element indices."""
        gens = [g for g in set(gens) if g != 0]
        mask = 1
        elems = [0]
        mul = self.mul
        for x in elems:
            row = mul[x]
            for g in gens:
                y = row[g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    elems.append(y)
        return mask

    @cached_property
    def _subgroups(self) -> list[Subgroup]:
        # seed with cyclic subgroups, then join with cyclics until nothing new
        gens_of: dict[int, tuple[int, ...]] = {}
        cyclic: dict[int, int] = {}
        for x in range(self.order):
            m = self.closure([x])
            if m not in cyclic:
                cyclic[m] = x
                gens_of[m] = (x,) if x else ()
        work = list(gens_of)
        while work:
            m = work.pop()
            for cm, c in cyclic.items():
                if cm & ~m == 0:
                    continue
                j = self.closure(gens_of[m] + (c,))
                if j not in gens_of:
                    gens_of[j] = gens_of[m] + (c,)
                    work.append(j)
        subs = []
        for m, gens in gens_of.items():
            members = tuple(i for i in range(self.order) if m >> i & 1)
            subs.append((len(members), members, m, gens))
        subs.sort()
        out = []
        for i, (_, members, m, gens) in enumerate(subs):
            out.append(Subgroup(self, m, members, i, gens))
        return out

    @cached_property
    def _by_mask(self) -> dict[int, Subgroup]:
        return {s.mask: s for s in self._subgroups}

    def subgroup(self, elements: Iterable[int]) -> Subgroup:
        """The subgroup whose member indices are exactly ``elements``."""
        m = 0
        for x in elements:
            m |= 1 << x
        try:
            return self._by_mask[m]
        except KeyError:
            raise GroupError("element set is not a subgroup") from None

    def generate(self, elements: Iterable[int]) -> Subgroup:
        return self._by_mask[self.closure(elements)]

    def from_mask(self, mask: int) -> Subgroup:
        return self._by_mask[mask]

    @cached_property
    def conj_table(self) -> list[list[int]]:
        """``conj_table[s][g]`` is the index of g S_s g^-1."""
        by_mask = {s.mask: s.index for s in self._subgroups}
        n = self.order
        cmaps = [[self.conj(g, x) for x in range(n)] for g in range(n)]
        table = []
        for s in self._subgroups:
            row = []
            for g in range(n):
                cm = cmaps[g]
                m = 0
                for x in s.members:
                    m |= 1 << cm[x]
                row.append(by_mask[m])
            table.append(row)
        return table

    @cached_property
    def labels(self) -> list[str]:
        """Unique label for every subgroup: class name, plus ``.k`` off the class representative."""
        root = self.lattice
        names = [_structure_name(root.subgroups[cls[0]]) for cls in root.classes]
        counts = Counter(names)
        seen: Counter[str] = Counter()
        class_names = []
        for nm in names:
            if counts[nm] > 1:
                seen[nm] += 1
                nm = f"{nm}_{seen[nm]}"
            class_names.append(nm)
        out = [""] * len(self._subgroups)
        for cname, cls in zip(class_names, root.classes):
            for k, s in enumerate(cls):
                out[s] = cname if k == 0 else f"{cname}.{k}"
        return out

    def parse_subgroup(self, label: str) -> Subgroup:
        """Resolve a subgroup label (``C2``, ``C2_1.2``, ``e``, ``G`` or ``#index``)."""
        label = label.strip()
        if label == "G":
            return self.whole
        if label == "e":
            return self.trivial
        if label.startswith("#"):
            try:
                return self._subgroups[int(label[1:])]
            except (ValueError, IndexError):
                raise GroupError(f"no subgroup {label!r}") from None
        try:
            return self._subgroups[self.labels.index(label)]
        except ValueError:
            raise GroupError(f"unknown subgroup label {label!r} for {self.name or self!r}; "
                             f"known: {', '.join(l for l in self.labels if '.' not in l)}") from None


class Subgroup:
    """A subgroup of a FiniteGroup, identified by its member bitmask.

    Instances are canonical: one object per subgroup, created by the parent.
    """
    __slots__ = ("parent", "mask", "members", "index", "generators", "__dict__")

    def __init__(self, parent: FiniteGroup, mask: int, members: tuple[int, ...], index: int,
                 generators: tuple[int, ...]):
        self.parent = parent
        self.mask = mask
        self.members = members
        self.index = index
        self.generators = generators

    def __repr__(self) -> str:
        return f"Subgroup({self.label}, order={self.order})"

    def __hash__(self) -> int:
        return self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __le__(self, other: Subgroup) -> bool:
        if other.parent is not self.parent:
            raise GroupError("subgroups of different groups")
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.mask != other.mask

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return len(self.members)

    def _same(self, other: Subgroup) -> None:
        if other.parent is not self.parent:
            raise GroupError("subgroups of different groups")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        return self.parent.labels[self.index]

    def index_in(self, other: Subgroup) -> int:
        return other.order // self.order

    def conjugate(self, g: int) -> Subgroup:
        """g S g^-1."""
        return self.parent._subgroups[self.parent.conj_table[self.index][g]]

    def intersection(self, other: Subgroup) -> Subgroup:
        if other.parent is not self.parent:
            raise GroupError("subgroups of different groups")
        return self.parent._by_mask[self.mask & other.mask]

    def join(self, other: Subgroup) -> Subgroup:
        self._same(other)
        return self.parent.generate(self.generators + other.generators)

    def is_normal_in(self, other: Subgroup) -> bool:
        return self <= other and all(self.conjugate(g) == self for g in other.generators)

    def is_normal(self) -> bool:
        return self.is_normal_in(self.parent.whole)

    @cached_property
    def lattice(self) -> SubgroupLattice:
        if self.index == len(self.parent._subgroups) - 1:
            return self.parent.lattice
        return SubgroupLattice(self)

    @cached_property
    def element_classes(self) -> list[tuple[int, ...]]:
        """Conjugacy classes of elements of this subgroup, identity class first."""
        seen = 0
        out = []
        G = self.parent
        for x in self.members:
            if seen >> x & 1:
                continue
            cls = sorted({G.conj(h, x) for h in self.members})
            for y in cls:
                seen |= 1 << y
            out.append(tuple(cls))
        return out

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.parent.mul
        gens = self.generators
        return all(mul[a][b] == mul[b][a] for a in gens for b in gens)


class SubgroupLattice:
    """All subgroups of an ambient subgroup, with inclusion and ambient-conjugacy data.

    Positions in ``subgroups`` follow the parent group's global subgroup order
    (by order, then lexicographically by member set); the class representative
    is the lexicographically least member set of each class.
    """

    def __init__(self, ambient: Subgroup):
        G = ambient.parent
        self.ambient = ambient
        self.group = G
        self.subgroups: list[Subgroup] = [s for s in G._subgroups if s.mask & ~ambient.mask == 0]
        self.position = {s.index: i for i, s in enumerate(self.subgroups)}
        n = len(self.subgroups)
        self.inclusion = [[a <= b for b in self.subgroups] for a in self.subgroups]

        table = G.conj_table
        rep_of: dict[int, int] = {}
        witness: dict[int, int] = {}
        classes: list[list[int]] = []
        for s in self.subgroups:
            if s.index in rep_of:
                continue
            members = []
            for g in ambient.members:
                t = table[s.index][g]
                if t not in rep_of:
                    rep_of[t] = s.index
                    witness[t] = g
                    members.append(t)
            classes.append(sorted(members))
        self._rep_of = rep_of
        self._witness = witness
        self.classes: list[list[int]] = classes  # global subgroup indices
        self.class_of = {s: ci for ci, cls in enumerate(classes) for s in cls}
        assert len(rep_of) == n

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    @property
    def conjugacy_classes(self) -> list[list[Subgroup]]:
        subs = self.group._subgroups
        return [[subs[i] for i in cls] for cls in self.classes]

    def canonical(self, s: Subgroup) -> Subgroup:
        """Class representative of ``s`` under conjugation by the ambient subgroup."""
        return self.group._subgroups[self._rep_of[s.index]]

    def witness(self, s: Subgroup) -> int:
        """An ambient element g with g . canonical(s) . g^-1 == s."""
        return self._witness[s.index]

    def representatives(self) -> list[Subgroup]:
        subs = self.group._subgroups
        return [subs[cls[0]] for cls in self.classes]

    def subgroups_of(self, h: Subgroup) -> list[Subgroup]:
        return [s for s in self.subgroups if s <= h]

    def overgroups(self, k: Subgroup, within: Subgroup | None = None) -> list[Subgroup]:
        top = within or self.ambient
        return [s for s in self.subgroups if k < s <= top]

    def minimal_overgroups(self, k: Subgroup, within: Subgroup | None = None) -> list[Subgroup]:
        over = self.overgroups(k, within)
        return [s for s in over if not any(t < s for t in over)]


def subgroup_lattice(G: FiniteGroup | Subgroup) -> SubgroupLattice:
    return G.lattice


# double cosets and quotients
# ---------------------------

def double_cosets(H: Subgroup, K: Subgroup) -> list[tuple[int, Subgroup]]:
    """Double cosets H g K of the parent group.

    Returns ``(g, H ∩ g K g^-1)`` with g the least element index in its double coset.
    """
    H._same(K)
    G = H.parent
    mul = G.mul
    seen = 0
    out = []
    for g in range(G.order):
        if seen >> g & 1:
            continue
        for h in H.members:
            hg = mul[h][g]
            for k in K.members:
                seen |= 1 << mul[hg][k]
        out.append((g, H.intersection(K.conjugate(g))))
    return out


def double_cosets_within(H: Subgroup, K: Subgroup, ambient: Subgroup) -> list[tuple[int, Subgroup]]:
    """Double cosets H g K inside ``ambient`` (H, K both contained in it)."""
    G = H.parent
    mul = G.mul
    seen = 0
    out = []
    for g in ambient.members:
        if seen >> g & 1:
            continue
        for h in H.members:
            hg = mul[h][g]
            for k in K.members:
                seen |= 1 << mul[hg][k]
        out.append((g, H.intersection(K.conjugate(g))))
    return out


def left_coset_reps(H: Subgroup, ambient: Subgroup) -> list[int]:
    """Least element of each left coset gH in ``ambient``, in increasing order."""
    mul = H.parent.mul
    seen = 0
    reps = []
    for g in ambient.members:
        if seen >> g & 1:
            continue
        reps.append(g)
        for h in H.members:
            seen |= 1 << mul[g][h]
    return reps


def right_coset_reps(H: Subgroup, ambient: Subgroup) -> list[int]:
    """Least element of each right coset Hg in ``ambient``."""
    mul = H.parent.mul
    seen = 0
    reps = []
    for g in ambient.members:
        if seen >> g & 1:
            continue
        reps.append(g)
        for h in H.members:
            seen |= 1 << mul[h][g]
    return reps


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    projection: tuple[int, ...]   # element index of G -> element index of G/N
    normal: Subgroup

    def image(self, s: Subgroup) -> Subgroup:
        return self.group.subgroup({self.projection[x] for x in s.members})

    def preimage(self, q: Subgroup) -> Subgroup:
        G = self.normal.parent
        return G.subgroup(x for x in range(G.order) if self.projection[x] in q)


def quotient_group(G: FiniteGroup, N: Subgroup) -> Quotient:
    """G/N as a permutation group on the left cosets of N (cached per N)."""
    if N.parent is not G:
        raise GroupError("N is not a subgroup of G")
    if not N.is_normal():
        raise GroupError(f"{N.label} is not normal in {G.name or G!r}")
    cache = G.__dict__.setdefault("_quotients", {})
    if N.index not in cache:
        cache[N.index] = _quotient(G, N)
    return cache[N.index]


def _quotient(G: FiniteGroup, N: Subgroup) -> Quotient:
    reps = left_coset_reps(N, G.whole)
    coset_of = [0] * G.order
    for i, r in enumerate(reps):
        for n in N.members:
            coset_of[G.mul[r][n]] = i
    perm_of = [tuple(coset_of[G.mul[g][r]] for r in reps) for g in range(G.order)]
    name = f"{G.name}/{N.label}" if G.name else None
    Q = FiniteGroup([perm_of[g] for g in G.generator_indices], degree=len(reps), name=name)
    projection = tuple(Q.index(p) for p in perm_of)
    return Quotient(Q, projection, N)


# presets
# -------

def _cyclic(n: int) -> list[Perm]:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    return [tuple(list(range(1, n)) + [0])]


def _dihedral(order: int) -> list[Perm]:
    if order < 2 or order % 2:
        raise GroupError(f"dihedral groups are written D<2n>, got D{order}")
    n = order // 2
    if n == 1:
        return [(1, 0)]
    if n == 2:
        return [(1, 0, 2, 3), (0, 1, 3, 2)]
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((-i) % n for i in range(n))
    return [rot, ref]


def _symmetric(n: int) -> list[Perm]:
    if n < 1:
        raise GroupError("symmetric degree must be positive")
    if n == 1:
        return [(0,)]
    return [(1, 0) + tuple(range(2, n)), tuple(list(range(1, n)) + [0])]


def _alternating(n: int) -> list[Perm]:
    if n < 1:
        raise GroupError("alternating degree must be positive")
    if n < 3:
        return [tuple(range(n))]
    return [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]


def _q8() -> list[Perm]:
    return [parse_cycles("(1 2 3 4)(5 6 7 8)"), parse_cycles("(1 5 3 7)(2 8 4 6)")]


def _factor(spec: str) -> list[Perm]:
    m = re.fullmatch(r"([CDSA])(\d+)", spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"C": _cyclic, "D": _dihedral, "S": _symmetric, "A": _alternating}[kind](n)
    if spec == "Q8":
        return _q8()
    raise GroupError(f"unknown group {spec!r}")


def _direct_product(factors: list[list[Perm]]) -> list[Perm]:
    degrees = [max(len(g) for g in f) for f in factors]
    total = sum(degrees)
    gens = []
    offset = 0
    for f, d in zip(factors, degrees):
        for g in f:
            g = _pad(g, d)
            img = list(range(total))
            for i in range(d):
                img[offset + i] = offset + g[i]
            gens.append(tuple(img))
        offset += d
    return gens


def construct_group(spec: str, bound: int | None = None) -> FiniteGroup:
    """Build a group from ``C<n>``, ``D<2n>``, ``S<n>``, ``A<n>``, ``Q8``, products
    like ``C2xC4``, or ``perm:(1 2)(3 4),(1 3)(2 4)`` (1-based cycle notation)."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        body = spec[5:].strip()
        if not body:
            raise GroupError("perm: needs at least one generator")
        parts = [p for p in re.split(r"\)\s*,\s*\(", body)]
        texts = []
        for i, p in enumerate(parts):
            if i > 0:
                p = "(" + p
            if i < len(parts) - 1:
                p = p + ")"
            texts.append(p)
        perms = [parse_cycles(t) for t in texts]
        n = max(len(p) for p in perms)
        return FiniteGroup([_pad(p, n) for p in perms], degree=n, name=spec, bound=bound)
    pieces = spec.split("x")
    if not all(pieces):
        raise GroupError(f"unknown group {spec!r}")
    factors = [_factor(p) for p in pieces]
    gens = factors[0] if len(factors) == 1 else _direct_product(factors)
    return FiniteGroup(gens, name=spec, bound=bound)


PRESETS = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
           "C2xC2", "C2xC4", "C2xC6", "C3xC3", "S3", "D8", "D10", "D12", "Q8", "A4",
           "S4", "A5"]


# naming
# ------

def _structure_name(s: Subgroup) -> str:
    n = s.order
    if n == 1:
        return "e"
    G = s.parent
    orders = Counter(G.element_orders[x] for x in s.members)
    if orders[n]:
        return f"C{n}"
    if s.is_abelian:
        return "x".join(f"C{f}" for f in _invariant_factors(n, orders))
    inv = orders[2]
    if n == 6:
        return "S3"
    if n == 8 and inv == 1:
        return "Q8"
    if orders[n // 2] and n >= 6:
        cyc = [x for x in s.members if G.element_orders[x] == n // 2]
        for r in cyc:
            c = G.closure([r])
            if all(G.element_orders[x] == 2 for x in s.members if not c >> x & 1):
                return f"D{n}"
    if n == 12 and inv == 3 and orders[3] == 8:
        return "A4"
    if n == 24 and inv == 9 and orders[3] == 8 and orders[4] == 6:
        return "S4"
    if n == 60 and inv == 15 and orders[3] == 20 and orders[5] == 24:
        return "A5"
    return f"G{n}"


def _invariant_factors(n: int, orders: Counter) -> list[int]:
    def count_dividing(m: int) -> int:
        return sum(c for o, c in orders.items() if m % o == 0)

    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    parts_by_prime = {}
    for p in primes:
        logs = [0]
        k = 1
        while True:
            c = count_dividing(p ** k)
            logs.append(round(math.log(c, p)))
            if logs[-1] == logs[-2]:
                break
            k += 1
        # number of cyclic factors of order >= p^k is logs[k] - logs[k-1]
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        parts = []
        for k in range(len(at_least)):
            exact = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
            parts += [p ** (k + 1)] * exact
        parts_by_prime[p] = sorted(parts, reverse=True)
    width = max(len(v) for v in parts_by_prime.values())
    factors = []
    for i in range(width):
        f = 1
        for parts in parts_by_prime.values():
            if i < len(parts):
                f *= parts[i]
        factors.append(f)
    return sorted(factors)
