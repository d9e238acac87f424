"""Universes, encoded by their set of irreducible constituents.

A universe contains every constituent with infinite multiplicity, so only
the (conjugation-closed, trivial-containing) constituent set is stored.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .characters import (CharacterError, CharacterTable, ClassFunction, character_sum,
                         character_table, induce_character, kernel_contains, regular_character,
                         restrict_character, trivial_character)
from .groups import FiniteGroup, Subgroup

log = logging.getLogger(__name__)


class UniverseError(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    group: Subgroup
    constituents: frozenset[int]

    def __post_init__(self):
        table = self.table
        if 0 not in self.constituents:
            raise UniverseError("a universe must contain the trivial representation")
        if any(table.conjugate_of[i] not in self.constituents for i in self.constituents):
            raise UniverseError("constituent set is not closed under complex conjugation")

    @property
    def table(self) -> CharacterTable:
        return character_table(self.group)

    @cached_property
    def character(self) -> ClassFunction:
        """One copy of each constituent."""
        irr = self.table.irreducibles
        return character_sum(self.group, (irr[i] for i in sorted(self.constituents)))

    def __le__(self, other: Universe) -> bool:
        return self.group == other.group and self.constituents <= other.constituents

    def is_complete(self) -> bool:
        return len(self.constituents) == len(self.table)

    def is_trivial(self) -> bool:
        return self.constituents == frozenset({0})

    def to_spec(self) -> str:
        if self.is_complete():
            return "complete"
        if self.is_trivial():
            return "trivial"
        blocks = [min(b) for b in self.table.real_classes() if b[0] != 0 and b[0] in self.constituents]
        return "gen:" + ",".join(["triv"] + [f"irr:{i}" for i in blocks])

    def __repr__(self) -> str:
        return f"Universe({self.group.label}, {sorted(self.constituents)})"


def _sub(G: FiniteGroup | Subgroup) -> Subgroup:
    return G.whole if isinstance(G, FiniteGroup) else G


def _close(table: CharacterTable, idx: Iterable[int]) -> frozenset[int]:
    s = set(idx)
    return frozenset(s | {table.conjugate_of[i] for i in s})


def complete_universe(G: FiniteGroup | Subgroup) -> Universe:
    H = _sub(G)
    return Universe(H, frozenset(range(len(character_table(H)))))


def trivial_universe(G: FiniteGroup | Subgroup) -> Universe:
    return Universe(_sub(G), frozenset({0}))


def fixed_universe(G: FiniteGroup | Subgroup, N: Subgroup) -> Universe:
    """Irreducibles with N in the kernel: the constituents of R[G/N]."""
    H = _sub(G)
    if not N.is_normal_in(H):
        raise UniverseError(f"{N.label} is not normal in {H.label}")
    table = character_table(H)
    return Universe(H, frozenset(i for i, chi in enumerate(table.irreducibles) if kernel_contains(chi, N)))


def generated_universe(G: FiniteGroup | Subgroup, generators: Iterable[ClassFunction]) -> Universe:
    """Least universe containing each generator as a summand (no tensor closure)."""
    H = _sub(G)
    table = character_table(H)
    idx: set[int] = set()
    for chi in generators:
        if chi.group != H:
            raise UniverseError("generator is a character of a different group")
        mult = chi.constituents()
        if any(m < 0 for m in mult.values()):
            raise UniverseError("generators must be genuine characters, not virtual ones")
        idx |= set(mult)
    if 0 not in idx:
        log.info("adding the trivial constituent to the universe over %s", H.label)
        idx.add(0)
    return Universe(H, _close(table, idx))


def make_universe(G: FiniteGroup | Subgroup, kind: str, arg=None) -> Universe:
    if kind == "complete":
        return complete_universe(G)
    if kind == "trivial":
        return trivial_universe(G)
    if kind == "fixed":
        return fixed_universe(G, arg)
    if kind == "generated_by":
        return generated_universe(G, arg)
    raise UniverseError(f"unknown universe kind {kind!r}")


def reduced_regular_induced(H: Subgroup, up_to: Subgroup) -> ClassFunction:
    """Ind_H^up_to of the regular character of H minus its trivial summand."""
    rho_bar = regular_character(H) - trivial_character(H)
    chi = induce_character(H, up_to, rho_bar)
    return ClassFunction(up_to, chi.values, "character")


def parse_rep(G: FiniteGroup | Subgroup, text: str) -> ClassFunction:
    """``triv``, ``reg``, ``perm:<H>``, ``regbar:<H>`` or ``irr:<index>``."""
    H = _sub(G)
    root = H.parent
    text = text.strip()
    if text == "triv":
        return trivial_character(H)
    if text == "reg":
        return regular_character(H)
    kind, _, arg = text.partition(":")
    if kind == "perm" and arg:
        K = root.parse_subgroup(arg)
        _contained(K, H)
        return induce_character(K, H, trivial_character(K))
    if kind == "regbar" and arg:
        K = root.parse_subgroup(arg)
        _contained(K, H)
        return reduced_regular_induced(K, H)
    if kind == "irr" and arg:
        table = character_table(H)
        try:
            return table.irreducibles[int(arg)]
        except (ValueError, IndexError):
            raise UniverseError(f"no irreducible {arg!r}; the table has {len(table)}") from None
    raise UniverseError(f"malformed representation {text!r}")


def _contained(K: Subgroup, H: Subgroup) -> None:
    if not K <= H:
        raise UniverseError(f"{K.label} is not contained in {H.label}")


def parse_universe(G: FiniteGroup | Subgroup, spec: str) -> Universe:
    """``complete | trivial | fixed:<subgroup> | gen:<rep>,<rep>,...``."""
    H = _sub(G)
    spec = spec.strip()
    if spec in ("complete", "trivial"):
        return make_universe(H, spec)
    if spec.startswith("fixed:"):
        return fixed_universe(H, H.parent.parse_subgroup(spec[6:]))
    if spec.startswith("gen:"):
        reps = [r for r in re.split(r"\s*,\s*", spec[4:]) if r]
        if not reps:
            raise UniverseError("gen: needs at least one representation")
        return generated_universe(H, [parse_rep(H, r) for r in reps])
    raise UniverseError(f"malformed universe spec {spec!r}")


def restrict_universe(U: Universe, H: Subgroup) -> Universe:
    if not H <= U.group:
        raise UniverseError(f"{H.label} is not contained in {U.group.label}")
    if H == U.group:
        return U
    chi = restrict_character(U.character, H)
    return Universe(H, frozenset(chi.constituents()))


def all_universes(G: FiniteGroup | Subgroup) -> Iterator[Universe]:
    """Every conjugation-closed, trivial-containing constituent set, by bitmask over real blocks."""
    H = _sub(G)
    table = character_table(H)
    blocks = [b for b in table.real_classes() if b[0] != 0]
    for mask in range(1 << len(blocks)):
        idx = {0}
        for i, b in enumerate(blocks):
            if mask >> i & 1:
                idx.update(b)
        yield Universe(H, frozenset(idx))
