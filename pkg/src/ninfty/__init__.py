"""Indexing systems and N-infinity operad models for finite groups."""
from .groups import FiniteGroup, GroupError, Subgroup, construct_group
from .indexing import IndexingSystem, closure, enumerate_all, validate
from .operads import OperadModel, admissibles, find_separating_universe
from .universes import Universe, parse_universe

__all__ = ["FiniteGroup", "GroupError", "IndexingSystem", "OperadModel", "Subgroup", "Universe",
           "admissibles", "closure", "construct_group", "enumerate_all", "find_separating_universe",
           "parse_universe", "validate"]
__version__ = "0.1.0"
