"""Command line interface: ``ninfty <verb> --group <spec> [options]``.

Exit status is 0 on success, 2 when a validation fails (the failing report is
still printed), and 1 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .characters import CharacterError
from .groups import FiniteGroup, GroupError, Subgroup, construct_group
from .gsets import GSetError
from .indexing import (IndexingError, IndexingSystem, closure, complete_system, enumerate_all, hasse_dot,
                       join, meet, pair_classes, parse_pairs, restrict_system, system_from_json,
                       trivial_system, validate)
from .mackey import BurnsideMackey, verify_all
from .operads import (KINDS, MODES, OperadError, OperadModel, admissibles, find_separating_universe,
                      make_model, operad_coinduce, operad_cotensor, operad_fixed_points, realization_census)
from .universes import UniverseError

VERBS = ("enumerate", "validate", "closure", "meet", "join", "restrict", "admissibles", "separate",
         "census", "coinduce", "cotensor", "fixed-points", "mackey-verify", "hasse")

EPILOG = """\
group specs:    C<n>, D<2n>, S<n>, A<n>, Q8, products such as C2xC4, or
                perm:(1 2)(3 4),(1 3)(2 4) in 1-based cycle notation
subgroups:      labels as printed by the tool (C2_1, C2_1.2, e, G) or #<index>
pair lists:     L/K items separated by commas, e.g. "C4/C2,C2/e"
systems:        trivial | complete | a pair list (reflexive pairs implied) |
                inline JSON | @file.json (documents emitted by this tool)
universes:      complete | trivial | fixed:<subgroup> |
                gen:<rep>,<rep>,...  with rep one of triv, reg, perm:<H>,
                regbar:<H>, irr:<i>
environment:    NINFTY_ORDER_BOUND caps the group order (default 10000)
"""


class UsageError(Exception):
    pass


class ValidationFailed(Exception):
    def __init__(self, doc: dict):
        super().__init__("validation failed")
        self.doc = doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ninfty", description="Indexing systems and N-infinity operad models for finite groups.",
                epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--group", "-g", required=True, help="group spec")
    p.add_argument("--format", "-f", choices=("json", "dot", "table"),
                   help="output format (default: dot for hasse, json otherwise)")
    p.add_argument("--dot", action="store_const", dest="format", const="dot", help="same as --format dot")
    p.add_argument("--pairs", help="pair list for validate and closure")
    p.add_argument("--system", action="append", default=[],
                   help="indexing system (meet and join take two)")
    p.add_argument("--subgroup", help="subgroup for restrict and coinduce")
    p.add_argument("--operad", choices=KINDS, help="operad model kind")
    p.add_argument("--universe", help="universe spec for disks, steiner and isometries")
    p.add_argument("--mode", choices=MODES, default="pairwise")
    p.add_argument("--family", help="comma separated subgroups; closed under conjugation")
    p.add_argument("--normal", help="normal subgroup for fixed-points")
    p.add_argument("--max-size", type=int, default=3, help="largest set used by mackey-verify norms")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


# argument helpers
# ----------------

def _subgroup(G: FiniteGroup, label: str | None, flag: str) -> Subgroup:
    if label is None:
        raise UsageError(f"{flag} is required for this verb")
    return G.parse_subgroup(label)


def parse_system(G: FiniteGroup, text: str, over: Subgroup | None = None) -> IndexingSystem:
    over = over or G.whole
    text = text.strip()
    if text == "trivial":
        return trivial_system(over)
    if text == "complete":
        return complete_system(over)
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    if text.startswith("{"):
        doc = json.loads(text)
        doc.setdefault("ambient", over.label)
        A = system_from_json(G, doc)
        if A.group != over:
            raise UsageError(f"the system lives over {A.group.label}, expected {over.label}")
        return A
    pairs = set(parse_pairs(G, text)) | {(L, L) for L in over.lattice.subgroups}
    report = validate(over, pairs)
    if not report.valid:
        raise ValidationFailed(report.to_json())
    return IndexingSystem(over.lattice, pair_classes(over.lattice).mask_of(pairs))


def _model(G: FiniteGroup, args, over: Subgroup | None = None) -> OperadModel:
    over = over or G.whole
    kind = args.operad
    if kind is None:
        if args.system:
            kind = "explicit"
        else:
            raise UsageError("give --operad (and --universe) or --system")
    if kind == "explicit":
        if not args.system:
            raise UsageError("--operad explicit needs --system")
        return OperadModel.explicit(parse_system(G, args.system[0], over))
    return make_model(over, kind, args.universe)


def _system_doc(A: IndexingSystem) -> dict:
    doc = A.to_json()
    doc["transfers"] = [[L.label, K.label] for L, K in A.transfers()]
    return doc


# verbs
# -----

def _enumerate(G, args):
    L = enumerate_all(G)
    if args.format == "dot":
        return hasse_dot(L, name=_dot_name(G))
    return L.to_json()


def _validate(G, args):
    if args.pairs is None and not args.system:
        raise UsageError("validate needs --pairs or --system")
    if args.pairs is not None:
        pairs = parse_pairs(G, args.pairs)
    else:
        text = args.system[0]
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        doc = json.loads(text)
        pairs = [(G.parse_subgroup(a), G.parse_subgroup(b)) for a, b in doc["pairs"]]
    report = validate(G, pairs)
    doc = {"group": G.name, **report.to_json()}
    if not report.valid:
        raise ValidationFailed(doc)
    return doc


def _closure(G, args):
    if args.pairs is None:
        raise UsageError("closure needs --pairs")
    return _system_doc(closure(G, parse_pairs(G, args.pairs)))


def _lattice_op(op):
    def run(G, args):
        if len(args.system) != 2:
            raise UsageError("give exactly two --system options")
        a, b = (parse_system(G, s) for s in args.system)
        return _system_doc(op(a, b))
    return run


def _restrict(G, args):
    if len(args.system) != 1:
        raise UsageError("restrict needs one --system")
    H = _subgroup(G, args.subgroup, "--subgroup")
    return _system_doc(restrict_system(parse_system(G, args.system[0]), H))


def _admissibles(G, args):
    M = _model(G, args)
    doc = _system_doc(admissibles(M))
    doc["operad"] = M.describe()
    return doc


def _separate(G, args):
    s = find_separating_universe(G, args.mode)
    if s is None:
        return {"group": G.name, "mode": args.mode, "universe": None,
                "reason": "no separating universe produced for this group and mode"}
    return s.to_json()


COLOURS = {(True, True): "palegreen", (True, False): "khaki", (False, True): "lightblue"}


def _census(G, args):
    c = realization_census(G)
    if args.format == "dot":
        marks = {}
        for i, r in enumerate(c.rows):
            key = (bool(r.disks), bool(r.isometries))
            if key in COLOURS:
                marks[i] = COLOURS[key]
        return hasse_dot(c.lattice, marks, name=_dot_name(G))
    return c.to_json()


def _coinduce(G, args):
    H = _subgroup(G, args.subgroup, "--subgroup")
    M = _model(G, args, H)
    doc = _system_doc(admissibles(operad_coinduce(M, G)))
    doc["from"] = H.label
    return doc


def _cotensor(G, args):
    if not args.family:
        raise UsageError("cotensor needs --family")
    fam = set()
    for label in args.family.split(","):
        A = G.parse_subgroup(label)
        fam |= {A.conjugate(g) for g in range(G.order)}
    M = _model(G, args)
    doc = _system_doc(admissibles(operad_cotensor(M, fam)))
    doc["family"] = sorted({G.lattice.canonical(A).label for A in fam})
    return doc


def _fixed_points(G, args):
    N = _subgroup(G, args.normal, "--normal")
    M = _model(G, args)
    A = admissibles(operad_fixed_points(M, N))
    doc = _system_doc(A)
    doc["quotient"] = f"{G.name}/{N.label}"
    return doc


def _mackey(G, args):
    if len(args.system) != 1:
        raise UsageError("mackey-verify needs one --system")
    A = parse_system(G, args.system[0])
    reports = verify_all(BurnsideMackey(A), args.max_size)
    doc = {"group": G.name, "system": A.to_json()["pairs"], "reports": [r.to_json() for r in reports]}
    if not all(r.passed for r in reports):
        raise ValidationFailed(doc)
    return doc


def _hasse(G, args):
    L = enumerate_all(G)
    if args.format == "json":
        return {"group": G.name, "count": len(L), "hasse": [list(e) for e in L.hasse_edges]}
    return hasse_dot(L, name=_dot_name(G))


HANDLERS = {
    "enumerate": _enumerate, "validate": _validate, "closure": _closure, "meet": _lattice_op(meet),
    "join": _lattice_op(join), "restrict": _restrict, "admissibles": _admissibles, "separate": _separate,
    "census": _census, "coinduce": _coinduce, "cotensor": _cotensor, "fixed-points": _fixed_points,
    "mackey-verify": _mackey, "hasse": _hasse,
}


def _dot_name(G: FiniteGroup) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in G.name or "G")


# output
# ------

def render(doc, fmt: str) -> str:
    if isinstance(doc, str):
        return doc
    if fmt == "table":
        return "\n".join(_table_lines(doc)) + "\n"
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _table_lines(doc, indent: str = "") -> list[str]:
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += _table_lines(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines += _table_lines(item, indent + "  ")
                lines.append(indent + "  --")
        elif isinstance(value, list) and value and isinstance(value[0], list) and \
                all(isinstance(x, str) for x in value[0]):
            lines.append(f"{indent}{key}: " + ", ".join("/".join(x) for x in value))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"ninfty: error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.format is None:
        args.format = "dot" if args.verb == "hasse" else "json"
    try:
        G = construct_group(args.group)
        if args.format == "dot" and args.verb not in ("enumerate", "census", "hasse"):
            raise UsageError(f"{args.verb} has no dot output")
        doc = HANDLERS[args.verb](G, args)
    except ValidationFailed as exc:
        sys.stdout.write(render(exc.doc, args.format if args.format != "dot" else "json"))
        return 2
    except (UsageError, GroupError, GSetError, CharacterError, UniverseError, IndexingError,
            OperadError, ValueError, OSError) as exc:
        print(f"ninfty: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(doc, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
