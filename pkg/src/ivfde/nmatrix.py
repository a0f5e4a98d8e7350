"""Non-deterministic matrices generated from per-coordinate specifications.

Every connective of every logic is described coordinate by coordinate.  An
output coordinate is either a Boolean term over the input coordinates
(:class:`Exact`), any bit between two such terms (:class:`Range`), or any
bit at all (:data:`FREE`).  One evaluator turns these descriptions into
tables over a snapshot domain, keeping only tuples that belong to the
domain.  The direct builders and :func:`superpose` both go through it.

Terms use Python operators: ``&`` meet, ``|`` join, ``>>`` Boolean
implication and ``~`` complement.  ``z(i)`` and ``w(i)`` are the i-th
coordinates (1-based) of the first and second argument.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .formula import Signature
from .snapshot import Domain, Kind, Snapshot, domain

__all__ = [
    "Term", "Coord", "Const", "z", "w", "Exact", "Range", "FREE", "CoordSpec",
    "OpSpec", "Multioperator", "Nmatrix", "LogicId", "LOGIC_TAGS",
    "SpecError", "CoherenceError", "build", "build_from_specs", "apply",
    "superpose", "is_subnmatrix", "dump_tables", "table_csv",
    "TM_SPECS", "TM_DERIVED_SPECS", "IDM4_SPECS", "COMBINED_SPECS", "BOX_VARIANTS",
    "COMBINED_BRIDGES", "CONNECTIVE_SYMBOLS",
]


# ---------------------------------------------------------------------------
# Boolean terms

class Term:
    __slots__ = ()

    def __and__(self, other: "Term") -> "Term":
        return _BinTerm("meet", self, _lift(other))

    def __or__(self, other: "Term") -> "Term":
        return _BinTerm("join", self, _lift(other))

    def __rshift__(self, other: "Term") -> "Term":
        return _BinTerm("implies", self, _lift(other))

    def __invert__(self) -> "Term":
        return _Compl(self)

    def evaluate(self, args: Sequence[Snapshot]) -> int:
        raise NotImplementedError

    def rename(self, mapping: Mapping[int, int]) -> "Term":
        raise NotImplementedError


@dataclass(frozen=True)
class Coord(Term):
    arg: int  # 0 for the first argument, 1 for the second
    idx: int  # 1-based coordinate

    def evaluate(self, args):
        return args[self.arg][self.idx - 1]

    def rename(self, mapping):
        return Coord(self.arg, mapping[self.idx])

    def __str__(self):
        return f"{'zw'[self.arg]}{self.idx}"


@dataclass(frozen=True)
class Const(Term):
    value: int

    def evaluate(self, args):
        return self.value

    def rename(self, mapping):
        return self

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class _BinTerm(Term):
    kind: str
    left: Term
    right: Term

    def evaluate(self, args):
        a, b = self.left.evaluate(args), self.right.evaluate(args)
        if self.kind == "meet":
            return a & b
        if self.kind == "join":
            return a | b
        return (1 - a) | b

    def rename(self, mapping):
        return _BinTerm(self.kind, self.left.rename(mapping), self.right.rename(mapping))

    def __str__(self):
        sym = {"meet": "&", "join": "|", "implies": "=>"}[self.kind]
        return f"({self.left} {sym} {self.right})"


@dataclass(frozen=True)
class _Compl(Term):
    sub: Term

    def evaluate(self, args):
        return 1 - self.sub.evaluate(args)

    def rename(self, mapping):
        return _Compl(self.sub.rename(mapping))

    def __str__(self):
        return f"~{self.sub}"


def _lift(x: Union[Term, int]) -> Term:
    return x if isinstance(x, Term) else Const(int(x))


def z(i: int) -> Coord:
    return Coord(0, i)


def w(i: int) -> Coord:
    return Coord(1, i)


# ---------------------------------------------------------------------------
# Coordinate specifications

@dataclass(frozen=True)
class Exact:
    term: Term

    def __post_init__(self):
        object.__setattr__(self, "term", _lift(self.term))

    def bits(self, args) -> Tuple[int, ...]:
        return (self.term.evaluate(args),)

    def rename(self, mapping):
        return Exact(self.term.rename(mapping))


@dataclass(frozen=True)
class Range:
    lower: Term
    upper: Term

    def __init__(self, lower, upper):
        object.__setattr__(self, "lower", _lift(lower))
        object.__setattr__(self, "upper", _lift(upper))

    def bits(self, args) -> Tuple[int, ...]:
        lo, hi = self.lower.evaluate(args), self.upper.evaluate(args)
        return tuple(range(lo, hi + 1))

    def rename(self, mapping):
        return Range(self.lower.rename(mapping), self.upper.rename(mapping))


@dataclass(frozen=True)
class _Free:
    def bits(self, args) -> Tuple[int, ...]:
        return (0, 1)

    def rename(self, mapping):
        return self

    def __repr__(self):
        return "FREE"


FREE = _Free()
CoordSpec = Union[Exact, Range, _Free]


def _spec(x) -> CoordSpec:
    """Allow plain terms and integer constants in spec tuples."""
    if isinstance(x, (Exact, Range, _Free)):
        return x
    return Exact(_lift(x))


@dataclass(frozen=True)
class OpSpec:
    arity: int
    coords: Tuple[CoordSpec, ...]

    @classmethod
    def of(cls, arity: int, *coords) -> "OpSpec":
        return cls(arity, tuple(_spec(c) for c in coords))

    def rename(self, mapping: Mapping[int, int]) -> "OpSpec":
        return OpSpec(self.arity, tuple(c.rename(mapping) for c in self.coords))


class SpecError(ValueError):
    """A specification is ill-formed for its domain (empty output, inverted range)."""


class CoherenceError(SpecError):
    """Shared connectives disagree on the first coordinate."""


# ---------------------------------------------------------------------------
# Logic identifiers

LOGIC_TAGS: Dict[str, str] = {
    "IDM4": "idm4", "Tm": "tm", "T4m": "t4m", "T45m": "t45m", "TBm": "tbm",
    "T4Bm": "t4bm", "T5m": "t5m", "IvFDE_T": "ivfde-t", "IvFDE_T4": "ivfde-t4",
    "IvFDE_T45": "ivfde-t45", "IvFDE_TB": "ivfde-tb", "IvFDE_T4B": "ivfde-t4b",
    "IvFDE_T5": "ivfde-t5",
}
_FROM_CLI = {v: k for k, v in LOGIC_TAGS.items()}
_VARIANT = {
    "Tm": "T", "T4m": "4", "T45m": "45", "TBm": "B", "T4Bm": "4B", "T5m": "5",
    "IvFDE_T": "T", "IvFDE_T4": "4", "IvFDE_T45": "45", "IvFDE_TB": "B",
    "IvFDE_T4B": "4B", "IvFDE_T5": "5",
}


@dataclass(frozen=True)
class LogicId:
    """A logic of the catalogue; ``unrestricted`` selects the eight-valued domain."""

    tag: str
    unrestricted: bool = False

    def __post_init__(self):
        if self.tag not in LOGIC_TAGS:
            raise ValueError(
                f"unknown logic {self.tag!r}; valid tags: {', '.join(LOGIC_TAGS)}")
        if self.unrestricted and not self.is_combined:
            raise ValueError(f"{self.tag} has no unrestricted variant")

    @classmethod
    def parse(cls, text: str, unrestricted: bool = False) -> "LogicId":
        """Accept either the catalogue tag (``IvFDE_T4``) or the CLI tag (``ivfde-t4``)."""
        if text in LOGIC_TAGS:
            return cls(text, unrestricted)
        if text.lower() in _FROM_CLI:
            return cls(_FROM_CLI[text.lower()], unrestricted)
        raise ValueError(
            f"unknown logic {text!r}; valid tags: {', '.join(LOGIC_TAGS.values())}")

    @property
    def is_combined(self) -> bool:
        return self.tag.startswith("IvFDE")

    @property
    def is_modal_component(self) -> bool:
        return self.tag in _VARIANT and not self.is_combined

    @property
    def box_variant(self) -> Optional[str]:
        return _VARIANT.get(self.tag)

    @property
    def signature(self) -> Signature:
        if self.tag == "IDM4":
            return Signature.SIGMA4
        if self.is_combined:
            return Signature.SIGMA_FULL
        return Signature.SIGMA_M

    @property
    def kind(self) -> Kind:
        if self.tag == "IDM4":
            return Kind.PAIRS
        if not self.is_combined:
            return Kind.TRIPLES
        return Kind.QUADS_UNRESTRICTED if self.unrestricted else Kind.QUADS_RESTRICTED

    @property
    def cli_tag(self) -> str:
        return LOGIC_TAGS[self.tag]

    def __str__(self):
        return self.tag + (" (unrestricted)" if self.unrestricted else "")


# ---------------------------------------------------------------------------
# Specifications of the catalogue's logics

# Pairs: coordinate 1 tracks the formula, coordinate 2 its paraconsistent negation.
IDM4_SPECS: Dict[str, OpSpec] = {
    "and": OpSpec.of(2, z(1) & w(1), z(2) | w(2)),
    "or": OpSpec.of(2, z(1) | w(1), z(2) & w(2)),
    "imp": OpSpec.of(2, z(1) >> w(1), z(1) & w(2)),
    "neg": OpSpec.of(1, z(2), z(1)),
}

# Triples: coordinates track the formula, its necessity, and the necessity of
# its classical negation.
_TM_IMP = OpSpec.of(2, z(1) >> w(1), Range(z(3) | w(2), (z(2) >> w(2)) & (w(3) >> z(3))), z(2) & w(3))
_TM_SNEG = OpSpec.of(1, ~z(1), z(3), z(2))

BOX_VARIANTS: Dict[str, Tuple[CoordSpec, CoordSpec, CoordSpec]] = {
    "T": (Exact(z(2)), FREE, FREE),
    "4": (Exact(z(2)), Exact(z(2)), FREE),
    "45": (Exact(z(2)), Exact(z(2)), Exact(~z(2))),
    "B": (Exact(z(2)), FREE, Range(~z(1), 1)),
    "4B": (Exact(z(2)), Exact(z(2)), Range(~z(1), 1)),
    "5": (Exact(z(2)), FREE, Exact(~z(2))),
}

# Conjunction and disjunction as they come out of the definitions
# ~(a -> ~b) and ~a -> b over triples.
TM_DERIVED_SPECS: Dict[str, OpSpec] = {
    "and": OpSpec.of(2, z(1) & w(1), z(2) & w(2), Range(z(3) | w(3), (z(2) >> w(3)) & (w(2) >> z(3)))),
    "or": OpSpec.of(2, z(1) | w(1), Range(z(2) | w(2), (z(3) >> w(2)) & (w(3) >> z(2))), z(3) & w(3)),
}


def TM_SPECS(variant: str = "T", with_derived: bool = False) -> Dict[str, OpSpec]:
    """Specs of a Tm-family logic.  ``with_derived`` adds the definable conjunction
    and disjunction, which is what superposition shares with the pair side."""
    specs = {"imp": _TM_IMP, "sneg": _TM_SNEG, "box": OpSpec(1, BOX_VARIANTS[variant])}
    if with_derived:
        specs.update(TM_DERIVED_SPECS)
    return specs


# Quadruples: (formula, necessity, necessity of classical negation,
# paraconsistent negation).
_COMBINED_BASE: Dict[str, OpSpec] = {
    "and": OpSpec.of(2, z(1) & w(1), z(2) & w(2),
                     Range(z(3) | w(3), (z(2) >> w(3)) & (w(2) >> z(3))), z(4) | w(4)),
    "or": OpSpec.of(2, z(1) | w(1), Range(z(2) | w(2), (z(3) >> w(2)) & (w(3) >> z(2))),
                    z(3) & w(3), z(4) & w(4)),
    "imp": OpSpec.of(2, z(1) >> w(1), Range(z(3) | w(2), (z(2) >> w(2)) & (w(3) >> z(3))),
                     z(2) & w(3), z(1) & w(4)),
    "sneg": OpSpec.of(1, ~z(1), z(3), z(2), Range(z(2), ~z(3))),
    "neg": OpSpec.of(1, z(4), z(3), z(2), z(1)),
}


def COMBINED_SPECS(variant: str = "T") -> Dict[str, OpSpec]:
    specs = dict(_COMBINED_BASE)
    specs["box"] = OpSpec(1, BOX_VARIANTS[variant] + (FREE,))
    return specs


# Coordinates that neither component governs when the pair and triple
# presentations are superposed, filled in as in the direct six-valued
# specification: the paraconsistent negation swaps the two modal
# coordinates and the classical negation bounds the fourth one.
COMBINED_BRIDGES: Dict[str, Dict[int, CoordSpec]] = {
    "neg": {2: Exact(z(3)), 3: Exact(z(2))},
    "sneg": {4: Range(z(2), ~z(3))},
}

CONNECTIVE_SYMBOLS = {"and": "&", "or": "|", "imp": "->", "neg": "!", "sneg": "~", "box": "[]"}


# ---------------------------------------------------------------------------
# Tables

@dataclass(frozen=True)
class Multioperator:
    """Table of a connective: unary ``table[i]`` or binary ``table[i][j]`` as bitmasks."""

    arity: int
    table: tuple

    def outputs(self, *args: int) -> int:
        out = self.table
        for a in args:
            out = out[a]
        return out

    def cells(self) -> Iterable[Tuple[Tuple[int, ...], int]]:
        if self.arity == 1:
            for i, m in enumerate(self.table):
                yield (i,), m
        else:
            for i, row in enumerate(self.table):
                for j, m in enumerate(row):
                    yield (i, j), m

    @property
    def deterministic(self) -> bool:
        return all(m & (m - 1) == 0 for _, m in self.cells())


@dataclass(frozen=True)
class Nmatrix:
    logic: Optional[LogicId]
    domain: Domain
    designated: int
    ops: Dict[str, Multioperator]

    def __hash__(self):
        return hash((self.logic, self.domain.kind, self.designated))

    @property
    def names(self) -> Tuple[str, ...]:
        return self.domain.names

    @property
    def connectives(self) -> frozenset:
        return frozenset(self.ops)

    def is_designated(self, value: Union[int, str]) -> bool:
        if isinstance(value, str):
            value = self.domain.index[value]
        return bool(self.designated >> value & 1)

    def same_tables(self, other: "Nmatrix") -> bool:
        return (self.domain.values == other.domain.values
                and self.designated == other.designated
                and {k: v.table for k, v in self.ops.items()}
                == {k: v.table for k, v in other.ops.items()})


def _evaluate(spec: OpSpec, dom: Domain, conn: str) -> Multioperator:
    members = {v: i for i, v in enumerate(dom.values)}

    def cell(args: Tuple[Snapshot, ...]) -> int:
        choices = []
        for k, c in enumerate(spec.coords):
            if isinstance(c, Range) and c.lower.evaluate(args) > c.upper.evaluate(args):
                raise SpecError(f"{conn}: coordinate {k + 1} has an empty range at {args}")
            choices.append(c.bits(args))
        mask = 0
        for u in product(*choices):
            if u in members:
                mask |= 1 << members[u]
        if not mask:
            raise SpecError(f"{conn}: empty output set at {args} over {dom.kind.value}")
        return mask

    if spec.arity == 1:
        table = tuple(cell((a,)) for a in dom.values)
    else:
        table = tuple(tuple(cell((a, b)) for b in dom.values) for a in dom.values)
    return Multioperator(spec.arity, table)


def build_from_specs(specs: Mapping[str, OpSpec], kind: Kind,
                     logic: Optional[LogicId] = None) -> Nmatrix:
    dom = domain(kind)
    width = len(dom.values[0])
    for conn, spec in specs.items():
        if len(spec.coords) != width:
            raise SpecError(f"{conn}: {len(spec.coords)} coordinates for a width-{width} domain")
    ops = {conn: _evaluate(spec, dom, conn) for conn, spec in specs.items()}
    return Nmatrix(logic, dom, dom.designated_mask, ops)


def _specs_for(logic: LogicId) -> Dict[str, OpSpec]:
    if logic.tag == "IDM4":
        return dict(IDM4_SPECS)
    if not logic.is_combined:
        return TM_SPECS(logic.box_variant)
    return COMBINED_SPECS(logic.box_variant)


@lru_cache(maxsize=None)
def _build_cached(logic: LogicId) -> Nmatrix:
    if logic.is_combined and logic.unrestricted:
        # the eight-valued variant is the plain superposition, with no
        # coordinates borrowed from the six-valued presentation
        m = superpose(TM_SPECS(logic.box_variant, with_derived=True), IDM4_SPECS, {"and", "or", "imp"},
                      Kind.QUADS_UNRESTRICTED)
        return Nmatrix(logic, m.domain, m.designated, m.ops)
    return build_from_specs(_specs_for(logic), logic.kind, logic)


def build(logic: Union[LogicId, str]) -> Nmatrix:
    """The (N)matrix of a logic of the catalogue."""
    if isinstance(logic, str):
        logic = LogicId.parse(logic)
    return _build_cached(logic)


@lru_cache(maxsize=None)
def tm_derived() -> Dict[str, Multioperator]:
    """Tables of the conjunction and disjunction definable in a Tm-family logic."""
    m = build_from_specs(TM_DERIVED_SPECS, Kind.TRIPLES)
    return m.ops


def apply(m: Nmatrix, connective: str, *args: str) -> frozenset:
    """Output set of ``connective`` on the named arguments, as a set of names."""
    if connective not in m.ops:
        raise KeyError(f"connective {connective!r} is not in the signature of {m.logic}")
    op = m.ops[connective]
    if len(args) != op.arity:
        raise TypeError(f"{connective} takes {op.arity} argument(s)")
    idx = [m.domain.index[a] for a in args]
    return frozenset(m.domain.names_of(op.outputs(*idx)))


# ---------------------------------------------------------------------------
# Superposition

_LEFT_COORDS = {1: 1, 2: 2, 3: 3}
_RIGHT_COORDS = {1: 1, 2: 4}


def superpose(left_specs: Mapping[str, OpSpec], right_specs: Mapping[str, OpSpec],
              shared: Iterable[str], kind: Kind = Kind.QUADS_RESTRICTED,
              bridges: Optional[Mapping[str, Mapping[int, CoordSpec]]] = None) -> Nmatrix:
    """Combine triple-based and pair-based specifications into quadruples.

    Left (triple) specs keep coordinates 1-3, right (pair) specs move their
    second coordinate to position 4.  Shared connectives must agree on the
    first coordinate.  Coordinates governed by neither side are free unless
    ``bridges`` supplies a spec for them.
    """
    shared = set(shared)
    bridges = bridges or {}
    both = set(left_specs) & set(right_specs)
    if both != shared:
        raise CoherenceError(
            f"connectives specified on both sides {sorted(both)} differ from the shared set {sorted(shared)}")
    specs: Dict[str, OpSpec] = {}
    for conn in sorted(set(left_specs) | set(right_specs)):
        left = left_specs[conn].rename(_LEFT_COORDS) if conn in left_specs else None
        right = right_specs[conn].rename(_RIGHT_COORDS) if conn in right_specs else None
        if left and right:
            if left.coords[0] != right.coords[0]:
                raise CoherenceError(f"{conn}: first coordinates differ")
            if left.arity != right.arity:
                raise CoherenceError(f"{conn}: arities differ")
        arity = (left or right).arity
        coords: List[CoordSpec] = [(left or right).coords[0]]
        for k in (2, 3):
            coords.append(left.coords[k - 1] if left else None)
        coords.append(right.coords[1] if right else None)
        for k, extra in bridges.get(conn, {}).items():
            if coords[k - 1] is not None:
                raise SpecError(f"{conn}: bridge for coordinate {k} overrides a component spec")
            coords[k - 1] = extra
        specs[conn] = OpSpec(arity, tuple(FREE if c is None else c for c in coords))
    return build_from_specs(specs, kind)


# ---------------------------------------------------------------------------
# SubNmatrices

def is_subnmatrix(m1: Nmatrix, m2: Nmatrix, signature: Union[Signature, Iterable[str]],
                  mapping: Optional[Mapping[str, str]] = None) -> bool:
    """Whether the image of ``m1`` under ``mapping`` is a subNmatrix of ``m2``.

    ``mapping`` sends value names of ``m1`` to value names of ``m2`` (identity
    on names by default).  Checks that the mapping is injective, that
    designated values of ``m1`` are exactly its values whose images are
    designated in ``m2``, and that each output set maps into the
    corresponding output set of ``m2`` for every connective of ``signature``.
    """
    conns = signature.connectives if isinstance(signature, Signature) else frozenset(signature)
    mapping = dict(mapping) if mapping is not None else {n: n for n in m1.names}
    try:
        image = [m2.domain.index[mapping[n]] for n in m1.names]
    except KeyError:
        return False
    if len(set(image)) != len(image):
        return False
    for i, j in enumerate(image):
        if m1.is_designated(i) != m2.is_designated(j):
            return False

    def push(mask: int) -> int:
        return sum(1 << image[i] for i in range(len(image)) if mask >> i & 1)

    for conn in conns:
        if conn not in m1.ops or conn not in m2.ops:
            return False
        op1, op2 = m1.ops[conn], m2.ops[conn]
        for args, mask in op1.cells():
            target = op2.outputs(*(image[a] for a in args))
            if push(mask) & ~target:
                return False
    return True


# ---------------------------------------------------------------------------
# Table dumps

def table_csv(m: Nmatrix, connective: str, op: Optional[Multioperator] = None) -> str:
    """CSV rendering of one connective's table; cells are comma-joined names."""
    op = op or m.ops[connective]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    names = m.names
    if op.arity == 1:
        writer.writerow(["", CONNECTIVE_SYMBOLS.get(connective, connective)])
        for i, n in enumerate(names):
            writer.writerow([n, ",".join(m.domain.names_of(op.table[i]))])
    else:
        writer.writerow([CONNECTIVE_SYMBOLS.get(connective, connective)] + list(names))
        for i, n in enumerate(names):
            writer.writerow([n] + [",".join(m.domain.names_of(c)) for c in op.table[i]])
    return out.getvalue()


_DUMP_ORDER = ["and", "or", "imp", "neg", "sneg", "box"]


def dump_tables(m: Nmatrix, include_derived: bool = True) -> Dict[str, str]:
    """CSV text per connective.  Tm-family dumps include the definable conjunction/disjunction."""
    tables = {c: table_csv(m, c) for c in _DUMP_ORDER if c in m.ops}
    if include_derived and m.logic is not None and m.logic.is_modal_component:
        for conn, op in tm_derived().items():
            tables[conn] = table_csv(m, conn, op)
    return {c: tables[c] for c in _DUMP_ORDER if c in tables}
