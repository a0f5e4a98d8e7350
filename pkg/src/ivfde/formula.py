"""Formula syntax: AST, parser, printer, signatures and formula builders.

Concrete syntax (ASCII)::

    ~   classical negation        !   paraconsistent negation
    []  necessity                 &   conjunction
    |   disjunction               ->  implication (right associative)
    <-> biconditional sugar, expanded to (a -> b) & (b -> a)

Unary operators bind tightest, then ``&``, ``|``, ``->`` and ``<->``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, fields
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

__all__ = [
    "Formula", "Var", "Neg", "SNeg", "Box", "And", "Or", "Imp",
    "Signature", "Schema", "FormulaSyntaxError", "MissingBindingError",
    "parse", "to_text", "subformulas", "connectives", "in_signature",
    "variables", "depth", "size", "substitute", "instantiate",
    "iff", "iff_m", "derived_and_m", "derived_or_m", "conj", "theta",
    "theta_short", "classicality", "HOLE", "plug",
]


class Formula:
    """Base class of formula nodes.  Concrete nodes are frozen dataclasses."""

    __slots__ = ()
    op: str = ""
    arity: int = 0

    @property
    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str
    op = "var"
    arity = 0

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class _Unary(Formula):
    sub: Formula
    arity = 1

    @property
    def children(self) -> Tuple[Formula, ...]:
        return (self.sub,)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.sub!r})"


@dataclass(frozen=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula
    arity = 2

    @property
    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Neg(_Unary):
    """Paraconsistent negation (printed ``!``)."""
    op = "neg"


class SNeg(_Unary):
    """Classical negation (printed ``~``)."""
    op = "sneg"


class Box(_Unary):
    """Necessity (printed ``[]``)."""
    op = "box"


class And(_Binary):
    op = "and"


class Or(_Binary):
    op = "or"


class Imp(_Binary):
    op = "imp"


# dataclass() on the base classes generated __init__/__eq__/__hash__;
# the subclasses inherit them but must stay distinct under equality.
for _cls in (Neg, SNeg, Box, And, Or, Imp):
    dataclass(frozen=True, repr=False)(_cls)


def _cached_hash(self) -> int:
    # The generated hash walks the whole tree on every call; formulas are
    # hashed constantly (subformula sets, valuation maps), so keep it.
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((self.op, self.name)) if isinstance(self, Var) else hash((self.op,) + self.children)
        object.__setattr__(self, "_hash", h)
    return h


def _reduce(self):
    # pickle by fields only: a cached string hash is not valid in another process
    return (type(self), tuple(getattr(self, f.name) for f in fields(self)))


for _cls in (Var, Neg, SNeg, Box, And, Or, Imp):
    _cls.__hash__ = _cached_hash
    _cls.__reduce__ = _reduce

NODE_CLASSES: Dict[str, type] = {
    "neg": Neg, "sneg": SNeg, "box": Box, "and": And, "or": Or, "imp": Imp,
}


class Signature(enum.Enum):
    """Connective sets used by the different logics."""

    SIGMA4 = frozenset({"and", "or", "imp", "neg"})
    SIGMA_M = frozenset({"imp", "sneg", "box"})
    SIGMA_FULL = frozenset({"and", "or", "imp", "neg", "sneg", "box"})

    @property
    def connectives(self) -> frozenset:
        return self.value


# ---------------------------------------------------------------------------
# Parsing

class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset):
        self.offset = offset
        self.expected = frozenset(expected)
        shown = ", ".join(sorted(self.expected))
        super().__init__(f"{message} at offset {offset} (expected one of: {shown})")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op><->|->|\[\]|[~!&|()]))"
)
_UNARY_TOKENS = {"~": SNeg, "!": Neg, "[]": Box}
_ATOM_START = frozenset({"IDENT", "(", "~", "!", "[]"})


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                bad = pos + (len(rest) - len(rest.lstrip()))
                raise FormulaSyntaxError(
                    f"unexpected character {text[bad]!r}",
                    _byte_offset(text, bad), _ATOM_START | {"&", "|", "->", "<->", ")"})
            if m.group("ident"):
                self.tokens.append(("IDENT", m.group("ident"), m.start("ident")))
            else:
                self.tokens.append((m.group("op"), m.group("op"), m.start("op")))
            pos = m.end()
        self.tokens.append(("EOF", "", len(text)))
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected) -> None:
        kind, value, pos = self.tokens[self.i]
        what = "end of input" if kind == "EOF" else f"token {value!r}"
        raise FormulaSyntaxError(f"unexpected {what}", _byte_offset(self.text, pos), expected)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "EOF":
            self.fail({"&", "|", "->", "<->", "EOF"})
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind in _UNARY_TOKENS:
            self.take()
            return _UNARY_TOKENS[kind](self.unary())
        if kind == "IDENT":
            return Var(self.take()[1])
        if kind == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail({")", "&", "|", "->", "<->"})
            self.take()
            return f
        self.fail(_ATOM_START)
        raise AssertionError("unreachable")


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def parse(text: str) -> Formula:
    """Parse formula text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing

_PREC = {"imp": 1, "or": 2, "and": 3}
_BINARY_SYMBOL = {"imp": " -> ", "or": " | ", "and": " & "}
_UNARY_SYMBOL = {"sneg": "~", "neg": "!", "box": "[]"}


def _prec(f: Formula) -> int:
    return _PREC.get(f.op, 4)


def to_text(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if f.arity == 1:
        inner = to_text(f.sub)
        if f.sub.arity == 2:
            inner = f"({inner})"
        return _UNARY_SYMBOL[f.op] + inner
    p = _prec(f)
    left, right = to_text(f.left), to_text(f.right)
    if f.op == "imp":
        # right associative: a left operand that is itself an implication needs parens
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
    else:
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
    return left + _BINARY_SYMBOL[f.op] + right


# ---------------------------------------------------------------------------
# Structural helpers

def subformulas(f: Formula) -> List[Formula]:
    """Distinct subformulas of ``f``, children before parents.

    The traversal is left to right, so variables appear in order of first
    occurrence.
    """
    seen: Dict[Formula, None] = {}
    stack: List[Tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if node in seen:
            continue
        if expanded or not node.children:
            seen[node] = None
            continue
        stack.append((node, True))
        for child in reversed(node.children):
            if child not in seen:
                stack.append((child, False))
    return list(seen)


def connectives(f: Formula) -> frozenset:
    return frozenset(g.op for g in iter_nodes(f) if g.arity)


def in_signature(f: Formula, sig: Signature) -> bool:
    return connectives(f) <= sig.connectives


def variables(f: Formula) -> List[str]:
    """Variable names in order of first occurrence."""
    return [g.name for g in subformulas(f) if isinstance(g, Var)]


def depth(f: Formula) -> int:
    if not f.children:
        return 0
    return 1 + max(depth(c) for c in f.children)


def size(f: Formula) -> int:
    """Number of nodes in the syntax tree (occurrences, not distinct)."""
    return 1 + sum(size(c) for c in f.children)


def _rebuild(f: Formula, children: Tuple[Formula, ...]) -> Formula:
    return NODE_CLASSES[f.op](*children)


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Replace variables by formulas simultaneously."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    return _rebuild(f, tuple(substitute(c, mapping) for c in f.children))


# ---------------------------------------------------------------------------
# Derived connectives and named builders

def iff(a: Formula, b: Formula) -> Formula:
    """Biconditional with primitive conjunction: (a -> b) & (b -> a)."""
    return And(Imp(a, b), Imp(b, a))


def derived_and_m(a: Formula, b: Formula) -> Formula:
    """Conjunction definable from implication and classical negation."""
    return SNeg(Imp(a, SNeg(b)))


def derived_or_m(a: Formula, b: Formula) -> Formula:
    """Disjunction definable from implication and classical negation."""
    return Imp(SNeg(a), b)


def iff_m(a: Formula, b: Formula) -> Formula:
    """Biconditional over {->, ~}: the derived conjunction of both implications."""
    return derived_and_m(Imp(a, b), Imp(b, a))


def conj(parts: List[Formula]) -> Formula:
    """Left-associated conjunction of a non-empty list."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for part in parts[1:]:
        out = And(out, part)
    return out


# snapshot bit patterns, kept local so the syntax layer does not import semantics
_QUAD_BITS = {
    "T0": (1, 1, 0, 0), "t0": (1, 0, 0, 0), "t1": (1, 0, 0, 1),
    "f0": (0, 0, 0, 0), "f1": (0, 0, 0, 1), "F1": (0, 0, 1, 1),
}


def theta(name: str, f: Formula) -> Formula:
    """Formula designated exactly when ``f`` takes the six-valued value ``name``.

    Built as the conjunction of f, []f, []~f and !f, each kept or classically
    negated according to the bits of the value.
    """
    try:
        bits = _QUAD_BITS[name]
    except KeyError:
        raise ValueError(f"unknown snapshot name {name!r}") from None
    probes = (f, Box(f), Box(SNeg(f)), Neg(f))
    return conj([g if bit else SNeg(g) for bit, g in zip(bits, probes)])


def theta_short(name: str, f: Formula) -> Formula:
    """Shorter formulas with the same characterizing property as :func:`theta`."""
    forms = {
        "T0": lambda: Box(f),
        "t0": lambda: conj([f, SNeg(Box(f)), SNeg(Neg(f))]),
        "t1": lambda: And(f, Neg(f)),
        "f0": lambda: conj([SNeg(f), SNeg(Box(SNeg(f))), SNeg(Neg(f))]),
        "f1": lambda: conj([SNeg(f), SNeg(Box(SNeg(f))), Neg(f)]),
        "F1": lambda: Box(SNeg(f)),
    }
    if name not in forms:
        raise ValueError(f"unknown snapshot name {name!r}")
    return forms[name]()


def classicality(f: Formula) -> Formula:
    """The consistency-and-determinedness operator: (f | !f) & ~(f & !f)."""
    return And(Or(f, Neg(f)), SNeg(And(f, Neg(f))))


# One-hole contexts are formulas containing the reserved variable ``_``,
# which the parser never produces.
HOLE = Var("_")


def plug(context: Formula, f: Formula) -> Formula:
    return substitute(context, {HOLE.name: f})


# ---------------------------------------------------------------------------
# Schemas

class MissingBindingError(KeyError):
    pass


@dataclass(frozen=True)
class Schema:
    """An axiom schema: a template whose variables are metavariables."""

    name: str
    template: Formula

    @property
    def metavariables(self) -> List[str]:
        return variables(self.template)

    def __str__(self) -> str:
        return f"{self.name}: {to_text(self.template)}"


def instantiate(schema: Schema, subst: Mapping[str, Formula]) -> Formula:
    missing = [m for m in schema.metavariables if m not in subst]
    if missing:
        raise MissingBindingError(f"no binding for metavariable(s) {', '.join(missing)}")
    return substitute(schema.template, subst)


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal over occurrences."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def first_occurrence(f: Formula, predicate) -> Optional[Formula]:
    for node in iter_nodes(f):
        if predicate(node):
            return node
    return None
