"""Valuations over an Nmatrix and the decision procedures built on them.

A valuation assigns one value to every distinct subformula, so repeated
occurrences of a subformula share their value.  Compound nodes take a value
from the output set of their connective at the children's values.

The search visits variables first (in order of first occurrence) and then
compound subformulas children-first, trying values in canonical domain
order.  The first valuation found is therefore the least one in that order.

Searches remember dead ends: once every completion of a partial valuation
has failed, the same situation is not explored again.  Two partial
valuations are in the same situation when they agree on the values of
the nodes still referenced by unassigned nodes; the remaining search only
depends on those values.  This never changes which valuations exist or
which one is found first.

The search itself runs compiled over a hash-consed array form of the
formulas (see :mod:`ivfde._search`); full enumeration for truth tables
stays in Python.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ._search import OP_CODES, FormulaDag, classify, search
from .formula import Formula, Var, plug, subformulas, to_text
from .nmatrix import LogicId, Nmatrix, build

__all__ = [
    "SignatureError", "RowLimitError", "PartialValuation", "TruthTableRow",
    "Verdict", "VALID", "CONTINGENT", "UNSATISFIABLE", "INVALID",
    "resolve", "enumerate_valuations", "find_valuation", "is_satisfiable",
    "is_refutable", "is_valid", "is_unsatisfiable", "decide", "entails",
    "truth_table", "format_truth_table", "check_congruence", "is_valuation",
    "value_sets", "DEFAULT_MAX_ROWS", "FormulaDag", "classify_many",
]

DEFAULT_MAX_ROWS = 1_000_000

VALID = "valid"
CONTINGENT = "refutable-and-satisfiable"
UNSATISFIABLE = "unsatisfiable"
INVALID = "invalid"

LogicLike = Union[LogicId, str, Nmatrix]


class SignatureError(ValueError):
    """A formula uses a connective the logic does not interpret."""


class RowLimitError(RuntimeError):
    """A truth table would exceed the configured row cap."""


def resolve(logic: LogicLike) -> Nmatrix:
    if isinstance(logic, Nmatrix):
        return logic
    return build(logic)


def _logic_tag(m: Nmatrix) -> str:
    if m.logic is None:
        return "custom"
    return m.logic.cli_tag + ("+unrestricted" if m.logic.unrestricted else "")


# ---------------------------------------------------------------------------
# Results

@dataclass(frozen=True)
class PartialValuation:
    """Values of a subformula-closed set of formulas."""

    logic: Nmatrix = field(repr=False)
    assignment: Mapping[Formula, str]

    def __getitem__(self, f: Formula) -> str:
        return self.assignment[f]

    def designates(self, f: Formula) -> bool:
        return self.logic.is_designated(self.assignment[f])

    def variables(self) -> Dict[str, str]:
        return {f.name: v for f, v in self.assignment.items() if isinstance(f, Var)}

    def as_text(self) -> Dict[str, str]:
        return {to_text(f): v for f, v in self.assignment.items()}

    def to_json(self, target: Optional[Formula] = None) -> str:
        if target is None:
            target = list(self.assignment)[-1]
        payload = {
            "logic": _logic_tag(self.logic),
            "assignment": self.as_text(),
            "designated": self.designates(target),
        }
        return json.dumps(payload)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self.as_text().items())
        return f"PartialValuation({body})"


@dataclass(frozen=True)
class TruthTableRow:
    valuation: PartialValuation
    designated: bool

    @property
    def variables(self) -> Dict[str, str]:
        return self.valuation.variables()


@dataclass(frozen=True)
class Verdict:
    """``status`` is one of VALID, CONTINGENT, UNSATISFIABLE for single formulas
    and VALID or INVALID for entailments."""

    status: str
    witness: Optional[PartialValuation] = None

    @property
    def valid(self) -> bool:
        return self.status == VALID


# ---------------------------------------------------------------------------
# Search plan

_BITS = [tuple(i for i in range(8) if m >> i & 1) for m in range(256)]


class _Plan:
    """Nodes of one or more formulas in branch order, for full enumeration."""

    def __init__(self, m: Nmatrix, formulas: Sequence[Formula]):
        seen: Dict[Formula, None] = {}
        for f in formulas:
            for g in subformulas(f):
                seen.setdefault(g, None)
        allowed = m.connectives
        for g in seen:
            if g.arity and g.op not in allowed:
                who = "the matrix" if m.logic is None else str(m.logic)
                raise SignatureError(f"connective {g.op!r} is not interpreted in {who}")
        order = [g for g in seen if not g.arity] + [g for g in seen if g.arity]
        self.m = m
        self.nodes = order
        self.position = {g: i for i, g in enumerate(order)}
        self.n = len(order)
        self.full = m.domain.full_mask
        self.kids: List[Tuple[int, ...]] = [tuple(self.position[c] for c in g.children) for g in order]
        self.tables = [m.ops[g.op].table if g.arity else None for g in order]

    def choices(self, pos: int, vals: List[int]) -> int:
        ks = self.kids[pos]
        if not ks:
            return self.full
        t = self.tables[pos]
        if len(ks) == 1:
            return t[vals[ks[0]]]
        return t[vals[ks[0]]][vals[ks[1]]]

    def valuation(self, vals: Sequence[int]) -> PartialValuation:
        names = self.m.names
        return PartialValuation(self.m, {g: names[vals[i]] for i, g in enumerate(self.nodes)})

    def enumerate(self) -> Iterator[List[int]]:
        n = self.n
        vals = [0] * n

        def rec(pos: int):
            if pos == n:
                yield list(vals)
                return
            for b in _BITS[self.choices(pos, vals)]:
                vals[pos] = b
                yield from rec(pos + 1)

        return rec(0)

    def row_estimate(self) -> int:
        est = 1
        for pos in range(self.n):
            t = self.tables[pos]
            if t is None:
                est *= self.m.domain.size
            else:
                cells = t if isinstance(t[0], int) else [c for row in t for c in row]
                est *= max(len(_BITS[c]) for c in cells)
        return est


# ---------------------------------------------------------------------------
# Queries

def enumerate_valuations(f: Formula, logic: LogicLike) -> Iterator[PartialValuation]:
    """Every valuation of the subformulas of ``f``, in branch order."""
    plan = _Plan(resolve(logic), [f])
    for vals in plan.enumerate():
        yield plan.valuation(vals)


def _tables(m: Nmatrix) -> np.ndarray:
    """Output masks indexed by operator code and argument values (unary ops use column 0)."""
    key = id(m)
    hit = _TABLE_CACHE.get(key)
    if hit is not None and hit[0] is m:
        return hit[1]
    size = m.domain.size
    out = np.zeros((len(OP_CODES), size, size), dtype=np.int64)
    for conn, mop in m.ops.items():
        code = OP_CODES[conn]
        for args, mask in mop.cells():
            out[(code,) + tuple(args) + (0,) * (2 - len(args))] = mask
    _TABLE_CACHE[key] = (m, out)
    return out


_TABLE_CACHE: Dict[int, tuple] = {}


def _check_signature(m: Nmatrix, ops) -> None:
    missing = sorted(set(ops) - {"var"} - set(m.connectives))
    if missing:
        who = "the matrix" if m.logic is None else str(m.logic)
        raise SignatureError(f"connective {missing[0]!r} is not interpreted in {who}")


def find_valuation(formulas: Sequence[Formula], requirements: Sequence[bool],
                   logic: LogicLike) -> Optional[PartialValuation]:
    """First valuation designating ``formulas[i]`` exactly when ``requirements[i]``."""
    m = resolve(logic)
    dag = FormulaDag()
    roots = [dag.add(f) for f in formulas]
    _check_signature(m, dag.codes_used())
    full = m.domain.full_mask
    constraints: Dict[int, int] = {}
    for r, want in zip(roots, requirements):
        mask = m.designated if want else full & ~m.designated
        constraints[r] = constraints.get(r, full) & mask
    found = search(dag, roots, constraints, _tables(m), full)
    if found is None:
        return None
    nodes, vals = found
    names = m.names
    return PartialValuation(m, {dag.formula(int(g)): names[int(v)] for g, v in zip(nodes, vals)})


def classify_many(formulas: Union[FormulaDag, Sequence[Formula]], logic: LogicLike,
                  roots: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Satisfiability and refutability flags for many formulas at once.

    Either pass a list of formulas, or a :class:`FormulaDag` together with
    the node ids to classify.  Valid means not refutable.
    """
    m = resolve(logic)
    if isinstance(formulas, FormulaDag):
        dag = formulas
        if roots is None:
            raise ValueError("roots are required when classifying a FormulaDag")
    else:
        dag = FormulaDag()
        roots = np.array([dag.add(f) for f in formulas], dtype=np.int64)
    _check_signature(m, dag.codes_used())
    return classify(dag, roots, _tables(m), m.domain.full_mask, m.designated)


def is_satisfiable(f: Formula, logic: LogicLike) -> bool:
    return find_valuation([f], [True], logic) is not None


def is_refutable(f: Formula, logic: LogicLike) -> bool:
    return find_valuation([f], [False], logic) is not None


def is_valid(f: Formula, logic: LogicLike) -> bool:
    return not is_refutable(f, logic)


def is_unsatisfiable(f: Formula, logic: LogicLike) -> bool:
    return not is_satisfiable(f, logic)


def decide(f: Formula, logic: LogicLike) -> Verdict:
    """Classify ``f``; the witness is a countermodel unless ``f`` is valid."""
    counter = find_valuation([f], [False], logic)
    if counter is None:
        return Verdict(VALID, find_valuation([f], [True], logic))
    model = find_valuation([f], [True], logic)
    if model is None:
        return Verdict(UNSATISFIABLE, counter)
    return Verdict(CONTINGENT, counter)


def entails(premises: Sequence[Formula], conclusion: Formula, logic: LogicLike) -> Verdict:
    premises = list(premises)
    counter = find_valuation(premises + [conclusion], [True] * len(premises) + [False], logic)
    if counter is None:
        return Verdict(VALID)
    return Verdict(INVALID, counter)


def truth_table(f: Formula, logic: LogicLike, max_rows: int = DEFAULT_MAX_ROWS,
                override: bool = False) -> List[TruthTableRow]:
    m = resolve(logic)
    plan = _Plan(m, [f])
    if not override and plan.row_estimate() > max_rows:
        raise RowLimitError(
            f"truth table of {to_text(f)} may have up to {plan.row_estimate()} rows "
            f"(cap {max_rows}); pass override to force it")
    root = plan.position[f]
    rows = []
    for vals in plan.enumerate():
        rows.append(TruthTableRow(plan.valuation(vals), m.is_designated(vals[root])))
        if not override and len(rows) > max_rows:
            raise RowLimitError(f"truth table of {to_text(f)} exceeds {max_rows} rows")
    return rows


def value_sets(f: Formula, logic: LogicLike) -> Dict[Tuple[str, ...], frozenset]:
    """For each assignment to the variables of ``f``, the values ``f`` can take."""
    out: Dict[Tuple[str, ...], set] = {}
    for row in truth_table(f, logic):
        key = tuple(row.variables.values())
        out.setdefault(key, set()).add(row.valuation[f])
    return {k: frozenset(v) for k, v in out.items()}


def format_truth_table(rows: Sequence[TruthTableRow], f: Formula) -> str:
    """Fixed-width text table: one column per subformula, then designation."""
    columns = subformulas(f)
    heads = [to_text(g) for g in columns] + ["D"]
    body = [[row.valuation[g] for g in columns] + ["1" if row.designated else "0"] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(heads)]

    def line(cells):
        return "  ".join(c.ljust(wd) for c, wd in zip(cells, widths)).rstrip()

    out = [line(heads), "  ".join("-" * wd for wd in widths)]
    out.extend(line(r) for r in body)
    return "\n".join(out) + "\n"


def is_valuation(logic: LogicLike, assignment: Mapping[Formula, str]) -> bool:
    """Whether ``assignment`` is closed under subformulas and respects every output set."""
    m = resolve(logic)
    for f, value in assignment.items():
        if value not in m.domain.index:
            return False
        if not f.arity:
            continue
        if any(c not in assignment for c in f.children):
            return False
        if f.op not in m.ops:
            return False
        args = [m.domain.index[assignment[c]] for c in f.children]
        if not m.ops[f.op].outputs(*args) >> m.domain.index[value] & 1:
            return False
    return True


def check_congruence(f: Formula, g: Formula, context: Formula,
                     logic: LogicLike) -> Optional[PartialValuation]:
    """A valuation separating ``context[f]`` from ``context[g]`` when f and g are equivalent.

    ``context`` contains the hole variable :data:`ivfde.formula.HOLE`.
    Returns None when f and g are not equivalent or no separating valuation
    exists.  A valuation designating ``context[f]`` but not ``context[g]``
    is preferred over the reverse.
    """
    m = resolve(logic)
    if not (entails([f], g, m).valid and entails([g], f, m).valid):
        return None
    cf, cg = plug(context, f), plug(context, g)
    if cf == cg:
        return None
    return (find_valuation([cf, cg], [True, False], m)
            or find_valuation([cf, cg], [False, True], m))
