"""Hilbert calculi: axiom-schema catalogs, proof checking and soundness sweeps.

Schemas are written with the metavariables ``phi``, ``psi`` and ``gamma``.
In the four-valued modal calculi conjunction, disjunction and the
biconditional are abbreviations over ``->`` and ``~``; the catalog expands
them before matching.  In the combined calculi they are primitive and the
biconditional is ``(a -> b) & (b -> a)``.

The only rule is modus ponens.  There is no deduction-theorem rule; proofs
from hypotheses cite them on ``hyp`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Union

from .decide import PartialValuation, find_valuation, resolve
from .formula import (And, Formula, Or, Schema, Signature, Var, derived_and_m, derived_or_m,
                      in_signature, instantiate, parse, to_text, NODE_CLASSES)
from .nmatrix import LogicId

__all__ = [
    "Calculus", "Hypothesis", "Axiom", "ModusPonens", "ProofLine", "ProofCheck",
    "SweepFailure", "SweepReport", "ProofFormatError", "calculus", "match_schema",
    "verify_proof", "soundness_sweep", "parse_proof", "format_proof",
    "SCHEMA_TEXT", "default_pool",
]


# ---------------------------------------------------------------------------
# Catalogs

SCHEMA_TEXT: Dict[str, str] = {
    "Ax1": "phi -> (psi -> phi)",
    "Ax2": "(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))",
    "Ax3": "phi -> (psi -> phi & psi)",
    "Ax4": "phi & psi -> phi",
    "Ax5": "phi & psi -> psi",
    "Ax6": "phi -> phi | psi",
    "Ax7": "psi -> phi | psi",
    "Ax8": "(phi -> gamma) -> ((psi -> gamma) -> (phi | psi -> gamma))",
    "DN": "!!phi <-> phi",
    "DM1": "!(phi | psi) <-> !phi & !psi",
    "DM2": "!(phi & psi) <-> !phi | !psi",
    "DM3": "!(phi -> psi) <-> phi & !psi",
    "AxP": "phi | (phi -> psi)",
    "Ax9": "(~psi -> ~phi) -> ((~psi -> phi) -> psi)",
    "K": "[](phi -> psi) -> ([]phi -> []psi)",
    "K1": "[](phi -> psi) -> ([]~psi -> []~phi)",
    "K2": "[]~(phi -> psi) <-> []phi & []~psi",
    "M1": "[]~phi | []psi -> [](phi -> psi)",
    "T": "[]phi -> phi",
    "DN1": "[]phi <-> []~~phi",
    "N1": "[](phi & psi) <-> []phi & []psi",
    "N2": "[]~(phi | psi) <-> [](~phi & ~psi)",
    "N3": "[]~phi | []~psi -> []~(phi & psi)",
    "N4": "[]phi | []psi -> [](phi | psi)",
    "N5": "[]phi <-> []~!phi",
    "N6": "[]~phi <-> []~!!phi",
    "N7": "[]~(phi & psi) -> ([]phi -> []~psi)",
    "N8": "[]~(phi & psi) -> ([]psi -> []~phi)",
    "N9": "[](phi | psi) -> ([]~phi -> []psi)",
    "N10": "[](phi | psi) -> ([]~psi -> []phi)",
    "4": "[]phi -> [][]phi",
    "5": "~[]~[]phi -> []phi",
    "B": "~[]~[]phi -> phi",
}

_IDM4 = ["Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "DN", "DM1", "DM2", "DM3", "AxP"]
_TM = ["Ax1", "Ax2", "Ax9", "K", "K1", "K2", "M1", "T", "DN1"]
_BRIDGE = ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10"]
_EXTRA = {"T": [], "4": ["4"], "45": ["4", "5"], "B": ["B"], "4B": ["B", "4"], "5": ["5"]}


def _abbreviate(f: Formula) -> Formula:
    """Rewrite primitive conjunction/disjunction into their {->, ~} definitions."""
    if isinstance(f, Var):
        return f
    kids = tuple(_abbreviate(c) for c in f.children)
    if isinstance(f, And):
        return derived_and_m(*kids)
    if isinstance(f, Or):
        return derived_or_m(*kids)
    return NODE_CLASSES[f.op](*kids)


@dataclass(frozen=True)
class Calculus:
    logic: LogicId
    schemas: Dict[str, Schema] = field(compare=False)

    @property
    def names(self) -> List[str]:
        return list(self.schemas)

    def __len__(self) -> int:
        return len(self.schemas)


@lru_cache(maxsize=None)
def _calculus(logic: LogicId) -> Calculus:
    if logic.tag == "IDM4":
        names = list(_IDM4)
    elif logic.is_combined:
        names = _IDM4 + [n for n in _TM if n not in _IDM4] + _BRIDGE + _EXTRA[logic.box_variant]
    else:
        names = _TM + _EXTRA[logic.box_variant]
    expand = logic.is_modal_component
    schemas = {}
    for n in names:
        template = parse(SCHEMA_TEXT[n])
        if expand:
            template = _abbreviate(template)
        schemas[n] = Schema(n, template)
    return Calculus(logic, schemas)


def calculus(logic: Union[LogicId, str]) -> Calculus:
    if isinstance(logic, str):
        logic = LogicId.parse(logic)
    return _calculus(LogicId(logic.tag))


# ---------------------------------------------------------------------------
# Schema matching

def match_schema(schema: Schema, f: Formula) -> Optional[Dict[str, Formula]]:
    """The substitution making ``schema`` equal to ``f``, or None."""
    subst: Dict[str, Formula] = {}
    stack = [(schema.template, f)]
    while stack:
        t, g = stack.pop()
        if isinstance(t, Var):
            bound = subst.get(t.name)
            if bound is None:
                subst[t.name] = g
            elif bound != g:
                return None
            continue
        if type(t) is not type(g):
            return None
        stack.extend(zip(t.children, g.children))
    return subst


# ---------------------------------------------------------------------------
# Proofs

@dataclass(frozen=True)
class Hypothesis:
    pass


@dataclass(frozen=True)
class Axiom:
    name: str
    substitution: Optional[Mapping[str, Formula]] = field(default=None, compare=False)


@dataclass(frozen=True)
class ModusPonens:
    """Lines are 1-based: ``minor`` holds A, ``major`` holds A -> B."""
    minor: int
    major: int


Justification = Union[Hypothesis, Axiom, ModusPonens]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    line: Optional[int] = None  # 1-based number of the first bad line
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_proof(c: Calculus, hypotheses: Sequence[Formula], lines: Sequence[ProofLine],
                 goal: Optional[Formula] = None) -> ProofCheck:
    """Check every line; if ``goal`` is given it must be the last line.

    An empty proof is accepted when there is no goal or the goal is a
    hypothesis.
    """
    sig = c.logic.signature
    hyps = set(hypotheses)
    for n, line in enumerate(lines, start=1):
        f, why = line.formula, line.justification
        if not in_signature(f, sig):
            return ProofCheck(False, n, f"formula outside the signature of {c.logic.tag}")
        if isinstance(why, Hypothesis):
            if f not in hyps:
                return ProofCheck(False, n, "not among the hypotheses")
        elif isinstance(why, Axiom):
            schema = c.schemas.get(why.name)
            if schema is None:
                return ProofCheck(False, n, f"{why.name} is not an axiom of {c.logic.tag}")
            if why.substitution is not None:
                try:
                    expected = instantiate(schema, why.substitution)
                except KeyError as exc:
                    return ProofCheck(False, n, str(exc))
                if expected != f:
                    return ProofCheck(False, n, f"substitution does not produce this instance of {why.name}")
            elif match_schema(schema, f) is None:
                return ProofCheck(False, n, f"not an instance of {why.name}")
        elif isinstance(why, ModusPonens):
            i, j = why.minor, why.major
            if not (1 <= i < n and 1 <= j < n):
                return ProofCheck(False, n, "modus ponens cites a line that is not earlier")
            if lines[j - 1].formula != _imp(lines[i - 1].formula, f):
                return ProofCheck(False, n, f"line {j} is not line {i} -> this line")
        else:
            return ProofCheck(False, n, "unknown justification")
    if goal is not None:
        if lines and lines[-1].formula != goal:
            return ProofCheck(False, len(lines), "last line is not the goal")
        if not lines and goal not in hyps:
            return ProofCheck(False, None, "empty proof of a non-hypothesis")
    return ProofCheck(True)


def _imp(a: Formula, b: Formula) -> Formula:
    return NODE_CLASSES["imp"](a, b)


# ---------------------------------------------------------------------------
# Proof files

class ProofFormatError(ValueError):
    pass


_META_ALIASES = {"φ": "phi", "ψ": "psi", "γ": "gamma"}
_LINE_RE = re.compile(r"^\s*(\d+)\.\s*(.*?)\s*;\s*(.*?)\s*$")
_AX_RE = re.compile(r"^ax\(\s*([A-Za-z0-9_]+)\s*\)\s*(?:\{(.*)\})?$")
_MP_RE = re.compile(r"^mp\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_proof(text: str) -> List[ProofLine]:
    """Read the line-oriented proof format.  Blank lines and ``#`` comments are skipped."""
    lines: List[ProofLine] = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            raise ProofFormatError(f"malformed proof line: {raw!r}")
        number, body, just = int(m.group(1)), m.group(2), m.group(3)
        if number != len(lines) + 1:
            raise ProofFormatError(f"expected line number {len(lines) + 1}, found {number}")
        formula = parse(body)
        if just == "hyp":
            why: Justification = Hypothesis()
        elif _MP_RE.match(just):
            mm = _MP_RE.match(just)
            why = ModusPonens(int(mm.group(1)), int(mm.group(2)))
        elif _AX_RE.match(just):
            am = _AX_RE.match(just)
            subst = None
            if am.group(2) is not None and am.group(2).strip():
                subst = {}
                for part in am.group(2).split(","):
                    if ":=" not in part:
                        raise ProofFormatError(f"bad substitution {part!r} on line {number}")
                    key, value = part.split(":=", 1)
                    key = key.strip()
                    subst[_META_ALIASES.get(key, key)] = parse(value)
            why = Axiom(am.group(1), subst)
        else:
            raise ProofFormatError(f"unknown justification {just!r} on line {number}")
        lines.append(ProofLine(formula, why))
    return lines


def format_proof(lines: Sequence[ProofLine]) -> str:
    out = []
    for n, line in enumerate(lines, start=1):
        why = line.justification
        if isinstance(why, Hypothesis):
            just = "hyp"
        elif isinstance(why, ModusPonens):
            just = f"mp({why.minor},{why.major})"
        else:
            just = f"ax({why.name})"
            if why.substitution:
                body = ", ".join(f"{k}:={to_text(v)}" for k, v in why.substitution.items())
                just += "{" + body + "}"
        out.append(f"{n}. {to_text(line.formula)} ; {just}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Soundness sweeps

@dataclass(frozen=True)
class SweepFailure:
    schema: str
    instance: Formula
    countermodel: PartialValuation


@dataclass
class SweepReport:
    logic: LogicId
    instances: int = 0
    failures: List[SweepFailure] = field(default_factory=list)
    per_schema: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


_POOLS = {
    Signature.SIGMA4: ["p", "q", "!p", "p & q", "p -> q", "!(p | q)"],
    Signature.SIGMA_M: ["p", "q", "~p", "[]q", "p -> q", "~[]p"],
    Signature.SIGMA_FULL: ["p", "q", "!p", "[]q", "p -> q", "~p"],
}


def default_pool(logic: Union[LogicId, str]) -> List[Formula]:
    """Six small formulas in the logic's signature, for instantiating schemas."""
    lid = logic if isinstance(logic, LogicId) else LogicId.parse(logic)
    return [parse(t) for t in _POOLS[lid.signature]]


def soundness_sweep(c: Calculus, pool: Sequence[Formula], logic=None,
                    schemas: Optional[Sequence[str]] = None) -> SweepReport:
    """Check that every instance over ``pool`` of each schema is valid.

    ``logic`` defaults to the calculus's own logic; passing another one
    checks the schemas against a different matrix.
    """
    m = resolve(logic if logic is not None else c.logic)
    report = SweepReport(c.logic if m.logic is None else m.logic)
    names = list(schemas) if schemas is not None else c.names
    for name in names:
        schema = c.schemas[name] if name in c.schemas else Schema(name, parse(SCHEMA_TEXT[name]))
        metas = schema.metavariables
        count = 0
        for combo in product(pool, repeat=len(metas)):
            instance = instantiate(schema, dict(zip(metas, combo)))
            count += 1
            counter = find_valuation([instance], [False], m)
            if counter is not None:
                report.failures.append(SweepFailure(name, instance, counter))
        report.per_schema[name] = count
        report.instances += count
    return report

