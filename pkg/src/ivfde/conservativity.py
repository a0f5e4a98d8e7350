"""Embeddings of the component logics into the combined ones, and
conservativity checks by sampling and small exhaustive sweeps.

IDM4 values (pairs) go into quadruples by keeping the formula and
paraconsistent-negation coordinates; Tm-family values (triples) keep
their three coordinates and gain a fourth that is the complement of the
first.  A combined logic conservatively expands a component when the two
agree on validity (and consequence) for every formula in the component's
signature; here that is tested, not proved.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

from .decide import (PartialValuation, SignatureError, classify_many, decide, entails,
                     resolve)
from .formula import NODE_CLASSES, Formula, Signature, Var, in_signature, to_text
from .nmatrix import LogicId, is_subnmatrix
from .snapshot import Kind, Snapshot, domain, name_of

__all__ = [
    "Embedding", "H", "G", "embedding_for", "check_pair", "embed_valuation",
    "image_is_subnmatrix", "random_formula", "enumerate_formulas", "Record",
    "ConservativityReport", "conservativity_test", "DEFAULT_SEED", "matched_pairs",
]

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class Embedding:
    """An injective map from a component's snapshots into quadruples."""

    name: str
    source: Kind
    lift: Callable[[Snapshot], Snapshot] = field(compare=False, repr=False)
    signature: Signature = Signature.SIGMA_FULL

    @property
    def mapping(self) -> Dict[str, str]:
        d = domain(self.source)
        return {n: name_of(self.lift(z)) for n, z in zip(d.names, d.values)}

    def __call__(self, value: str) -> str:
        return self.mapping[value]


H = Embedding("h", Kind.PAIRS, lambda z: (z[0], 0, 0, z[1]), Signature.SIGMA4)
G = Embedding("g", Kind.TRIPLES, lambda z: (z[0], z[1], z[2], 1 - z[0]), Signature.SIGMA_M)


def _logic(x: Union[LogicId, str]) -> LogicId:
    return x if isinstance(x, LogicId) else LogicId.parse(x)


def embedding_for(component: Union[LogicId, str]) -> Embedding:
    component = _logic(component)
    if component.tag == "IDM4":
        return H
    if component.is_modal_component:
        return G
    raise ValueError(f"{component} is not a component logic")


def check_pair(component: Union[LogicId, str], combined: Union[LogicId, str]) -> None:
    """Raise ValueError unless ``combined`` expands ``component``."""
    component, combined = _logic(component), _logic(combined)
    if not combined.is_combined:
        raise ValueError(f"{combined} is not a combined logic")
    if component.tag == "IDM4":
        return
    if component.is_modal_component and component.box_variant == combined.box_variant:
        return
    raise ValueError(f"{component} and {combined} are not a matched pair")


def matched_pairs(unrestricted: bool = False) -> List[tuple]:
    """(component, combined) pairs: IDM4 with each combined logic, then each modal component."""
    combined = [LogicId(t, unrestricted) for t in ("IvFDE_T", "IvFDE_T4", "IvFDE_T45",
                                                    "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5")]
    modal = [LogicId(t) for t in ("Tm", "T4m", "T45m", "TBm", "T4Bm", "T5m")]
    return [(LogicId("IDM4"), c) for c in combined] + list(zip(modal, combined))


def embed_valuation(v: PartialValuation, target: Union[LogicId, str]) -> PartialValuation:
    """Send every value of ``v`` through the embedding matching its logic."""
    source = v.logic.logic
    if source is None:
        raise ValueError("valuation over an unnamed matrix")
    check_pair(source, target)
    emb = embedding_for(source)
    for f in v.assignment:
        if not in_signature(f, emb.signature):
            raise SignatureError(f"{to_text(f)} is outside the signature of {source}")
    mapping = emb.mapping
    return PartialValuation(resolve(_logic(target)),
                            {f: mapping[x] for f, x in v.assignment.items()})


def image_is_subnmatrix(component: Union[LogicId, str], combined: Union[LogicId, str]) -> bool:
    """Whether the embedded component matrix sits inside the combined one's reduct."""
    check_pair(component, combined)
    emb = embedding_for(component)
    return is_subnmatrix(resolve(_logic(component)), resolve(_logic(combined)),
                         emb.signature, emb.mapping)


# ---------------------------------------------------------------------------
# Formula supplies

_VAR_NAMES = ["p", "q", "r", "s"]


def _var(i: int) -> Var:
    return Var(_VAR_NAMES[i] if i < len(_VAR_NAMES) else f"p{i}")


def _ordered(signature: Signature) -> List[str]:
    order = ["neg", "sneg", "box", "and", "or", "imp"]
    return [c for c in order if c in signature.connectives]


def random_formula(signature: Signature, max_depth: int, nvars: int,
                   seed: Union[int, random.Random]) -> Formula:
    """A random formula of depth at most ``max_depth``.

    Each node is a variable or one of the signature's connectives, chosen
    with equal probability; at depth zero only variables remain.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    conns = _ordered(signature)

    def grow(d: int) -> Formula:
        pick = rng.randrange(len(conns) + 1) if d > 0 else 0
        if pick == 0:
            return _var(rng.randrange(nvars))
        cls = NODE_CLASSES[conns[pick - 1]]
        if cls.arity == 1:
            return cls(grow(d - 1))
        return cls(grow(d - 1), grow(d - 1))

    return grow(max_depth)


def enumerate_formulas(signature: Signature, max_depth: int, nvars: int) -> List[Formula]:
    """Every formula of depth at most ``max_depth``, without repetition."""
    atoms = [_var(i) for i in range(nvars)]
    level: List[Formula] = list(atoms)
    unary = [NODE_CLASSES[c] for c in _ordered(signature) if NODE_CLASSES[c].arity == 1]
    binary = [NODE_CLASSES[c] for c in _ordered(signature) if NODE_CLASSES[c].arity == 2]
    for _ in range(max_depth):
        nxt: Dict[Formula, None] = dict.fromkeys(atoms)
        for cls in unary:
            nxt.update(dict.fromkeys(cls(a) for a in level))
        for cls in binary:
            nxt.update(dict.fromkeys(cls(a, b) for a in level for b in level))
        level = list(nxt)
    return level


# ---------------------------------------------------------------------------
# Reports

@dataclass(frozen=True)
class Record:
    formula: str
    component_verdict: str
    combined_verdict: str
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {"formula": self.formula, "component_verdict": self.component_verdict,
               "combined_verdict": self.combined_verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ConservativityReport:
    component: LogicId
    combined: LogicId
    formulas_checked: int = 0
    entailments_checked: int = 0
    mismatches: List[Record] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> str:
        """The mismatch records as a JSON list (empty when the pair agrees)."""
        return json.dumps([r.as_dict() for r in self.mismatches])

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.mismatches)} mismatches"
        return (f"{self.component.cli_tag} vs {self.combined.cli_tag}"
                f"{' (unrestricted)' if self.combined.unrestricted else ''}: "
                f"{self.formulas_checked} formulas, {self.entailments_checked} entailments, {status}")


def _word(valid: bool) -> str:
    return "valid" if valid else "invalid"


def _witness(f: Formula, logic) -> Optional[dict]:
    verdict = decide(f, logic)
    if verdict.valid or verdict.witness is None:
        return None
    return json.loads(verdict.witness.to_json(f))


def _compare_formulas(report: ConservativityReport, formulas: Sequence[Formula]) -> None:
    if not formulas:
        return
    _, ref_component = classify_many(formulas, report.component)
    _, ref_combined = classify_many(formulas, report.combined)
    for f, a, b in zip(formulas, ref_component, ref_combined):
        if a != b:
            refuted = report.component if a else report.combined
            report.mismatches.append(Record(to_text(f), _word(not a), _word(not b), _witness(f, refuted)))
    report.formulas_checked += len(formulas)


def conservativity_test(component: Union[LogicId, str], combined: Union[LogicId, str],
                        samples: int = 1000, max_depth: int = 4, nvars: int = 2,
                        seed: int = DEFAULT_SEED, exhaustive_depth: Optional[int] = 3,
                        entailment_samples: int = 200,
                        extra: Iterable[Formula] = ()) -> ConservativityReport:
    """Compare validity in ``component`` and ``combined`` on component-signature formulas.

    Checks ``samples`` random formulas, every one-variable formula up to
    ``exhaustive_depth`` (skipped when None), and ``entailment_samples``
    random entailments with at most two premises.
    """
    component, combined = _logic(component), _logic(combined)
    check_pair(component, combined)
    sig = embedding_for(component).signature
    report = ConservativityReport(component, combined)
    rng = random.Random(seed)
    sampled = [random_formula(sig, max_depth, nvars, rng) for _ in range(samples)]
    _compare_formulas(report, sampled + list(extra))
    if exhaustive_depth is not None:
        _compare_formulas(report, enumerate_formulas(sig, exhaustive_depth, 1))
    for _ in range(entailment_samples):
        premises = [random_formula(sig, max_depth - 1, nvars, rng) for _ in range(rng.randrange(3))]
        conclusion = random_formula(sig, max_depth - 1, nvars, rng)
        a = entails(premises, conclusion, component)
        b = entails(premises, conclusion, combined)
        if a.valid != b.valid:
            w = (a if not a.valid else b).witness
            text = ", ".join(to_text(p) for p in premises) + " |= " + to_text(conclusion)
            report.mismatches.append(Record(text, _word(a.valid), _word(b.valid),
                                            json.loads(w.to_json(conclusion)) if w else None))
        report.entailments_checked += 1
    return report
