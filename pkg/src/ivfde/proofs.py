"""Machine-checkable derivations of basic theorems of the combined calculus.

The derivations are produced with :class:`ProofBuilder`, which only ever
emits hypothesis, axiom and modus ponens lines.  Steps that an informal
proof would justify by "classical reasoning" or by an earlier theorem are
expanded in place:

* a sub-derivation from an extra hypothesis ``A`` is turned into a
  derivation of ``A -> B`` by the usual deduction-theorem construction
  (:meth:`ProofBuilder.discharge`), which needs only Ax1, Ax2 and MP;
* biconditionals are opened with Ax4/Ax5 and closed with Ax3.

The resulting line lists are checked by :func:`ivfde.hilbert.verify_proof`,
which knows nothing about this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Union

from .formula import Formula, Imp, instantiate, parse, to_text
from .hilbert import (Axiom, Calculus, Hypothesis, ModusPonens, ProofLine, calculus)

__all__ = ["ProofBuilder", "ProofError", "CorpusEntry", "basic_theorems"]

FormulaLike = Union[Formula, str]


def _f(x: FormulaLike) -> Formula:
    return parse(x) if isinstance(x, str) else x


class ProofError(ValueError):
    pass


class ProofBuilder:
    """Accumulates proof lines; every method returns the (1-based) line number produced."""

    def __init__(self, calc: Calculus, hypotheses: Sequence[FormulaLike] = ()):
        self.calc = calc
        self.hypotheses: List[Formula] = [_f(h) for h in hypotheses]
        self.lines: List[ProofLine] = []

    def __getitem__(self, n: int) -> Formula:
        return self.lines[n - 1].formula

    def _add(self, f: Formula, why) -> int:
        self.lines.append(ProofLine(f, why))
        return len(self.lines)

    # primitive steps ------------------------------------------------------

    def hyp(self, f: FormulaLike) -> int:
        f = _f(f)
        if f not in self.hypotheses:
            raise ProofError(f"{to_text(f)} is not a hypothesis")
        return self._add(f, Hypothesis())

    def ax(self, name: str, **subst: FormulaLike) -> int:
        binding = {k: _f(v) for k, v in subst.items()}
        return self._add(instantiate(self.calc.schemas[name], binding), Axiom(name, binding))

    def mp(self, minor: int, major: int) -> int:
        a, imp = self[minor], self[major]
        if not (isinstance(imp, Imp) and imp.left == a):
            raise ProofError(f"line {major} is not an implication from line {minor}")
        return self._add(imp.right, ModusPonens(minor, major))

    # derived steps ----------------------------------------------------------

    def iff_forward(self, n: int) -> int:
        """From (A -> B) & (B -> A) get A -> B."""
        f = self[n]
        return self.mp(n, self.ax("Ax4", phi=f.left, psi=f.right))

    def iff_backward(self, n: int) -> int:
        f = self[n]
        return self.mp(n, self.ax("Ax5", phi=f.left, psi=f.right))

    def forward(self, n: int, name: str, **subst) -> int:
        """Apply the left-to-right direction of a biconditional axiom to line ``n``."""
        return self.mp(n, self.iff_forward(self.ax(name, **subst)))

    def backward(self, n: int, name: str, **subst) -> int:
        return self.mp(n, self.iff_backward(self.ax(name, **subst)))

    def conj_intro(self, a: int, b: int) -> int:
        step = self.mp(a, self.ax("Ax3", phi=self[a], psi=self[b]))
        return self.mp(b, step)

    def conj_left(self, n: int) -> int:
        f = self[n]
        return self.mp(n, self.ax("Ax4", phi=f.left, psi=f.right))

    def conj_right(self, n: int) -> int:
        f = self[n]
        return self.mp(n, self.ax("Ax5", phi=f.left, psi=f.right))

    def identity(self, a: FormulaLike) -> int:
        """A -> A from Ax1 and Ax2."""
        a = _f(a)
        aa = Imp(a, a)
        s1 = self.ax("Ax2", phi=a, psi=aa, gamma=a)
        s2 = self.ax("Ax1", phi=a, psi=aa)
        s3 = self.mp(s2, s1)
        s4 = self.ax("Ax1", phi=a, psi=a)
        return self.mp(s4, s3)

    def chain(self, ab: int, bc: int) -> int:
        """From A -> B and B -> C get A -> C."""
        a, b, c = self[ab].left, self[ab].right, self[bc].right
        lifted = self.mp(bc, self.ax("Ax1", phi=self[bc], psi=a))
        dist = self.mp(lifted, self.ax("Ax2", phi=a, psi=b, gamma=c))
        return self.mp(ab, dist)

    def discharge(self, assumption: FormulaLike, build: Callable[["ProofBuilder"], int]) -> int:
        """Derive ``assumption -> X`` where ``build`` derives X with ``assumption`` as an extra hypothesis."""
        a = _f(assumption)
        sub = ProofBuilder(self.calc, self.hypotheses + [a])
        target = build(sub)
        # implication lines of the outer proof, indexed by sub-derivation line
        imp_line: Dict[int, int] = {}
        for k, line in enumerate(sub.lines, start=1):
            f, why = line.formula, line.justification
            if f == a:
                imp_line[k] = self.identity(a)
            elif isinstance(why, ModusPonens):
                i, j = why.minor, why.major
                fi = sub[i]
                dist = self.ax("Ax2", phi=a, psi=fi, gamma=f)
                step = self.mp(imp_line[j], dist)
                imp_line[k] = self.mp(imp_line[i], step)
            else:
                here = self._add(f, why)
                imp_line[k] = self.mp(here, self.ax("Ax1", phi=f, psi=a))
        return imp_line[target]

    def prove_iff(self, left: FormulaLike, right: FormulaLike,
                  forward: Callable[["ProofBuilder", int], int],
                  backward: Callable[["ProofBuilder", int], int]) -> int:
        """Close left <-> right from two hypothetical derivations."""
        left, right = _f(left), _f(right)
        there = self.discharge(left, lambda b: forward(b, b.hyp(left)))
        back = self.discharge(right, lambda b: backward(b, b.hyp(right)))
        return self.conj_intro(there, back)


# ---------------------------------------------------------------------------
# Lemmas shared by several derivations

def _neg_box_to_sneg_box(b: ProofBuilder, n: int, phi: FormulaLike) -> int:
    """From []!phi get []~phi: the paraconsistent and classical impossibility agree."""
    phi = _f(phi)
    s = b.forward(n, "N5", phi=f"!({to_text(phi)})")
    return b.backward(s, "N6", phi=phi)


def _sneg_box_to_neg_box(b: ProofBuilder, n: int, phi: FormulaLike) -> int:
    phi = _f(phi)
    s = b.forward(n, "N6", phi=phi)
    return b.backward(s, "N5", phi=f"!({to_text(phi)})")


def _double_negation_elim(b: ProofBuilder, a: Formula) -> int:
    """~~A -> A."""
    def inner(s: ProofBuilder) -> int:
        h = s.hyp(f"~~({to_text(a)})")
        lifted = s.mp(h, s.ax("Ax1", phi=s[h], psi=f"~({to_text(a)})"))
        k = s.mp(lifted, s.ax("Ax9", phi=f"~({to_text(a)})", psi=a))
        return s.mp(s.identity(f"~({to_text(a)})"), k)
    return b.discharge(f"~~({to_text(a)})", inner)


def _contraposition(b: ProofBuilder, a: Formula, c: Formula) -> int:
    """(A -> ~C) -> (C -> ~A)."""
    a_imp = Imp(a, parse(f"~({to_text(c)})"))

    def with_imp(s: ProofBuilder) -> int:
        def with_c(t: ProofBuilder) -> int:
            h_imp, h_c = t.hyp(a_imp), t.hyp(c)
            dne = _double_negation_elim(t, a)
            to_not_c = t.chain(dne, h_imp)
            to_c = t.mp(h_c, t.ax("Ax1", phi=c, psi=f"~~({to_text(a)})"))
            k = t.mp(to_not_c, t.ax("Ax9", phi=c, psi=f"~({to_text(a)})"))
            return t.mp(to_c, k)
        return s.discharge(c, with_c)
    return b.discharge(a_imp, with_imp)


# ---------------------------------------------------------------------------
# The corpus

@dataclass(frozen=True)
class CorpusEntry:
    item: int
    statement: Formula
    hypotheses: List[Formula]
    goal: Formula
    lines: List[ProofLine] = field(repr=False)
    reconstructed: bool
    note: str = ""


def _item1(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c, ["[]p"])
    h = b.hyp("[]p")
    k = b.iff_forward(b.ax("N5", phi="p"))
    s = b.mp(h, k)
    b.mp(s, b.ax("T", phi="~!p"))
    return CorpusEntry(1, parse("[]p -> ~!p"), b.hypotheses, parse("~!p"), b.lines, False,
                       "N5 is a biconditional; its forward half is taken with Ax4")


def _item2(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)

    def fwd(s, n):
        n = s.forward(n, "DN1", phi="p")
        n = s.forward(n, "N6", phi="~p")
        return s.backward(n, "N5", phi="!~p")

    def bwd(s, n):
        n = s.forward(n, "N5", phi="!~p")
        n = s.backward(n, "N6", phi="~p")
        return s.backward(n, "DN1", phi="p")

    b.prove_iff("[]p", "[]!~p", fwd, bwd)
    goal = parse("[]p <-> []!~p")
    return CorpusEntry(2, goal, [], goal, b.lines, True)


def _item3(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)

    def fwd(s, n):
        n = s.forward(n, "N5", phi="p")
        n = s.forward(n, "N6", phi="!p")
        return s.backward(n, "N5", phi="!!p")

    def bwd(s, n):
        n = s.forward(n, "N5", phi="!!p")
        n = s.backward(n, "N6", phi="!p")
        return s.backward(n, "N5", phi="p")

    b.prove_iff("[]p", "[]!!p", fwd, bwd)
    goal = parse("[]p <-> []!!p")
    return CorpusEntry(3, goal, [], goal, b.lines, True)


def _item4(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)
    b.prove_iff("[]!p", "[]~p",
                lambda s, n: _neg_box_to_sneg_box(s, n, "p"),
                lambda s, n: _sneg_box_to_neg_box(s, n, "p"))
    goal = parse("[]!p <-> []~p")
    return CorpusEntry(4, goal, [], goal, b.lines, True)


def _item5(c: Calculus, phi: str = "p") -> CorpusEntry:
    b = ProofBuilder(c, [f"[]~{phi}"])
    h = b.hyp(f"[]~{phi}")
    lemma = b.discharge(f"[]~{phi}", lambda s: _sneg_box_to_neg_box(s, s.hyp(f"[]~{phi}"), phi))
    s = b.mp(h, lemma)
    b.mp(s, b.ax("T", phi=f"!{phi}"))
    return CorpusEntry(5, parse(f"[]~{phi} -> !{phi}"), b.hypotheses, parse(f"!{phi}"), b.lines, False,
                       "the step cited as item 4 is derived in place")


def _item6(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)

    def fwd(s, n):
        n = _neg_box_to_sneg_box(s, n, "p | q")
        n = s.forward(n, "N2", phi="p", psi="q")
        n = s.forward(n, "N1", phi="~p", psi="~q")
        left = _sneg_box_to_neg_box(s, s.conj_left(n), "p")
        right = _sneg_box_to_neg_box(s, s.conj_right(n), "q")
        return s.backward(s.conj_intro(left, right), "N1", phi="!p", psi="!q")

    def bwd(s, n):
        n = s.forward(n, "N1", phi="!p", psi="!q")
        left = _neg_box_to_sneg_box(s, s.conj_left(n), "p")
        right = _neg_box_to_sneg_box(s, s.conj_right(n), "q")
        n = s.backward(s.conj_intro(left, right), "N1", phi="~p", psi="~q")
        n = s.backward(n, "N2", phi="p", psi="q")
        return _sneg_box_to_neg_box(s, n, "p | q")

    b.prove_iff("[]!(p | q)", "[](!p & !q)", fwd, bwd)
    goal = parse("[]!(p | q) <-> [](!p & !q)")
    return CorpusEntry(6, goal, [], goal, b.lines, True)


def _item7(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)

    def fwd(s, n):
        n = _neg_box_to_sneg_box(s, n, "p -> q")
        n = s.forward(n, "K2", phi="p", psi="q")
        right = _sneg_box_to_neg_box(s, s.conj_right(n), "q")
        return s.backward(s.conj_intro(s.conj_left(n), right), "N1", phi="p", psi="!q")

    def bwd(s, n):
        n = s.forward(n, "N1", phi="p", psi="!q")
        right = _neg_box_to_sneg_box(s, s.conj_right(n), "q")
        n = s.backward(s.conj_intro(s.conj_left(n), right), "K2", phi="p", psi="q")
        return _sneg_box_to_neg_box(s, n, "p -> q")

    b.prove_iff("[]!(p -> q)", "[](p & !q)", fwd, bwd)
    goal = parse("[]!(p -> q) <-> [](p & !q)")
    return CorpusEntry(7, goal, [], goal, b.lines, True)


def _item8(c: Calculus) -> CorpusEntry:
    hyp = "[]!p | []!q"
    b = ProofBuilder(c, [hyp])
    h = b.hyp(hyp)
    target = parse("[]~p | []~q")
    to_p = b.discharge("[]!p", lambda s: _neg_box_to_sneg_box(s, s.hyp("[]!p"), "p"))
    to_q = b.discharge("[]!q", lambda s: _neg_box_to_sneg_box(s, s.hyp("[]!q"), "q"))
    via_p = b.chain(to_p, b.ax("Ax6", phi="[]~p", psi="[]~q"))
    via_q = b.chain(to_q, b.ax("Ax7", phi="[]~p", psi="[]~q"))
    cases = b.ax("Ax8", phi="[]!p", psi="[]!q", gamma=target)
    step = b.mp(via_q, b.mp(via_p, cases))
    n = b.mp(h, step)
    n = b.mp(n, b.ax("N3", phi="p", psi="q"))
    back = b.discharge("[]~(p & q)", lambda s: _sneg_box_to_neg_box(s, s.hyp("[]~(p & q)"), "p & q"))
    b.mp(n, back)
    return CorpusEntry(8, parse("[]!p | []!q -> []!(p & q)"), b.hypotheses, parse("[]!(p & q)"),
                       b.lines, False, "the steps cited as item 4 are derived in place")


def _item9(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c, ["[]p"])
    h = b.hyp("[]p")
    k = b.iff_forward(b.ax("DN1", phi="p"))
    n = b.mp(h, k)

    def item5(s: ProofBuilder) -> int:
        m = _sneg_box_to_neg_box(s, s.hyp("[]~~p"), "~p")
        return s.mp(m, s.ax("T", phi="!~p"))

    lemma = b.discharge("[]~~p", item5)
    b.mp(n, lemma)
    return CorpusEntry(9, parse("[]p -> !~p"), b.hypotheses, parse("!~p"), b.lines, False,
                       "the step cited as item 5 is derived in place")


def _item10(c: Calculus) -> CorpusEntry:
    b = ProofBuilder(c)

    def item1(s: ProofBuilder) -> int:
        m = s.forward(s.hyp("[]~p"), "N5", phi="~p")
        return s.mp(m, s.ax("T", phi="~!~p"))

    first = b.discharge("[]~p", item1)
    second = _contraposition(b, parse("[]~p"), parse("!~p"))
    b.mp(first, second)
    goal = parse("!~p -> ~[]~p")
    return CorpusEntry(10, goal, [], goal, b.lines, False,
                       "the classical contraposition step is derived from Ax1, Ax2 and Ax9")


def basic_theorems(logic="IvFDE_T") -> List[CorpusEntry]:
    """The ten derivations, instantiated with phi = p and psi = q."""
    c = calculus(logic)
    return [f(c) for f in (_item1, _item2, _item3, _item4, _item5, _item6,
                           _item7, _item8, _item9, _item10)]
