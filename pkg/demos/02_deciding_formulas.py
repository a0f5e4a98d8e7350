"""
Deciding validity, satisfiability and entailment
================================================

Valuations assign one value to each distinct subformula, choosing from
the output set of each connective.  A formula is valid when no valuation
leaves it undesignated.
"""

# %%
from ivfde import decide, entails, parse, truth_table
from ivfde.decide import find_valuation, format_truth_table

for text in ["[]p -> p", "p | !p", "p & !p", "p & ~p"]:
    verdict = decide(parse(text), "IvFDE_T")
    print(f"{text:>10}: {verdict.status:<26} witness {verdict.witness.variables()}")

# %%
# The paraconsistent negation ``!`` neither explodes nor excludes the
# middle, but the classicality operator restores explosion locally.
from ivfde.formula import Neg, Var, classicality

p, q = Var("p"), Var("q")
print("p, !p |= q       :", entails([p, Neg(p)], q, "IvFDE_T").status)
print("o p, p, !p |= q  :", entails([classicality(p), p, Neg(p)], q, "IvFDE_T").status)

# %%
# Truth tables show every valuation, including the branching at
# non-deterministic cells.
f = parse("p -> p")
print(format_truth_table(truth_table(f, "IvFDE_T"), f))

# %%
# Necessitation fails
# -------------------
# ``p -> p`` is valid, yet ``[](p -> p)`` can be refuted: the implication
# may take a designated value that is not the necessary one.
for tag in ("Tm", "IvFDE_T", "IvFDE_T45"):
    w = find_valuation([parse("[](p -> p)")], [False], tag)
    print(f"{tag:>9}: p={w[p]}, p -> p = {w[parse('p -> p')]}, [](p -> p) = {w[parse('[](p -> p)')]}")

# %%
# Extension axioms separate the logics
# ------------------------------------
from ivfde import is_valid

axioms = {"4": "[]p -> [][]p", "5": "~[]~[]p -> []p", "B": "~[]~[]p -> p"}
tags = ["IvFDE_T", "IvFDE_T4", "IvFDE_T45", "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5"]
print("axiom " + " ".join(f"{t:>10}" for t in tags))
for name, text in axioms.items():
    print(f"{name:>5} " + " ".join(f"{str(is_valid(parse(text), t)):>10}" for t in tags))

# %%
# Each value is definable
# -----------------------
# ``theta(a, p)`` is designated exactly when ``p`` takes the value ``a``.
from ivfde.formula import theta

for name in ("T0", "t1", "f0"):
    rows = truth_table(theta(name, p), "IvFDE_T")
    print(name, "designated on", sorted({r.valuation[p] for r in rows if r.designated}))
