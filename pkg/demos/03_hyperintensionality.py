"""
Equivalent formulas that a context can tell apart
=================================================

Both the box and the paraconsistent negation can separate logically
equivalent formulas.  ``check_congruence`` looks for such a pair of
formulas inside a one-hole context.
"""

# %%
from ivfde.decide import check_congruence, entails
from ivfde.formula import HOLE, Box, Neg, parse, plug

cases = [
    ("IvFDE_T", "p -> q", "~p | q", Box(HOLE)),
    ("IvFDE_T", "~p | ~q", "~(p & q)", Box(HOLE)),
    ("IvFDE_T", "!p | !p", "!(p & p)", Box(HOLE)),
    ("IvFDE_T", "!(p -> p)", "p & !p", Neg(HOLE)),
    ("IDM4", "!(p -> p)", "p & !p", Neg(HOLE)),
]

for logic, f, g, context in cases:
    f, g = parse(f), parse(g)
    same = entails([f], g, logic).valid and entails([g], f, logic).valid
    w = check_congruence(f, g, context, logic)
    cf, cg = plug(context, f), plug(context, g)
    print(f"{logic}: equivalent={same}")
    print(f"   {w[cf]:>3} for {cf}")
    print(f"   {w[cg]:>3} for {cg}")
    print("   with", w.variables())

# %%
# Identical formulas are never separated.
print(check_congruence(parse("p"), parse("p"), Box(HOLE), "IvFDE_T"))
