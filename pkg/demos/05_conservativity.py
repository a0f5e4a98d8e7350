"""
Embedding the components into the combined logics
=================================================

Values of IDM4 and of the Tm family map into the quadruples.  The images
sit inside the combined matrices, so every component valuation carries
over; sampling then compares validity on the component's own formulas.
"""

# %%
from ivfde import conservativity as cons

print("pairs:", cons.H.mapping)
print("triples:", cons.G.mapping)

for component, combined in cons.matched_pairs():
    print(f"{component.tag:>5} inside {combined.tag:<10}", cons.image_is_subnmatrix(component, combined))

# %%
# Carry a countermodel across
# ---------------------------
from ivfde.decide import find_valuation
from ivfde.formula import parse

f = parse("p | !p")
counter = find_valuation([f], [False], "IDM4")
image = cons.embed_valuation(counter, "IvFDE_T")
print(counter.as_text(), "->", image.as_text(), "designated:", image.designates(f))

# %%
# Sampling
# --------
for component, combined in cons.matched_pairs()[:1] + cons.matched_pairs()[6:7]:
    report = cons.conservativity_test(component, combined, samples=300, exhaustive_depth=2)
    print(report.summary())

# %%
# The eight-valued combination agrees with both components too.
from ivfde.nmatrix import LogicId

wide = LogicId("IvFDE_T", True)
for component in ("IDM4", "Tm"):
    print(cons.conservativity_test(component, wide, samples=300, exhaustive_depth=None).summary())
