"""
Truth values and connective tables
==================================

Every logic in the package is an (N)matrix over tuples of bits.  This
script lists the value domains, prints a few tables, and rebuilds the
six-valued matrix by superposing its two components.
"""

# %%
# Value domains
# -------------
# Pairs serve the four-valued logic IDM4, triples serve the modal Tm family,
# and quadruples serve the combined logics.  Designated values are the
# tuples whose first bit is 1.
from ivfde.snapshot import Kind, domain

for kind in Kind:
    d = domain(kind)
    shown = ", ".join(f"{n}={''.join(map(str, z))}" for n, z in zip(d.names, d.values))
    print(f"{kind.value:>20}: {shown}")

# %%
# Tables
# ------
# ``dump_tables`` renders each connective as CSV, one cell per argument
# tuple.  Non-deterministic cells list several values.
from ivfde.nmatrix import apply, build, dump_tables

six = build("IvFDE_T")
print(dump_tables(six)["imp"])
print("t0 -> t0 can be", sorted(apply(six, "imp", "t0", "t0")))
print("the box of T0 can be", sorted(apply(six, "box", "T0")))

# %%
# The box variants differ only in the box column.
for tag in ("IvFDE_T", "IvFDE_T4", "IvFDE_T45", "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5"):
    m = build(tag)
    column = {n: "/".join(sorted(apply(m, "box", n))) for n in m.names}
    print(f"{tag:>10}", column)

# %%
# Superposition
# -------------
# Triple specifications keep coordinates 1-3 and pair specifications add
# coordinate 4; the shared connectives must agree on coordinate 1.  Over
# the restricted domain, and with the coordinates neither side governs
# filled in, the result is exactly the six-valued matrix.  Without those
# fillers and without the domain restriction, there are eight values.
from ivfde.nmatrix import COMBINED_BRIDGES, IDM4_SPECS, TM_SPECS, superpose

shared = {"and", "or", "imp"}
combined = superpose(TM_SPECS("T", with_derived=True), IDM4_SPECS, shared,
                     Kind.QUADS_RESTRICTED, bridges=COMBINED_BRIDGES)
print("identical to the direct build:", combined.same_tables(six))
wide = superpose(TM_SPECS("T", with_derived=True), IDM4_SPECS, shared, Kind.QUADS_UNRESTRICTED)
print("unrestricted values:", wide.names)
