"""
Classifying many formulas at once
=================================

``classify_many`` runs the compiled search over a hash-consed formula
graph.  Here it sorts every formula of depth at most 2 over two
variables by status, in each combined logic.
"""

# %%
import time

import numpy as np

from ivfde.decide import FormulaDag, classify_many

dag = FormulaDag()
level = [dag.var("p"), dag.var("q")]
for _ in range(2):
    nxt = [dag.var("p"), dag.var("q")]
    nxt += [dag.node(op, a) for a in level for op in ("neg", "sneg", "box")]
    nxt += [dag.node(op, a, b) for a in level for b in level for op in ("and", "or", "imp")]
    level = list(dict.fromkeys(nxt))
roots = np.array(level, dtype=np.int64)
print(len(roots), "formulas")

# %%
for tag in ("IvFDE_T", "IvFDE_T4", "IvFDE_T45", "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5"):
    start = time.perf_counter()
    sat, ref = classify_many(dag, tag, roots=roots)
    took = time.perf_counter() - start
    print(f"{tag:>10}: valid {int((~ref).sum()):>4}  unsatisfiable {int((~sat).sum()):>4}  "
          f"contingent {int((sat & ref).sum()):>4}  ({took * 1000:.1f} ms)")

# %%
# A few of the valid ones, printed back as text.
from ivfde.formula import to_text

sat, ref = classify_many(dag, "IvFDE_T", roots=roots)
print([to_text(dag.formula(int(r))) for r in roots[~ref][:8]])
