"""
Checking Hilbert proofs
=======================

Each logic comes with a catalogue of axiom schemas and modus ponens.  The
checker reports the first line that is not justified.
"""

# %%
from ivfde.formula import parse
from ivfde.hilbert import calculus, default_pool, format_proof, parse_proof, soundness_sweep, verify_proof

c = calculus("IvFDE_T")
print(len(c), "schemas:", " ".join(c.names))

# %%
# A short proof in the line format used by ``ivfde prove``.
text = """
1. []p ; hyp
2. ([]p -> []~!p) & ([]~!p -> []p) ; ax(N5){phi:=p}
3. ([]p -> []~!p) & ([]~!p -> []p) -> ([]p -> []~!p) ; ax(Ax4)
4. []p -> []~!p ; mp(2,3)
5. []~!p ; mp(1,4)
6. []~!p -> ~!p ; ax(T)
7. ~!p ; mp(5,6)
"""
lines = parse_proof(text)
print(verify_proof(c, [parse("[]p")], lines, parse("~!p")))
print(verify_proof(c, [], lines))

# %%
# Longer derivations
# ------------------
# ``basic_theorems`` builds ten derivations with a small proof builder that
# only emits hypothesis, axiom and modus ponens lines.
from ivfde.proofs import basic_theorems

for entry in basic_theorems():
    check = verify_proof(c, entry.hypotheses, entry.lines, entry.goal)
    kind = "reconstructed" if entry.reconstructed else "direct"
    print(f"item {entry.item:>2}: {len(entry.lines):>4} lines, {kind:<13} {check.ok}  {entry.statement}")

print(format_proof(basic_theorems()[0].lines))

# %%
# Soundness sweeps
# ----------------
# Every schema instance over a small pool must be valid in the logic's own
# matrix.  The eight-valued matrix is not a model of every bridge axiom.
from ivfde.nmatrix import LogicId

print(soundness_sweep(c, default_pool("IvFDE_T")).ok)
wide = soundness_sweep(c, default_pool("IvFDE_T"), logic=LogicId("IvFDE_T", True))
print(sorted({f.schema for f in wide.failures}), len(wide.failures), "failing instances")
