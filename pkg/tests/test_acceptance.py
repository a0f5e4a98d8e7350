"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (the status lines are
printed even without ``-s``).
"""

import csv
import io
import random
import time
from dataclasses import replace

import numpy as np
import pytest

from ivfde import conservativity as cons
from ivfde._search import OP_CODES
from ivfde.decide import (FormulaDag, check_congruence, classify_many, enumerate_valuations,
                          find_valuation, is_valid, is_valuation, truth_table, value_sets)
from ivfde.formula import (HOLE, Box, Imp, Neg, SNeg, Var, derived_or_m, parse, plug, theta,
                           theta_short, to_text)
from ivfde.hilbert import ModusPonens, calculus, default_pool, soundness_sweep, verify_proof
from ivfde.nmatrix import (COMBINED_BRIDGES, IDM4_SPECS, TM_SPECS, LogicId, build,
                           dump_tables, superpose)
from ivfde.proofs import basic_theorems
from ivfde.snapshot import Kind, domain

from oracles import naive, transcribed

COMBINED = ["IvFDE_T", "IvFDE_T4", "IvFDE_T45", "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5"]
MODAL = ["Tm", "T4m", "T45m", "TBm", "T4Bm", "T5m"]
VARIANT = {"Tm": "T", "T4m": "T4", "T45m": "T45", "TBm": "TB", "T4Bm": "T4B", "T5m": "T5",
           "IvFDE_T": "T", "IvFDE_T4": "T4", "IvFDE_T45": "T45", "IvFDE_TB": "TB",
           "IvFDE_T4B": "T4B", "IvFDE_T5": "T5"}


@pytest.fixture
def criterion(capsys):
    """Run ``body`` under a time limit and print one status line."""

    def run(number, title, limit, body):
        start = time.perf_counter()
        failure = None
        detail = ""
        try:
            detail = body() or ""
        except AssertionError as exc:
            failure = exc
            detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        elapsed = time.perf_counter() - start
        late = elapsed >= limit
        status = "PASS" if failure is None and not late else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number:>2}: {title} "
                  f"({elapsed:.2f}s, limit {limit:g}s){': ' + detail if detail else ''}")
        if failure is not None:
            raise failure
        assert not late, f"criterion {number} took {elapsed:.2f}s (limit {limit:g}s)"

    return run


def _parse_dump(text):
    rows = list(csv.reader(io.StringIO(text)))
    heads = rows[0][1:]
    if len(heads) == 1:
        return {r[0]: transcribed.cell_set(r[1]) for r in rows[1:]}
    return {(r[0], h): transcribed.cell_set(c) for r in rows[1:] for h, c in zip(heads, r[1:])}


def _diff(generated, expected, label):
    assert generated == expected, (
        f"{label}: cells differ at "
        f"{sorted(k for k in expected if generated.get(k) != expected[k])[:5]}")
    return len(expected)


# ---------------------------------------------------------------------------

def test_criterion_01_table_fidelity(criterion):
    def body():
        cells = 0
        idm4 = {c: _parse_dump(t) for c, t in dump_tables(build("IDM4")).items()}
        for conn in ("and", "or", "imp"):
            cells += _diff(idm4[conn], transcribed.binary(f"idm4_{conn}"), f"IDM4 {conn}")
        cells += _diff(idm4["neg"], transcribed.unary("idm4_neg"), "IDM4 neg")

        for tag in MODAL:
            tables = {c: _parse_dump(t) for c, t in dump_tables(build(tag)).items()}
            if tag == "Tm":
                for conn in ("and", "or", "imp"):
                    cells += _diff(tables[conn], transcribed.binary(f"tm_{conn}"), f"Tm {conn}")
                cells += _diff(tables["sneg"], transcribed.unary("tm_sneg"), "Tm sneg")
            cells += _diff(tables["box"], transcribed.box_column("tm", VARIANT[tag]), f"{tag} box")

        for tag in COMBINED:
            tables = {c: _parse_dump(t) for c, t in dump_tables(build(tag)).items()}
            expected = transcribed.ivfde_tables(VARIANT[tag])
            conns = expected if tag == "IvFDE_T" else ["box"]
            for conn in conns:
                cells += _diff(tables[conn], expected[conn], f"{tag} {conn}")

        # the classicality operator and its ingredients, column by column
        rows = transcribed.read("ivfde_classicality")
        for col, text in enumerate(rows[0][1:], start=1):
            got = {k[0]: v for k, v in value_sets(parse(text), "IvFDE_T").items()}
            want = {r[0]: transcribed.cell_set(r[col]) for r in rows[1:]}
            cells += _diff(got, want, f"column {text}")
        return f"{cells} cells identical"

    criterion(1, "table fidelity", 1.0, body)


def test_criterion_02_domain_cardinalities(criterion):
    def body():
        sizes = [(len(domain(k).values), bin(domain(k).designated_mask).count("1"))
                 for k in (Kind.PAIRS, Kind.TRIPLES, Kind.QUADS_RESTRICTED, Kind.QUADS_UNRESTRICTED)]
        assert sizes == [(4, 2), (4, 2), (6, 3), (8, 4)], sizes
        for tag, n in [("IDM4", 4), ("Tm", 4), ("IvFDE_T", 6)]:
            assert len(build(tag).names) == n
        assert len(build(LogicId("IvFDE_T", True)).names) == 8
        return " ".join(f"{a}/{b}" for a, b in sizes)

    criterion(2, "domain cardinalities", 1.0, body)


def test_criterion_03_soundness_sweep(criterion):
    def body():
        total = 0
        for tag in ["IDM4"] + MODAL + COMBINED:
            report = soundness_sweep(calculus(tag), default_pool(tag))
            assert report.ok, (f"{tag}: {report.failures[0].schema} fails on "
                               f"{to_text(report.failures[0].instance)}")
            assert max(report.per_schema.values()) <= 216
            total += report.instances
        return f"13 calculi, {total} instances, zero failures"

    criterion(3, "soundness sweep", 30.0, body)


def test_criterion_04_theta_characterization(criterion):
    def body():
        p = Var("p")
        checked = 0
        for tag in COMBINED:
            m = build(tag)
            for name in m.names:
                for make in (theta, theta_short):
                    f = make(name, p)
                    for row in truth_table(f, m):
                        assert row.designated == (row.valuation[p] == name), (
                            f"{tag}: {to_text(f)} misjudges p={row.valuation[p]}")
                        checked += 1
        return f"6 logics x 6 names, {checked} rows"

    criterion(4, "theta characterization", 5.0, body)


def _separates_with(logic, cf, cg, stated):
    """Whether some valuation designating cf but not cg agrees with ``stated``."""
    stated = {parse(k): v for k, v in stated.items()}
    for v in enumerate_valuations(Imp(cf, cg), logic):
        if (v.designates(cf) and not v.designates(cg)
                and all(v[f] == x for f, x in stated.items())):
            return True
    return False


# (logic, f, g, context, values the source states for a separating valuation)
_CONGRUENCE_CASES = [
    ("IvFDE_T", "p -> q", "~p | q", Box(HOLE),
     {"p": "f1", "q": "t1", "~p": "t0", "p -> q": "T0", "~p | q": "t0"}),
    ("Tm", "p -> q", None, Box(HOLE), {"p": "f", "q": "t", "p -> q": "T", "~~p -> q": "t"}),
    ("IvFDE_T", "~p | ~q", "~(p & q)", Box(HOLE),
     {"p": "f0", "q": "f1", "~p | ~q": "T0", "~(p & q)": "t0"}),
    ("IvFDE_T", "!p | !p", "!(p & p)", Box(HOLE),
     {"p": "f1", "!p | !p": "T0", "!(p & p)": "t0", "p & p": "f1"}),
    ("IvFDE_T", "!(p -> p)", "p & !p", Neg(HOLE), {"p": "f0", "!(p & !p)": "f0"}),
    ("IDM4", "!(p -> p)", "p & !p", Neg(HOLE), {"p": "n", "!!(p -> p)": "1", "!(p & !p)": "n"}),
]


def test_criterion_05_hyperintensionality(criterion):
    def body():
        lines = []
        for logic, f, g, context, stated in _CONGRUENCE_CASES:
            f = parse(f)
            g = derived_or_m(SNeg(Var("p")), Var("q")) if g is None else parse(g)
            w = check_congruence(f, g, context, logic)
            assert w is not None, f"{logic}: no separating valuation for {to_text(f)}"
            cf, cg = plug(context, f), plug(context, g)
            assert w.designates(cf) and not w.designates(cg), f"{logic}: wrong direction"
            assert _separates_with(logic, cf, cg, stated), (
                f"{logic}: the stated values do not extend to a separating valuation")
            lines.append(f"{logic} {to_text(cf)}")
        return f"{len(lines)} witnesses"

    criterion(5, "hyperintensionality witnesses", 5.0, body)


def test_criterion_06_nec_failure(criterion):
    def body():
        f = parse("p -> p")
        boxed = parse("[](p -> p)")
        for tag in MODAL + COMBINED:
            m = build(tag)
            assert is_valid(f, m), f"{tag}: p -> p not valid"
            w = find_valuation([boxed], [False], m)
            assert w is not None, f"{tag}: [](p -> p) is valid"
            assert m.is_designated(w[f]) and w[f] not in ("T", "T0"), (tag, w[f])
        return "12 logics"

    criterion(6, "NEC failure", 5.0, body)


def test_criterion_07_separation(criterion, capsys):
    cases = {
        "[]p -> [][]p": {"IvFDE_T4", "IvFDE_T45", "IvFDE_T4B"},
        "~[]~[]p -> []p": {"IvFDE_T45", "IvFDE_T5"},
        "~[]~[]p -> p": {"IvFDE_TB", "IvFDE_T4B"},
    }
    log = []

    def body():
        for text, holds in cases.items():
            f = parse(text)
            for tag in sorted(holds):
                assert is_valid(f, tag), f"{text} refutable in {tag}"
            w = find_valuation([f], [False], "IvFDE_T")
            assert w is not None, f"{text} valid in IvFDE_T"
            log.append(f"  IvFDE_T refutes {text}: {w.variables()} "
                       f"value {w[f]}")
        return "3 axioms separated"

    criterion(7, "separation of extensions", 10.0, body)
    with capsys.disabled():
        print("\n".join(log))


def _depth2_formulas(signature):
    return cons.enumerate_formulas(signature, 2, 2)


def test_criterion_08_subnmatrix_embeddings(criterion):
    def body():
        pairs = cons.matched_pairs()
        for component, combined in pairs:
            assert cons.image_is_subnmatrix(component, combined), (component, combined)
        checked = 0
        by_component = {}
        for component, combined in pairs:
            by_component.setdefault(component, []).append(combined)
        for component, targets in by_component.items():
            emb = cons.embedding_for(component)
            for f in _depth2_formulas(emb.signature):
                for row in truth_table(f, component):
                    for target in targets:
                        image = cons.embed_valuation(row.valuation, target)
                        assert is_valuation(target, image.assignment), (to_text(f), target)
                        assert image.designates(f) == row.designated
                        checked += 1
        return f"{len(pairs)} images, {checked} embedded valuations"

    criterion(8, "subNmatrix and embeddings", 30.0, body)


def test_criterion_09_conservativity(criterion, capsys):
    summaries = []

    def body():
        for component, combined in cons.matched_pairs():
            report = cons.conservativity_test(component, combined, samples=1000, max_depth=4,
                                              exhaustive_depth=3)
            summaries.append("  " + report.summary())
            assert report.ok, report.to_json()[:300]
        return f"{len(summaries)} pairs, zero mismatches"

    criterion(9, "conservativity sampling", 300.0, body)
    with capsys.disabled():
        print("\n".join(summaries))


def _universe():
    """All formulas of depth <= 3 over p, q in the full signature, hash-consed."""
    dag = FormulaDag()
    atoms = [dag.var("p"), dag.var("q")]

    def next_level(prev):
        out = list(atoms)
        out += [dag.node(op, a) for a in prev for op in ("neg", "sneg", "box")]
        out += [dag.node(op, a, b) for a in prev for b in prev for op in ("and", "or", "imp")]
        return list(dict.fromkeys(out))

    level1 = next_level(atoms)
    level2 = np.array(next_level(level1), dtype=np.int64)
    fresh = np.setdiff1d(level2, np.array(level1))  # exactly depth 2
    codes, lefts, rights = [], [], []
    for op in ("neg", "sneg", "box"):
        codes.append(np.full(len(fresh), OP_CODES[op]))
        lefts.append(fresh)
        rights.append(np.full(len(fresh), -1))
    a, b = (x.ravel() for x in np.meshgrid(level2, level2, indexing="ij"))
    deep = np.isin(a, fresh) | np.isin(b, fresh)
    a, b = a[deep], b[deep]
    for op in ("and", "or", "imp"):
        codes.append(np.full(len(a), OP_CODES[op]))
        lefts.append(a)
        rights.append(b)
    level3 = dag.extend(np.concatenate(codes), np.concatenate(lefts), np.concatenate(rights))
    return dag, np.concatenate([level2, level3])


def test_criterion_10_oracle_equivalence(criterion):
    def body():
        dag, roots = _universe()
        size = 2
        for _ in range(3):  # formulas of depth <= d+1 from those of depth <= d
            size = 2 + 3 * size + 3 * size * size
        assert len(roots) == size == len(np.unique(roots)), (len(roots), size)
        sat, ref = classify_many(dag, "IvFDE_T", roots=roots)
        op, left, right = dag.arrays()
        sat2, ref2 = naive.verdicts(roots, op, left, right)
        bad = np.flatnonzero((sat != sat2) | (ref != ref2))
        assert len(bad) == 0, f"{len(bad)} disagreements, first {to_text(dag.formula(int(roots[bad[0]])))}"
        return (f"{len(roots)} formulas agree; valid {int((~ref).sum())}, "
                f"unsatisfiable {int((~sat).sum())}")

    criterion(10, "oracle equivalence", 120.0, body)


def test_criterion_11_proof_corpus(criterion):
    def body():
        corpus = basic_theorems("IvFDE_T")
        c = calculus("IvFDE_T")
        rng = random.Random(1729)
        mutants = 0
        for entry in corpus:
            check = verify_proof(c, entry.hypotheses, entry.lines, entry.goal)
            assert check.ok, f"item {entry.item}: line {check.line} {check.reason}"
            mp_lines = [n for n, line in enumerate(entry.lines, start=1)
                        if isinstance(line.justification, ModusPonens)]
            for n in rng.sample(mp_lines, min(3, len(mp_lines))):
                lines = list(entry.lines)
                why = lines[n - 1].justification
                lines[n - 1] = replace(lines[n - 1], justification=ModusPonens(why.major, why.minor))
                bad = verify_proof(c, entry.hypotheses, lines, entry.goal)
                assert not bad.ok and bad.line == n, (entry.item, n, bad)
                mutants += 1
        return f"{len(corpus)} derivations verified, {mutants} mutants rejected at the mutated line"

    criterion(11, "proof corpus", 1.0, body)


def test_criterion_12_superposition(criterion):
    def body():
        combined = superpose(TM_SPECS("T", with_derived=True), IDM4_SPECS, {"and", "or", "imp"},
                             Kind.QUADS_RESTRICTED, bridges=COMBINED_BRIDGES)
        assert combined.same_tables(build("IvFDE_T"))
        wide = superpose(TM_SPECS("T", with_derived=True), IDM4_SPECS, {"and", "or", "imp"},
                         Kind.QUADS_UNRESTRICTED)
        assert len(wide.names) == 8
        unrestricted = LogicId("IvFDE_T", True)
        assert wide.same_tables(build(unrestricted))
        checked = 0
        for component in ("IDM4", "Tm"):
            report = cons.conservativity_test(component, unrestricted, samples=1000, max_depth=4,
                                              exhaustive_depth=None)
            assert report.ok, report.to_json()[:300]
            checked += report.formulas_checked
        return f"identical tables; 8 values; {checked} unrestricted samples agree"

    criterion(12, "superposition identity", 5.0, body)
