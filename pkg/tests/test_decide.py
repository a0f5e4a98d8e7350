import json

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ivfde import conservativity as cons
from ivfde.decide import (CONTINGENT, UNSATISFIABLE, VALID, RowLimitError, SignatureError,
                          check_congruence, classify_many, decide, entails, enumerate_valuations,
                          find_valuation, format_truth_table, is_refutable, is_satisfiable,
                          is_unsatisfiable, is_valid, is_valuation, truth_table)
from ivfde.formula import (HOLE, Box, Neg, SNeg, Signature, Var, classicality, derived_and_m,
                           parse, theta)
from ivfde.nmatrix import LogicId, build

from strategies import formulas

p, q = Var("p"), Var("q")
SMALL = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_enumeration_counts():
    assert len(list(enumerate_valuations(p, "IvFDE_T"))) == 6
    assert len(list(enumerate_valuations(Box(p), "IvFDE_T45"))) == 6
    branches = [v[parse("p -> p")] for v in enumerate_valuations(parse("p -> p"), "IvFDE_T")
                if v[p] == "f0"]
    assert branches == ["T0", "t0"]


def test_validity_examples():
    assert is_valid(parse("[]p -> p"), "IvFDE_T")
    verdict = decide(parse("p | !p"), "IvFDE_T")
    assert verdict.status == CONTINGENT
    assert verdict.witness.variables() == {"p": "f0"}
    assert not is_valid(parse("[]p -> [][]p"), "IvFDE_T")
    assert is_valid(parse("[]p -> [][]p"), "IvFDE_T4")
    model = find_valuation([parse("p & !p")], [True], "IvFDE_T")
    assert model.variables() == {"p": "t1"}


def test_status_words():
    assert decide(parse("p -> p"), "IDM4").status == VALID
    assert decide(parse("p & ~p"), "IvFDE_T").status == UNSATISFIABLE
    assert decide(parse("p & ~p"), "IvFDE_T").witness is not None
    assert is_unsatisfiable(derived_and_m(p, SNeg(p)), "Tm")

def test_signature_errors():
    with pytest.raises(SignatureError):
        is_valid(parse("[]p"), "IDM4")
    with pytest.raises(SignatureError):
        classify_many([parse("!p")], "Tm")


def test_entailment_examples():
    assert entails([p, parse("p -> q")], q, "IvFDE_T").valid
    verdict = entails([parse("p & !p")], q, "IvFDE_T")
    assert not verdict.valid
    assert verdict.witness.variables() == {"p": "t1", "q": "f0"}
    assert entails([classicality(p), p, Neg(p)], q, "IvFDE_T").valid


def test_truth_table_examples():
    rows = truth_table(p, "IvFDE_T")
    assert len(rows) == 6 and sum(r.designated for r in rows) == 3
    for row in truth_table(classicality(p), "IvFDE_T"):
        assert row.designated == (row.valuation[p] not in ("t1", "f0"))
    for row in truth_table(theta("t1", p), "IvFDE_T"):
        assert row.designated == (row.valuation[p] == "t1")


def test_row_cap():
    f = parse("(p -> q) -> ((q -> p) -> (p -> p))")
    with pytest.raises(RowLimitError):
        truth_table(f, "IvFDE_T", max_rows=10)
    assert len(truth_table(f, "IvFDE_T", max_rows=10, override=True)) > 10


def test_truth_table_text():
    text = format_truth_table(truth_table(parse("!p"), "IDM4"), parse("!p"))
    lines = text.splitlines()
    assert lines[0].split() == ["p", "!p", "D"]
    assert [line.split() for line in lines[2:]] == [["1", "0", "0"], ["b", "b", "1"],
                                                    ["n", "n", "0"], ["0", "1", "1"]]


def test_witness_json():
    w = find_valuation([parse("p | !p")], [False], "IvFDE_T")
    payload = json.loads(w.to_json(parse("p | !p")))
    assert payload == {"logic": "ivfde-t", "assignment": {"p": "f0", "!p": "f0", "p | !p": "f0"},
                       "designated": False}
    w8 = find_valuation([p], [True], LogicId("IvFDE_T", True))
    assert json.loads(w8.to_json())["logic"] == "ivfde-t+unrestricted"


def test_congruence_examples():
    w = check_congruence(parse("p -> q"), parse("~p | q"), Box(HOLE), "IvFDE_T")
    assert w is not None
    assert w.designates(parse("[](p -> q)")) and not w.designates(parse("[](~p | q)"))
    w = check_congruence(parse("!(p -> p)"), parse("p & !p"), Neg(HOLE), "IvFDE_T")
    assert w is not None and w.variables() == {"p": "f0"}
    assert check_congruence(p, p, Box(HOLE), "IvFDE_T") is None
    # not equivalent at all, so there is nothing to separate
    assert check_congruence(p, q, Box(HOLE), "IvFDE_T") is None


@pytest.mark.parametrize("tag", ["Tm", "T4m", "T45m", "TBm", "T4Bm", "T5m", "IvFDE_T",
                                 "IvFDE_T4", "IvFDE_T45", "IvFDE_TB", "IvFDE_T4B", "IvFDE_T5"])
def test_nec_fails(tag):
    m = build(tag)
    assert is_valid(parse("p -> p"), m)
    w = find_valuation([parse("[](p -> p)")], [False], m)
    assert w is not None
    value = w[parse("p -> p")]
    assert m.is_designated(value) and value not in ("T", "T0")


_LOGICS = st.sampled_from(["IDM4", "Tm", "IvFDE_T", "IvFDE_T45", "IvFDE_T5"])


def _formula_for(data, tag, max_leaves=8):
    sig = LogicId.parse(tag).signature
    return data.draw(formulas(sig, ("p", "q"), max_leaves=max_leaves))


@SMALL
@given(st.data(), _LOGICS, st.booleans())
def test_search_agrees_with_plain_enumeration(data, tag, want):
    """The compiled search finds exactly the first enumerated valuation with the wanted status."""
    f = _formula_for(data, tag)
    expected = next((v for v in enumerate_valuations(f, tag) if v.designates(f) == want), None)
    found = find_valuation([f], [want], tag)
    if expected is None:
        assert found is None
    else:
        assert found is not None and dict(found.assignment) == dict(expected.assignment)
        assert is_valuation(tag, found.assignment)


@SMALL
@given(st.data(), _LOGICS)
def test_batch_classification_matches_single_queries(data, tag):
    fs = [_formula_for(data, tag) for _ in range(5)]
    sat, ref = classify_many(fs, tag)
    assert list(sat) == [is_satisfiable(f, tag) for f in fs]
    assert list(ref) == [is_refutable(f, tag) for f in fs]


@SMALL
@given(st.data(), _LOGICS)
def test_entailment_from_nothing_is_validity(data, tag):
    f = _formula_for(data, tag)
    assert entails([], f, tag).valid == is_valid(f, tag)


@SMALL
@given(st.data(), _LOGICS)
def test_premise_entails_itself(data, tag):
    f = _formula_for(data, tag)
    assert entails([f], f, tag).valid


@SMALL
@given(formulas(Signature.SIGMA4, ("p", "q"), max_leaves=10))
def test_refutability_transfers_along_embedding(f):
    counter = find_valuation([f], [False], "IDM4")
    if counter is None:
        return
    image = cons.embed_valuation(counter, "IvFDE_T")
    assert is_valuation("IvFDE_T", image.assignment)
    assert not image.designates(f)
    assert is_refutable(f, "IvFDE_T")


def test_deterministic_rows_and_witnesses():
    f = parse("[](p -> q) -> ([]p -> []q)")
    first = [r.valuation.as_text() for r in truth_table(f, "IvFDE_T")]
    second = [r.valuation.as_text() for r in truth_table(f, "IvFDE_T")]
    assert first == second
    a = find_valuation([parse("[]p | !q")], [False], "IvFDE_T5")
    b = find_valuation([parse("[]p | !q")], [False], "IvFDE_T5")
    assert a.as_text() == b.as_text()


def test_shared_subformulas_share_values():
    f = parse("(p -> q) & !(p -> q)")
    for v in enumerate_valuations(f, "IvFDE_T"):
        assert len(v.assignment) == 5


def test_batch_with_dag():
    from ivfde.decide import FormulaDag
    dag = FormulaDag()
    roots = np.array([dag.add(parse("p -> p")), dag.add(parse("p & ~p")), dag.add(p)])
    sat, ref = classify_many(dag, "IvFDE_T", roots=roots)
    assert sat.tolist() == [True, False, True]
    assert ref.tolist() == [False, True, True]
    with pytest.raises(ValueError):
        classify_many(dag, "IvFDE_T")
