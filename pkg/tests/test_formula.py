import pytest
from hypothesis import given, settings

from ivfde.formula import (And, Box, FormulaSyntaxError, Imp, MissingBindingError, Neg, Or, SNeg,
                           Schema, Signature, Var, classicality, connectives, depth,
                           derived_and_m, derived_or_m, in_signature, instantiate, parse, size,
                           subformulas, theta, theta_short, to_text)
from ivfde.hilbert import match_schema

from strategies import formulas

p, q, r = Var("p"), Var("q"), Var("r")


@pytest.mark.parametrize("text, expected", [
    ("p1 -> p1", Imp(Var("p1"), Var("p1"))),
    ("[]~p & !q", And(Box(SNeg(p)), Neg(q))),
    ("p <-> q", And(Imp(p, q), Imp(q, p))),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p & q & r", And(And(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("~[]!p", SNeg(Box(Neg(p)))),
])
def test_parse_examples(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("f, text", [
    (Imp(p, p), "p -> p"),
    (Box(SNeg(p)), "[]~p"),
    (And(Or(p, q), r), "(p | q) & r"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (Neg(And(p, q)), "!(p & q)"),
])
def test_print_examples(f, text):
    assert to_text(f) == text


def test_iff_chain_is_left_associative():
    inner = And(Imp(p, q), Imp(q, p))
    assert parse("p <-> q <-> r") == And(Imp(inner, r), Imp(r, inner))


@pytest.mark.parametrize("text, offset", [("p &", 3), ("(p", 2), ("p q", 2), ("p $ q", 2), ("", 0)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_syntax_error_offset_counts_bytes():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("é")
    assert info.value.offset == 0
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p & é")
    assert info.value.offset == 4


@pytest.mark.parametrize("f, expected", [
    (p, [p]),
    (Imp(p, p), [p, Imp(p, p)]),
    (Neg(Imp(p, q)), [p, q, Imp(p, q), Neg(Imp(p, q))]),
])
def test_subformula_examples(f, expected):
    assert subformulas(f) == expected


@pytest.mark.parametrize("f, sig, expected", [
    (And(Neg(p), q), Signature.SIGMA4, True),
    (Box(p), Signature.SIGMA4, False),
    (Imp(SNeg(p), q), Signature.SIGMA_M, True),
    (And(p, q), Signature.SIGMA_M, False),
])
def test_in_signature_examples(f, sig, expected):
    assert in_signature(f, sig) is expected


def test_derived_connectives():
    assert derived_and_m(p, q) == SNeg(Imp(p, SNeg(q)))
    assert derived_or_m(p, q) == Imp(SNeg(p), q)
    assert derived_and_m(p, p) == SNeg(Imp(p, SNeg(p)))


def test_theta_examples():
    assert theta("T0", p) == parse("p & []p & ~[]~p & ~!p")
    assert theta("F1", p) == parse("~p & ~[]p & []~p & !p")
    assert theta("f0", p) == parse("~p & ~[]p & ~[]~p & ~!p")
    with pytest.raises(ValueError):
        theta("T1", p)
    with pytest.raises(ValueError):
        theta_short("x", p)


@pytest.mark.parametrize("name", ["T0", "t0", "t1", "f0", "f1", "F1"])
def test_theta_connectives(name):
    f = theta(name, p)
    assert in_signature(f, Signature.SIGMA_FULL)
    assert connectives(f) == {"and", "sneg", "box", "neg"}


def test_classicality_examples():
    assert classicality(p) == parse("(p | !p) & ~(p & !p)")
    assert classicality(Box(p)) == parse("([]p | ![]p) & ~([]p & ![]p)")
    assert parse(to_text(classicality(p))) == classicality(p)


def test_instantiate_examples():
    ax1 = Schema("Ax1", parse("phi -> (psi -> phi)"))
    assert instantiate(ax1, {"phi": p, "psi": Box(q)}) == parse("p -> ([]q -> p)")
    t = Schema("T", parse("[]phi -> phi"))
    assert instantiate(t, {"phi": Neg(p)}) == parse("[]!p -> !p")
    with pytest.raises(MissingBindingError):
        instantiate(ax1, {"phi": p})


@settings(max_examples=300, deadline=None)
@given(formulas(max_leaves=40))
def test_round_trip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_subformulas_are_distinct_and_children_first(f):
    subs = subformulas(f)
    assert len(set(subs)) == len(subs) <= size(f)
    assert subs[-1] == f
    seen = set()
    for g in subs:
        assert all(c in seen for c in g.children)
        seen.add(g)


@settings(max_examples=200, deadline=None)
@given(formulas(), formulas(), formulas())
def test_match_then_instantiate_is_identity(a, b, c):
    schema = Schema("Ax2", parse("(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))"))
    instance = instantiate(schema, {"phi": a, "psi": b, "gamma": c})
    binding = match_schema(schema, instance)
    assert binding == {"phi": a, "psi": b, "gamma": c}
    assert instantiate(schema, binding) == instance


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_depth_bounds_size(f):
    assert depth(f) < size(f) <= 2 ** (depth(f) + 1) - 1


def test_formulas_hash_structurally():
    assert hash(parse("p -> q")) == hash(Imp(Var("p"), Var("q")))
    assert len({parse("p & q"), And(p, q), Or(p, q)}) == 2
