from itertools import product

import pytest

from ivfde.snapshot import (Kind, complement, domain, enumerate_domain, implies, is_designated,
                            join, meet, name_of, snapshot_of)


def test_cardinalities():
    sizes = {k: len(enumerate_domain(k)) for k in Kind}
    assert sizes == {Kind.PAIRS: 4, Kind.TRIPLES: 4, Kind.QUADS_RESTRICTED: 6,
                     Kind.QUADS_UNRESTRICTED: 8}


@pytest.mark.parametrize("kind, names, designated", [
    (Kind.PAIRS, ("1", "b", "n", "0"), 2),
    (Kind.TRIPLES, ("T", "t", "f", "F"), 2),
    (Kind.QUADS_RESTRICTED, ("T0", "t0", "t1", "f0", "f1", "F1"), 3),
    (Kind.QUADS_UNRESTRICTED, ("T0", "T1", "t0", "t1", "f0", "f1", "F0", "F1"), 4),
])
def test_canonical_order_and_designation(kind, names, designated):
    d = domain(kind)
    assert d.names == names
    assert bin(d.designated_mask).count("1") == designated
    # designated values come first
    assert d.designated_mask == (1 << designated) - 1


def test_restricted_members_by_filtering():
    members = [z for z in product((0, 1), repeat=4)
               if z[1] <= z[0] and z[0] & z[2] == 0 and z[1] & z[3] == 0 and z[2] <= z[3]]
    assert sorted(members) == sorted(enumerate_domain(Kind.QUADS_RESTRICTED))


def test_name_examples():
    assert snapshot_of("t1", Kind.QUADS_RESTRICTED) == (1, 0, 0, 1)
    assert name_of((0, 0, 1, 1)) == "F1"
    assert snapshot_of("b", Kind.PAIRS) == (1, 1)
    assert name_of((1, 1, 0)) == "T"


@pytest.mark.parametrize("kind", list(Kind))
def test_names_are_a_bijection(kind):
    d = domain(kind)
    for name, z in zip(d.names, d.values):
        assert snapshot_of(name, kind) == z
        assert name_of(z) == name


def test_bad_names_and_tuples():
    with pytest.raises(ValueError):
        snapshot_of("T1", Kind.QUADS_RESTRICTED)
    with pytest.raises(ValueError):
        snapshot_of("x", Kind.TRIPLES)
    with pytest.raises(ValueError):
        name_of((1, 1, 1))


def test_designation_split():
    d = domain(Kind.QUADS_RESTRICTED)
    assert {n for n, z in zip(d.names, d.values) if is_designated(z)} == {"T0", "t0", "t1"}


def test_boolean_laws():
    for a, b in product((0, 1), repeat=2):
        assert implies(a, b) == join(complement(a), b)
        assert complement(meet(a, b)) == join(complement(a), complement(b))
        assert complement(join(a, b)) == meet(complement(a), complement(b))
