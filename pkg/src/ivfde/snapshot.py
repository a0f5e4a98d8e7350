"""Two-valued Boolean operations and the snapshot domains built from them.

A snapshot is a tuple of bits.  Each logic uses one domain of snapshots:

* pairs (value of a formula and of its paraconsistent negation),
* triples (value of a formula, of its necessity, and of the necessity of
  its classical negation),
* quadruples combining both, either with all four membership constraints
  (six values) or with only the constraints inherited from the triples
  (eight values).

Domains are listed in a canonical order: designated values first, then the
conventional listing order of the names.  Sets of values are bitmasks over
that order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Tuple

Snapshot = Tuple[int, ...]

__all__ = [
    "Snapshot", "Kind", "Domain", "meet", "join", "implies", "complement",
    "enumerate_domain", "domain", "name_of", "snapshot_of", "is_designated",
]


def meet(a: int, b: int) -> int:
    return a & b


def join(a: int, b: int) -> int:
    return a | b


def implies(a: int, b: int) -> int:
    return (1 - a) | b


def complement(a: int) -> int:
    return 1 - a


class Kind(enum.Enum):
    PAIRS = "pairs"
    TRIPLES = "triples"
    QUADS_RESTRICTED = "quads_restricted"
    QUADS_UNRESTRICTED = "quads_unrestricted"


# name -> bits, in the conventional listing order of each family
_LISTING: Dict[Kind, List[Tuple[str, Snapshot]]] = {
    Kind.PAIRS: [("1", (1, 0)), ("b", (1, 1)), ("n", (0, 0)), ("0", (0, 1))],
    Kind.TRIPLES: [("T", (1, 1, 0)), ("t", (1, 0, 0)), ("f", (0, 0, 0)), ("F", (0, 0, 1))],
    Kind.QUADS_RESTRICTED: [
        ("T0", (1, 1, 0, 0)), ("t0", (1, 0, 0, 0)), ("t1", (1, 0, 0, 1)),
        ("f0", (0, 0, 0, 0)), ("f1", (0, 0, 0, 1)), ("F1", (0, 0, 1, 1)),
    ],
    # The two extra values are named by analogy: T1 is T0 with the
    # paraconsistent-negation bit set, F0 is F1 with it cleared.
    Kind.QUADS_UNRESTRICTED: [
        ("T0", (1, 1, 0, 0)), ("T1", (1, 1, 0, 1)), ("t0", (1, 0, 0, 0)),
        ("t1", (1, 0, 0, 1)), ("f0", (0, 0, 0, 0)), ("f1", (0, 0, 0, 1)),
        ("F0", (0, 0, 1, 0)), ("F1", (0, 0, 1, 1)),
    ],
}

_WIDTH = {Kind.PAIRS: 2, Kind.TRIPLES: 3, Kind.QUADS_RESTRICTED: 4, Kind.QUADS_UNRESTRICTED: 4}


def _admissible(kind: Kind, z: Snapshot) -> bool:
    if kind is Kind.PAIRS:
        return True
    z1, z2, z3 = z[0], z[1], z[2]
    # necessity implies truth, and truth excludes necessity of the negation
    ok = z2 <= z1 and meet(z1, z3) == 0
    if kind is Kind.QUADS_RESTRICTED:
        z4 = z[3]
        ok = ok and meet(z2, z4) == 0 and z3 <= z4
    return ok


def enumerate_domain(kind: Kind) -> List[Snapshot]:
    """All constraint-satisfying bit tuples of the given kind, canonically ordered."""
    members = {z for z in product((0, 1), repeat=_WIDTH[kind]) if _admissible(kind, z)}
    listed = [bits for _, bits in _LISTING[kind]]
    if set(listed) != members:
        raise AssertionError(f"name table for {kind.value} disagrees with its constraints")
    return sorted(members, key=lambda z: (-z[0], listed.index(z)))


@dataclass(frozen=True)
class Domain:
    """A snapshot domain with names, designation and bitmask helpers."""

    kind: Kind
    values: Tuple[Snapshot, ...]
    names: Tuple[str, ...]
    index: Dict[str, int] = field(compare=False, hash=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.values)) - 1

    @property
    def designated_mask(self) -> int:
        return sum(1 << i for i, z in enumerate(self.values) if z[0] == 1)

    def mask_of(self, names: Iterable[str]) -> int:
        return sum(1 << self.index[n] for n in names)

    def names_of(self, mask: int) -> List[str]:
        return [n for i, n in enumerate(self.names) if mask >> i & 1]

    def position(self, z: Snapshot) -> int:
        return self.values.index(tuple(z))


@lru_cache(maxsize=None)
def domain(kind: Kind) -> Domain:
    values = tuple(enumerate_domain(kind))
    by_bits = {bits: name for name, bits in _LISTING[kind]}
    names = tuple(by_bits[z] for z in values)
    return Domain(kind, values, names, {n: i for i, n in enumerate(names)})


def name_of(z: Snapshot) -> str:
    """Canonical name of a snapshot.  Quadruples are looked up in the eight-valued table."""
    z = tuple(z)
    kind = {2: Kind.PAIRS, 3: Kind.TRIPLES, 4: Kind.QUADS_UNRESTRICTED}.get(len(z))
    if kind is not None:
        for name, bits in _LISTING[kind]:
            if bits == z:
                return name
    raise ValueError(f"{z!r} is not a snapshot of any domain")


def snapshot_of(name: str, kind: Kind) -> Snapshot:
    for n, bits in _LISTING[kind]:
        if n == name:
            return bits
    raise ValueError(f"unknown snapshot name {name!r} for {kind.value}")


def is_designated(z: Snapshot) -> bool:
    return z[0] == 1
