"""Allen's thirteen interval atoms and their endpoint-difference encoding.

An :class:`EndpointRole` constrains the four differences between the
endpoints of two intervals ``I`` and ``J``::

    rbb: J_b - I_b    rbe: J_e - I_b    reb: J_b - I_e    ree: J_e - I_e

Each atom translates to a role whose components are ``{0}``, the positive
half-line or the negative half-line.  The translation is derived here from
the endpoint orderings rather than hard-coded; :data:`PUBLISHED_TABLE` keeps
the literature table for comparison (see ``ERRATA.md``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Tuple

from .intervals import (
    NEGATIVE,
    NON_NEGATIVE,
    NON_POSITIVE,
    POSITIVE,
    REALS,
    ZERO,
    ConvexSet,
    format_convex,
    intersect,
    negate,
)


class AllenAtom(str, enum.Enum):
    BEFORE = "<"
    MEETS = "m"
    OVERLAPS = "o"
    STARTS = "s"
    DURING = "d"
    FINISHES = "f"
    AFTER = ">"
    MET_BY = "mi"
    OVERLAPPED_BY = "oi"
    STARTED_BY = "si"
    CONTAINS = "di"
    FINISHED_BY = "fi"
    EQUALS = "eq"

    def __str__(self) -> str:
        return self.value

    @property
    def long_name(self) -> str:
        return self.name.lower().replace("_", "-")

    @property
    def converse(self) -> "AllenAtom":
        return _CONVERSE[self]


_CONVERSE = {
    AllenAtom.BEFORE: AllenAtom.AFTER,
    AllenAtom.MEETS: AllenAtom.MET_BY,
    AllenAtom.OVERLAPS: AllenAtom.OVERLAPPED_BY,
    AllenAtom.STARTS: AllenAtom.STARTED_BY,
    AllenAtom.DURING: AllenAtom.CONTAINS,
    AllenAtom.FINISHES: AllenAtom.FINISHED_BY,
    AllenAtom.EQUALS: AllenAtom.EQUALS,
}
_CONVERSE.update({v: k for k, v in list(_CONVERSE.items())})

ALLEN_NAMES: Dict[str, AllenAtom] = {}
for _a in AllenAtom:
    ALLEN_NAMES[_a.value] = _a
    ALLEN_NAMES[_a.long_name] = _a


def allen_atom(name: str) -> AllenAtom:
    try:
        return ALLEN_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown Allen atom {name!r}") from None


class Partition(str, enum.Enum):
    PRECEDES = "PRECEDES"
    INTERSECTS = "INTERSECTS"
    FOLLOWS = "FOLLOWS"

    def __str__(self) -> str:
        return self.value


PARTITION_ORDER = (Partition.PRECEDES, Partition.INTERSECTS, Partition.FOLLOWS)

PARTITION_ATOMS: Mapping[Partition, frozenset] = {
    Partition.PRECEDES: frozenset({AllenAtom.BEFORE, AllenAtom.MEETS}),
    Partition.INTERSECTS: frozenset({
        AllenAtom.OVERLAPS, AllenAtom.OVERLAPPED_BY, AllenAtom.STARTS,
        AllenAtom.STARTED_BY, AllenAtom.DURING, AllenAtom.CONTAINS,
        AllenAtom.FINISHES, AllenAtom.FINISHED_BY, AllenAtom.EQUALS,
    }),
    Partition.FOLLOWS: frozenset({AllenAtom.MET_BY, AllenAtom.AFTER}),
}

# atoms under which the first interval is a subinterval of the second
SUBINTERVAL_ATOMS = frozenset({AllenAtom.STARTS, AllenAtom.EQUALS, AllenAtom.DURING, AllenAtom.FINISHES})


@dataclass(frozen=True)
class EndpointRole:
    rbb: ConvexSet = REALS
    rbe: ConvexSet = REALS
    reb: ConvexSet = REALS
    ree: ConvexSet = REALS

    def components(self) -> Tuple[ConvexSet, ConvexSet, ConvexSet, ConvexSet]:
        return (self.rbb, self.rbe, self.reb, self.ree)

    def items(self) -> Iterator[Tuple[str, str, ConvexSet]]:
        """Yield ``(x, y, R^xy)`` meaning ``J_y - I_x in R^xy``."""
        yield "b", "b", self.rbb
        yield "b", "e", self.rbe
        yield "e", "b", self.reb
        yield "e", "e", self.ree

    @property
    def usable(self) -> bool:
        return not any(c.is_empty for c in self.components())

    def converse(self) -> "EndpointRole":
        """The role seen from the other interval: swap mixed slots, negate all."""
        return EndpointRole(negate(self.rbb), negate(self.reb), negate(self.rbe), negate(self.ree))

    def __and__(self, other: "EndpointRole") -> "EndpointRole":
        return EndpointRole(*(intersect(a, b) for a, b in zip(self.components(), other.components())))

    def holds(self, i: Tuple, j: Tuple) -> bool:
        """Check the role numerically on intervals ``i=(ib, ie)``, ``j=(jb, je)``."""
        ib, ie = i
        jb, je = j
        return (jb - ib in self.rbb and je - ib in self.rbe
                and jb - ie in self.reb and je - ie in self.ree)

    def __str__(self) -> str:
        return "<" + ",".join(format_convex(c) for c in self.components()) + ">"


#: the interval well-formedness role on (I, I): I_b < I_e
WELL_FORMED = EndpointRole(ZERO, POSITIVE, NEGATIVE, ZERO)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _classify_config(ib, ie, jb, je) -> AllenAtom:
    """Name the Allen atom holding between I and J from raw endpoint order."""
    if ie < jb:
        return AllenAtom.BEFORE
    if ie == jb:
        return AllenAtom.MEETS
    if je < ib:
        return AllenAtom.AFTER
    if je == ib:
        return AllenAtom.MET_BY
    if ib == jb and ie == je:
        return AllenAtom.EQUALS
    if ib == jb:
        return AllenAtom.STARTS if ie < je else AllenAtom.STARTED_BY
    if ie == je:
        return AllenAtom.FINISHES if ib > jb else AllenAtom.FINISHED_BY
    if jb < ib and ie < je:
        return AllenAtom.DURING
    if ib < jb and je < ie:
        return AllenAtom.CONTAINS
    return AllenAtom.OVERLAPS if ib < jb else AllenAtom.OVERLAPPED_BY


def classify_intervals(i: Tuple, j: Tuple) -> AllenAtom:
    ib, ie = i
    jb, je = j
    if not (ib < ie and jb < je):
        raise ValueError("intervals must be durative")
    return _classify_config(ib, ie, jb, je)


def endpoint_configurations(points: int = 4) -> Iterator[Tuple[int, int, int, int]]:
    """All orderings of I_b < I_e, J_b < J_e drawn from ``range(points)``."""
    for ib, ie, jb, je in itertools.product(range(points), repeat=4):
        if ib < ie and jb < je:
            yield ib, ie, jb, je


def _derive_semantics() -> Dict[AllenAtom, Tuple[int, int, int, int]]:
    found: Dict[AllenAtom, set] = {a: set() for a in AllenAtom}
    for ib, ie, jb, je in endpoint_configurations():
        atom = _classify_config(ib, ie, jb, je)
        found[atom].add((_sign(jb - ib), _sign(je - ib), _sign(jb - ie), _sign(je - ie)))
    out = {}
    for atom, signs in found.items():
        if len(signs) != 1:
            raise AssertionError(f"atom {atom} has ambiguous endpoint signs {signs}")
        out[atom] = signs.pop()
    return out


_SEMANTICS = _derive_semantics()
_SIGN_SET = {1: POSITIVE, 0: ZERO, -1: NEGATIVE}


def atom_endpoint_semantics(atom: AllenAtom) -> Tuple[int, int, int, int]:
    """Signs (-1, 0, +1) of J_b-I_b, J_e-I_b, J_b-I_e, J_e-I_e under ``atom``."""
    return _SEMANTICS[AllenAtom(atom)]


TRANSLATION: Mapping[AllenAtom, EndpointRole] = {
    atom: EndpointRole(*(_SIGN_SET[s] for s in signs)) for atom, signs in _SEMANTICS.items()
}


def translate_atom(atom: AllenAtom) -> EndpointRole:
    return TRANSLATION[AllenAtom(atom)]


def partition_of(atom: AllenAtom) -> Partition:
    atom = AllenAtom(atom)
    for p in PARTITION_ORDER:
        if atom in PARTITION_ATOMS[p]:
            return p
    raise AssertionError(atom)


_PARTITION_ROLES = {
    Partition.PRECEDES: EndpointRole(reb=NON_NEGATIVE),
    Partition.INTERSECTS: EndpointRole(rbe=POSITIVE, reb=NEGATIVE),
    Partition.FOLLOWS: EndpointRole(rbe=NON_POSITIVE),
}


def partition_role(p: Partition) -> EndpointRole:
    return _PARTITION_ROLES[Partition(p)]


def classify_partition(i: Tuple, j: Tuple) -> Partition:
    return partition_of(classify_intervals(i, j))


# Translation table as printed in the source literature, slot symbols
# '+' = R+, '-' = R-, '0' = {0}.
PUBLISHED_TABLE: Mapping[AllenAtom, str] = {
    AllenAtom.BEFORE: "++++",
    AllenAtom.MEETS: "++0+",
    AllenAtom.OVERLAPS: "++-+",
    AllenAtom.STARTS: "0+-+",
    AllenAtom.DURING: "-+-+",
    AllenAtom.FINISHES: "-+-0",
    AllenAtom.AFTER: "----",
    AllenAtom.MET_BY: "-0--",
    AllenAtom.OVERLAPPED_BY: "-+-+",
    AllenAtom.STARTED_BY: "0+--",
    AllenAtom.CONTAINS: "++--",
    AllenAtom.FINISHED_BY: "++-0",
    AllenAtom.EQUALS: "0++0",
}

_SYMBOL = {1: "+", 0: "0", -1: "-"}


def derived_symbols(atom: AllenAtom) -> str:
    return "".join(_SYMBOL[s] for s in atom_endpoint_semantics(atom))


def errata() -> List[Tuple[AllenAtom, str, str]]:
    """Atoms whose published translation disagrees with the derivation."""
    return [(a, PUBLISHED_TABLE[a], derived_symbols(a))
            for a in AllenAtom if PUBLISHED_TABLE[a] != derived_symbols(a)]
