"""Ternary cyclic ordering of 2D orientations (CYC_t).

Orientations are angles measured in *turns* (``Fraction`` in ``[0, 1)``; half a
turn is pi radians), which keeps every qualitative comparison exact.

Binary atoms relate ``y`` to ``x`` by the anticlockwise angle from ``x`` to
``y``: ``e`` (0), ``l`` (strictly between 0 and 1/2), ``o`` (1/2) and ``r``
(strictly between 1/2 and 1).  A ternary atom ``b1b2b3`` holds on ``(x, y, z)``
when ``b1(y, x)``, ``b2(z, y)`` and ``b3(z, x)`` hold.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterator, List, Optional, Tuple

from .qualnet import QualNetwork

CYCB_ATOMS = ("e", "l", "o", "r")
HALF = Fraction(1, 2)


def _turn(x) -> Fraction:
    return Fraction(x) % 1


def cycb_of(x, y) -> str:
    """The binary atom ``b`` with ``b(y, x)``."""
    d = _turn(Fraction(y) - Fraction(x))
    if d == 0:
        return "e"
    if d < HALF:
        return "l"
    if d == HALF:
        return "o"
    return "r"


def cycb_holds(atom: str, x, y) -> bool:
    """``atom(y, x)``: test the anticlockwise angle from ``x`` to ``y``."""
    if atom not in CYCB_ATOMS:
        raise ValueError(f"unknown CYC_b atom {atom!r}")
    return cycb_of(x, y) == atom


def cyct_of(x, y, z) -> str:
    return cycb_of(x, y) + cycb_of(y, z) + cycb_of(x, z)


def cyct_holds(atom: str, x, y, z) -> bool:
    if len(atom) != 3 or any(c not in CYCB_ATOMS for c in atom):
        raise ValueError(f"malformed CYC_t atom {atom!r}")
    b1, b2, b3 = atom
    return cycb_holds(b1, x, y) and cycb_holds(b2, y, z) and cycb_holds(b3, x, z)


def _placements(points: List[Fraction]) -> Iterator[Fraction]:
    """Qualitatively distinct positions relative to ``points`` and their
    antipodes: each critical point, then the midpoint of each open arc."""
    if not points:
        yield Fraction(0)
        return
    crit = sorted({_turn(p) for p in points} | {_turn(p + HALF) for p in points})
    yield from crit
    for a, b in zip(crit, crit[1:] + [crit[0] + 1]):
        yield _turn((a + b) / 2)


def realizable_atoms() -> FrozenSet[str]:
    found = set()
    for y in _placements([Fraction(0)]):
        for z in _placements([Fraction(0), y]):
            found.add(cyct_of(0, y, z))
    return frozenset(found)


ATOMS: Tuple[str, ...] = tuple(sorted(realizable_atoms(), key=lambda t: [CYCB_ATOMS.index(c) for c in t]))
UNIVERSAL: FrozenSet[str] = frozenset(ATOMS)


def is_atom(name: str) -> bool:
    return name in UNIVERSAL


def check_relation(r) -> FrozenSet[str]:
    r = frozenset(r)
    bad = r - UNIVERSAL
    if bad:
        raise ValueError(f"unknown CYC_t atom(s): {', '.join(sorted(bad))}")
    return r


def consistent(net: QualNetwork) -> Tuple[bool, Optional[Dict[Hashable, Fraction]]]:
    """Decide a ternary network by qualitative placement on the circle.

    Returns ``(sat, placement)`` where ``placement`` maps each variable to an
    angle in turns.
    """
    if net.arity != 3:
        raise ValueError("CYC_t networks are ternary")
    if any(not r for _, r in net):
        return False, None
    order = list(net.variables)
    pos = {v: i for i, v in enumerate(order)}
    # constraints become checkable once their last variable is placed
    ready: List[List[Tuple[Tuple, FrozenSet[str]]]] = [[] for _ in order]
    for args, rel in net:
        ready[max(pos[v] for v in args)].append((args, rel))

    placed: Dict[Hashable, Fraction] = {}

    def place(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for angle in _placements(list(placed.values())):
            placed[v] = angle
            if all(cyct_of(*(placed[a] for a in args)) in rel for args, rel in ready[k]):
                if place(k + 1):
                    return True
            del placed[v]
        return False

    if place(0):
        return True, dict(placed)
    return False, None


def scenario_from_placement(net: QualNetwork, placement: Dict[Hashable, Fraction]) -> QualNetwork:
    """Atomic network recording the atom realised on every constrained triple."""
    out = QualNetwork(3, net.variables)
    for args, _ in net:
        out.constraints[args] = frozenset({cyct_of(*(placement[a] for a in args))})
    return out


def placement_satisfies(net: QualNetwork, placement: Dict[Hashable, Fraction]) -> bool:
    for args, rel in net:
        if any(a not in placement for a in args):
            return False
        if not any(cyct_holds(t, *(placement[a] for a in args)) for t in rel):
            return False
    return True


def all_triples() -> Iterator[str]:
    return ("".join(t) for t in itertools.product(CYCB_ATOMS, repeat=3))
