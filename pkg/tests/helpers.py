"""Oracles and random generators shared by the test modules.

Everything here is deliberately naive: it enumerates instead of propagating,
so it can serve as an independent check of the library's search code.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

import numpy as np

from qstbox.allen import AllenAtom, Partition, partition_role
from qstbox.domains import registry_lookup
from qstbox.intervals import interval
from qstbox.qualnet import QualNetwork
from qstbox.stp import EndpointVar, StpNetwork, closure
from qstbox.tbox import (
    And, Axiom, ExistsRole, NegPrimitive, Or, PredicateConcept, Primitive, TBox, to_dnf,
)
from qstbox.allen import translate_atom

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"


# -- geometry -------------------------------------------------------------

def disc_relation(a, b) -> str:
    """RCC8 relation between closed discs ``(x, y, r)`` with integer data."""
    (ax, ay, ar), (bx, by, br) = a, b
    d2 = (ax - bx) ** 2 + (ay - by) ** 2
    if d2 == 0 and ar == br:
        return "EQ"
    outer = (ar + br) ** 2
    if d2 > outer:
        return "DC"
    if d2 == outer:
        return "EC"
    inner = (br - ar) ** 2
    if br > ar and d2 <= inner:
        return "NTPP" if d2 < inner else "TPP"
    if ar > br and d2 <= inner:
        return "NTPPi" if d2 < inner else "TPPi"
    return "PO"


def disc_composition():
    discs = [(x, y, r) for x in range(-3, 4) for y in range(0, 4) for r in range(1, 5)]
    rel = {(a, b): disc_relation(a, b) for a in discs for b in discs}
    out = {}
    for a in discs:
        for b in discs:
            r1 = rel[(a, b)]
            for c in discs:
                out.setdefault((r1, rel[(b, c)]), set()).add(rel[(a, c)])
    return out


# -- STP --------------------------------------------------------------------

def random_convex_around(rng: random.Random, x: Fraction):
    """A random convex set containing ``x`` (sometimes exactly tight)."""
    kind = rng.random()
    if kind < 0.15:
        return interval(x, x)
    lo = x - rng.choice([0, Fraction(rng.randint(1, 8), rng.randint(1, 3))])
    hi = x + rng.choice([0, Fraction(rng.randint(1, 8), rng.randint(1, 3))])
    lo_strict = lo != x and rng.random() < 0.5
    hi_strict = hi != x and rng.random() < 0.5
    if rng.random() < 0.2:
        lo, lo_strict = float("-inf"), True
    if rng.random() < 0.2:
        hi, hi_strict = float("inf"), True
    return interval(lo, hi, lo_strict, hi_strict)


def planted_network(rng: random.Random, n_intervals: int):
    """A network with a known rational solution and random constraints around it."""
    net = StpNetwork()
    values = {}
    for k in range(n_intervals):
        name = f"I{k}"
        net.add_interval(name)
        b = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        e = b + Fraction(rng.randint(1, 12), rng.randint(1, 4))
        values[EndpointVar(name, "b")] = b
        values[EndpointVar(name, "e")] = e
    vs = list(values)
    for _ in range(rng.randint(0, 3 * len(vs))):
        u, v = rng.sample(vs, 2)
        net.constrain(u, v, random_convex_around(rng, values[v] - values[u]))
    return net, values


# -- qualitative networks ---------------------------------------------------

def random_rcc8_atomic(rng: random.Random, n: int, planted_discs: bool) -> QualNetwork:
    atoms = registry_lookup("rcc8").atoms
    net = QualNetwork(2, range(n))
    if planted_discs:
        discs = [(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if planted_discs:
            net.add((i, j), {disc_relation(discs[i], discs[j])})
        else:
            net.add((i, j), {rng.choice(atoms)})
    return net


def random_cyct_network(rng: random.Random, n: int):
    """Random ternary network; half planted on a grid placement."""
    from qstbox.cyct import ATOMS, cyct_of

    net = QualNetwork(3, range(n))
    planted = rng.random() < 0.5
    angles = [Fraction(rng.randint(0, 7), 8) for _ in range(n)]
    for _ in range(rng.randint(1, 4)):
        args = tuple(rng.sample(range(n), 3)) if n >= 3 else tuple(rng.choice(range(n)) for _ in range(3))
        rel = set(rng.sample(ATOMS, rng.randint(1, 3)))
        if planted:
            rel.add(cyct_of(*(angles[a] for a in args)))
        net.add(args, rel)
    return net


def sampling_sat(net: QualNetwork, rng, samples: int) -> bool:
    """Look for a model of a CYC_t network among random angle assignments."""
    vs = list(net.variables)
    n = len(vs)
    # continuous angles plus a share of grid angles so e and o are reachable
    cont = rng.random((samples, n))
    grid = rng.integers(0, 8, (samples, n)) / 8
    use_grid = rng.random((samples, n)) < 0.5
    angles = np.where(use_grid, grid, cont)
    ok = np.ones(samples, dtype=bool)
    idx = {v: k for k, v in enumerate(vs)}
    for args, rel in net:
        a = [angles[:, idx[v]] for v in args]
        codes = [_binary_codes(a[0], a[1]), _binary_codes(a[1], a[2]), _binary_codes(a[0], a[2])]
        member = np.zeros(samples, dtype=bool)
        for atom in rel:
            m = np.ones(samples, dtype=bool)
            for code, ch in zip(codes, atom):
                m &= code == "elor".index(ch)
            member |= m
        ok &= member
    return bool(ok.any())


def _binary_codes(x, y):
    d = np.mod(y - x, 1.0)
    d = np.where(np.isclose(d, 1.0), 0.0, d)
    return np.select([np.isclose(d, 0.0), d < 0.5 - 1e-12, np.isclose(d, 0.5)], [0, 1, 2], 3)


# -- TBoxes -----------------------------------------------------------------

_REL8 = ("DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ")
ALLEN = list(AllenAtom)


def random_tbox(rng: random.Random, max_concepts: int = 4, max_disjuncts: int = 2,
                features=("g1", "g2", "g3"), primitives=("p", "q"),
                role_counts=(0, 1, 1, 2)) -> TBox:
    n = rng.randint(1, max_concepts)
    names = [f"C{k + 1}" for k in range(n)]
    axioms = []
    for name in names:
        disjuncts = []
        for _ in range(rng.randint(1, max_disjuncts)):
            leaves = []
            for p in primitives:
                r = rng.random()
                if r < 0.25:
                    leaves.append(Primitive(p))
                elif r < 0.45:
                    leaves.append(NegPrimitive(p))
            for _ in range(rng.choice([0, 1, 1, 2])):
                g1, g2 = rng.sample(features, 2)
                atoms = rng.sample(_REL8, rng.choice([1, 1, 2, 3]))
                leaves.append(PredicateConcept((g1, g2), frozenset(atoms)))
            for _ in range(rng.choice(role_counts)):
                if len(names) > 1 or rng.random() < 0.3:
                    atom = rng.choice(ALLEN)
                    leaves.append(ExistsRole(translate_atom(atom), rng.choice(names), atom))
            if not leaves:
                leaves.append(Primitive(rng.choice(primitives)))
            disjuncts.append(leaves[0] if len(leaves) == 1 else And(tuple(leaves)))
        rhs = disjuncts[0] if len(disjuncts) == 1 else Or(tuple(disjuncts))
        axioms.append(Axiom(name, rhs))
    return TBox("rcc8", tuple(axioms))


def _literal_clash(lits) -> bool:
    return any(("not " + l) in lits for l in lits if not l.startswith("not "))


def brute_force_sat(t: TBox) -> bool:
    """Enumerate every disjunct choice and every partition assignment.

    A partition assignment fixes, for each pair of intervals, whether they
    overlap; the assigned roles make the STP decide realisability, and the
    overlap set then determines the propositional and spatial obligations.
    """
    dom = registry_lookup(t.domain)
    names = [ax.lhs for ax in t.axioms]
    dnfs = [to_dnf(ax.rhs) for ax in t.axioms]
    pairs = list(itertools.combinations(names, 2))
    for choice in itertools.product(*(range(len(d)) for d in dnfs)):
        base = StpNetwork()
        for c in names:
            base.add_interval(c)
        lits, spatial = {}, {}
        for c, d, k in zip(names, dnfs, choice):
            lits[c] = set()
            spatial[c] = []
            for leaf in d[k]:
                if isinstance(leaf, ExistsRole):
                    base.add_role(c, leaf.target, leaf.role)
                elif isinstance(leaf, Primitive):
                    lits[c].add(leaf.name)
                elif isinstance(leaf, NegPrimitive):
                    lits[c].add("not " + leaf.name)
                else:
                    spatial[c].append(leaf)
        ok, base_min = closure(base)
        if not ok:
            continue
        if any(_literal_clash(lits[c]) for c in names):
            continue
        cache = {}
        if _enumerate_partitions(base_min, pairs, 0, {}, names, lits, spatial, dom, cache):
            return True
    return False


def _enumerate_partitions(net, pairs, k, assign, names, lits, spatial, dom, cache) -> bool:
    # obligations only grow with the overlap set, so a failing prefix is final
    overlapping = frozenset(pq for pq, p in assign.items() if p is Partition.INTERSECTS)
    if overlapping not in cache:
        cache[overlapping] = _obligations_hold(overlapping, names, lits, spatial, dom)
    if not cache[overlapping]:
        return False
    if k == len(pairs):
        return True
    a, b = pairs[k]
    for p in Partition:
        trial = net.copy().add_role(a, b, partition_role(p))
        ok, closed = closure(trial)
        if ok and _enumerate_partitions(closed, pairs, k + 1, {**assign, (a, b): p},
                                        names, lits, spatial, dom, cache):
            return True
    return False


def _obligations_hold(overlapping, names, lits, spatial, dom) -> bool:
    for a, b in overlapping:
        if _literal_clash(lits[a] | lits[b]):
            return False
    # one value per (interval, feature); overlapping intervals share values
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    used = {c: {g for leaf in spatial[c] for g in leaf.features} for c in names}
    for a, b in overlapping:
        for g in used[a] & used[b]:
            parent[find((a, g))] = find((b, g))
    net = QualNetwork(dom.arity)
    for c in names:
        for leaf in spatial[c]:
            net.add(tuple(find((c, g)) for g in leaf.features), leaf.predicate)
    return dom.solve(net) is not None
