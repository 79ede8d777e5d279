"""Satisfiability of spatio-temporal TBoxes.

Each defined concept denotes one interval.  For a choice of one DNF disjunct
per axiom the reasoner

1. builds the endpoint STP from the chosen roles and closes it,
2. finds the pairs of intervals that must (or may) overlap,
3. makes overlapping intervals agree: literals must not clash, and a concrete
   feature used by both intervals names one spatial value,
4. checks the merged spatial network in the active concrete domain.

Pairs that may overlap but need not are branched on lazily: only when the
extracted schedule makes them overlap and that overlap causes a clash.
Adding overlaps only adds constraints, so a clash under the forced overlaps
closes the branch for good.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .allen import PARTITION_ORDER, Partition, classify_partition, partition_role
from .domains import ConcreteDomain, registry_lookup
from .intervals import NON_NEGATIVE, NON_POSITIVE, subset_of
from .qualnet import QualNetwork
from .stp import EndpointVar, StpNetwork, classify_pair, closure, extract_solution
from .tbox import ExistsRole, NegPrimitive, PredicateConcept, Primitive, TBox, normalize
from .witness import Witness, neg

log = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass
class IntervalState:
    concept: str
    literals: Set[str] = field(default_factory=set)
    spatial: List[Tuple[Tuple[str, ...], FrozenSet[str]]] = field(default_factory=list)

    @property
    def features(self) -> List[str]:
        seen = []
        for feats, _ in self.spatial:
            for g in feats:
                if g not in seen:
                    seen.append(g)
        return seen


@dataclass
class Conflict:
    stage: str  # "temporal", "propositional" or "spatial"
    concepts: Tuple[str, ...]
    detail: Tuple[str, ...] = ()

    def __str__(self) -> str:
        who = "/".join(self.concepts)
        if self.stage == "spatial":
            on = f" on ({','.join(self.detail)})" if self.detail else ""
            return f"spatial conflict {who}{on}"
        if self.stage == "propositional":
            on = f" on {', '.join(self.detail)}" if self.detail else ""
            return f"propositional conflict {who}{on}"
        if self.stage == "temporal":
            on = f" at {', '.join(self.detail)}" if self.detail else ""
            return f"temporal conflict {who}{on}"
        return f"{self.stage} conflict {who}"


@dataclass
class Verdict:
    sat: bool
    witness: Optional[Witness] = None
    conflict: Optional[Conflict] = None
    branches: int = 0


@dataclass
class SpatialVarClass:
    representative: Tuple[str, str]
    members: List[Tuple[str, str]]

    @property
    def name(self) -> str:
        return f"{self.representative[0]}.{self.representative[1]}"


# -- building blocks ------------------------------------------------------

def _ordered(a: str, b: str, order: Dict[str, int]) -> Pair:
    return (a, b) if order[a] <= order[b] else (b, a)


def build_temporal_csp(t: TBox, choice: Sequence[int]) -> StpNetwork:
    """One interval per defined concept plus the roles of the chosen disjuncts."""
    net = StpNetwork()
    norm = normalize(t)
    for ax in norm:
        net.add_interval(ax.lhs)
    for ax, k in zip(norm, choice):
        for leaf in ax.disjuncts[k]:
            if isinstance(leaf, ExistsRole):
                net.add_role(ax.lhs, leaf.target, leaf.role)
    return net


def intersects_graph(minimal: StpNetwork) -> Tuple[Set[Pair], Set[Pair]]:
    """``(forced, possible)`` INTERSECTS pairs of a consistent minimal network."""
    forced, possible = set(), set()
    for a, b in itertools.combinations(minimal.intervals, 2):
        allowed = classify_pair(minimal, a, b)
        if allowed == {Partition.INTERSECTS}:
            forced.add((a, b))
        elif Partition.INTERSECTS in allowed:
            possible.add((a, b))
    return forced, possible


def entailed_subintervals(minimal: StpNetwork) -> Set[Pair]:
    """Pairs ``(i, j)`` where every solution puts i inside j (s, eq, d, f)."""
    out = set()
    for a, b in itertools.permutations(minimal.intervals, 2):
        role = minimal.role_between(a, b)
        if subset_of(role.rbb, NON_POSITIVE) and subset_of(role.ree, NON_NEGATIVE):
            out.add((a, b))
    return out


def interval_states(t: TBox, choice: Sequence[int]) -> Dict[str, IntervalState]:
    states = {}
    for ax, k in zip(normalize(t), choice):
        st = IntervalState(ax.lhs)
        for leaf in ax.disjuncts[k]:
            if isinstance(leaf, Primitive):
                st.literals.add(leaf.name)
            elif isinstance(leaf, NegPrimitive):
                st.literals.add(f"not {leaf.name}")
            elif isinstance(leaf, PredicateConcept):
                st.spatial.append((leaf.features, leaf.predicate))
        states[ax.lhs] = st
    return states


class _UnionFind:
    def __init__(self):
        self.parent: Dict[Hashable, Hashable] = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b, rank: Dict[Hashable, int]):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # the earlier member stays representative
        if rank[rb] < rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def propagate_homogeneity(
    states: Dict[str, IntervalState],
    intersecting: Iterable[Pair],
    subintervals: Iterable[Pair],
) -> Tuple[Dict[str, Set[str]], List[SpatialVarClass], Dict[Tuple[str, str], str]]:
    """Inherit literals into subintervals and merge feature values.

    Returns the augmented literal sets, the feature-value classes and the map
    ``(concept, feature) -> class name``.
    """
    literals = {c: set(st.literals) for c, st in states.items()}
    for sub, sup in subintervals:
        literals[sub] |= states[sup].literals

    order = list(states)
    rank = {}
    uf = _UnionFind()
    for ci, c in enumerate(order):
        for gi, g in enumerate(states[c].features):
            uf.add((c, g))
            rank[(c, g)] = (ci, gi)
    for a, b in intersecting:
        for g in set(states[a].features) & set(states[b].features):
            uf.union((a, g), (b, g), rank)
    groups: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}
    for member in sorted(uf.parent, key=rank.__getitem__):
        groups.setdefault(uf.find(member), []).append(member)
    classes = [SpatialVarClass(members[0], members) for members in groups.values()]
    names = {}
    for cls in classes:
        for m in cls.members:
            names[m] = cls.name
    return literals, classes, names


def _clashing(lits: Iterable[str]) -> List[str]:
    lits = set(lits)
    return sorted(l for l in lits if not l.startswith("not ") and neg(l) in lits)


def _propositional(literals: Dict[str, Set[str]], pairs: Sequence[Pair]) -> Optional[Conflict]:
    for c, lits in literals.items():
        bad = _clashing(lits)
        if bad:
            return Conflict("propositional", (c,), tuple(bad))
    for a, b in pairs:
        bad = _clashing(literals[a] | literals[b])
        if bad:
            return Conflict("propositional", (a, b), tuple(bad))
    return None


def _local_network(dom: ConcreteDomain, parts) -> QualNetwork:
    net = QualNetwork(dom.arity)
    for args, rel in parts:
        net.add(args, rel)
    return net


def _pairwise_spatial(dom: ConcreteDomain, states, pairs: Sequence[Pair]) -> Optional[Conflict]:
    """Cheap filter: each interval alone, then each overlapping pair alone."""
    for c, st in states.items():
        net = _local_network(dom, st.spatial)
        if dom.solve(net) is None:
            return Conflict("spatial", (c,), _empty_tuple(net) or tuple(st.features))
    for a, b in pairs:
        shared = set(states[a].features) & set(states[b].features)
        if not shared:
            continue

        def rename(c, feats):
            return tuple(g if g in shared else f"{c}.{g}" for g in feats)

        parts = [(rename(a, f), r) for f, r in states[a].spatial]
        parts += [(rename(b, f), r) for f, r in states[b].spatial]
        net = _local_network(dom, parts)
        if dom.solve(net) is None:
            culprit = _empty_tuple(net)
            return Conflict("spatial", (a, b), culprit or tuple(sorted(shared)))
    return None


def _empty_tuple(net: QualNetwork) -> Tuple[str, ...]:
    for args, rel in net:
        if not rel:
            return tuple(args)
    return ()


def _global_spatial(dom, states, names):
    net = QualNetwork(dom.arity)
    origin: Dict[Tuple, List[str]] = {}
    for c, st in states.items():
        for feats, rel in st.spatial:
            args = tuple(names[(c, g)] for g in feats)
            net.add(args, rel)
            origin.setdefault(args, []).append(c)
    sol = dom.solve(net)
    if sol is not None:
        return sol, None
    for args, rel in net:
        if not rel:
            feats = tuple(a.split(".", 1)[1] for a in args)
            return None, Conflict("spatial", tuple(dict.fromkeys(origin[args])), feats)
    involved = tuple(c for c, st in states.items() if st.spatial)
    return None, Conflict("spatial", involved, ())


def _numeric_pairs(order: List[str], ends) -> Tuple[List[Pair], List[Pair]]:
    overlapping, within = [], []
    for a, b in itertools.combinations(order, 2):
        (ab, ae), (bb, be) = ends[a], ends[b]
        if ab < be and bb < ae:
            overlapping.append((a, b))
        if bb <= ab and ae <= be:
            within.append((a, b))
        if ab <= bb and be <= ae:
            within.append((b, a))
    return overlapping, within


# -- decision procedure --------------------------------------------------

@dataclass
class _Outcome:
    witness: Optional[Witness] = None
    conflict: Optional[Conflict] = None
    branch: Optional[Tuple[Pair, List[Partition]]] = None


class Reasoner:
    def __init__(self, tbox: TBox, seed: Optional[int] = None):
        self.tbox = tbox
        self.domain = registry_lookup(tbox.domain)
        self.normalized = normalize(tbox)
        self.order = [ax.lhs for ax in self.normalized]
        self.rank = {c: i for i, c in enumerate(self.order)}
        self.rng = random.Random(seed) if seed is not None else None
        self.branches = 0

    def _shuffled(self, items: List) -> List:
        if self.rng is not None:
            items = list(items)
            self.rng.shuffle(items)
        return items

    def check_conjunctive_case(self, choice: Sequence[int],
                               partitions: Dict[Pair, Partition]) -> _Outcome:
        net = build_temporal_csp(self.tbox, choice)
        for (a, b), p in partitions.items():
            net.add_role(a, b, partition_role(p))
        ok, minimal = closure(net)
        if not ok:
            u, v = minimal.conflict
            who = tuple(dict.fromkeys((u.interval, v.interval)))
            return _Outcome(conflict=Conflict("temporal", who, (str(u), str(v))))

        states = interval_states(self.tbox, choice)
        forced, _ = intersects_graph(minimal)
        forced_pairs = sorted(forced, key=lambda p: (self.rank[p[0]], self.rank[p[1]]))
        subs = entailed_subintervals(minimal)
        conflict, _ = self._homogeneous(states, forced_pairs, subs)
        if conflict is not None:
            return _Outcome(conflict=conflict)

        solution = extract_solution(minimal)
        ends = {c: (solution[EndpointVar(c, "b")], solution[EndpointVar(c, "e")]) for c in self.order}
        overlapping, within = _numeric_pairs(self.order, ends)
        conflict, parts = self._homogeneous(states, overlapping, within)
        if conflict is None:
            return _Outcome(witness=self._witness(choice, ends, *parts))

        loose = [p for p in overlapping if p not in forced]
        pick = None
        if len(conflict.concepts) == 2 and tuple(conflict.concepts) in loose:
            pick = tuple(conflict.concepts)
        else:
            for p in loose:
                if self._pair_conflicts(states, p):
                    pick = p
                    break
        if pick is None:
            pick = loose[0]
        return _Outcome(conflict=conflict, branch=(pick, [p for p in PARTITION_ORDER
                                                          if p in classify_pair(minimal, *pick)]))

    def _pair_conflicts(self, states, pair: Pair) -> bool:
        a, b = pair
        lits = states[a].literals | states[b].literals
        if _clashing(lits):
            return True
        return _pairwise_spatial(self.domain, {a: states[a], b: states[b]}, [pair]) is not None

    def _homogeneous(self, states, pairs, subs):
        literals, classes, names = propagate_homogeneity(states, pairs, subs)
        conflict = _propositional(literals, pairs)
        if conflict is not None:
            return conflict, None
        conflict = _pairwise_spatial(self.domain, states, pairs)
        if conflict is not None:
            return conflict, None
        sol, conflict = _global_spatial(self.domain, states, names)
        if conflict is not None:
            return conflict, None
        return None, (literals, classes, names, sol)

    def _witness(self, choice, ends, literals, classes, names, sol) -> Witness:
        feature_map: Dict[str, Dict[str, str]] = {c: {} for c in self.order}
        for (c, g), cls in names.items():
            feature_map[c][g] = cls
        partitions = {}
        for a, b in itertools.combinations(self.order, 2):
            partitions[(a, b)] = classify_partition(ends[a], ends[b])
        placement = None
        if sol.placement is not None:
            placement = {v: sol.placement[v] for v in sol.scenario.variables}
        return Witness(
            endpoints=ends,
            literals={c: frozenset(literals[c]) for c in self.order},
            classes=feature_map,
            scenario=sol.scenario,
            disjuncts=dict(zip(self.order, choice)),
            partitions=partitions,
            placement=placement,
            domain=self.domain.name,
        )

    def _search(self, choice, partitions) -> Tuple[Optional[Witness], Optional[Conflict]]:
        self.branches += 1
        outcome = self.check_conjunctive_case(choice, partitions)
        if log.isEnabledFor(logging.DEBUG):
            parts = ", ".join(f"{a}/{b}={p}" for (a, b), p in partitions.items()) or "-"
            status = "sat" if outcome.witness else (
                f"branch on {'/'.join(outcome.branch[0])}" if outcome.branch
                else f"fail {outcome.conflict.stage}: {outcome.conflict}")
            log.debug("branch %d disjuncts=%s partitions=[%s] -> %s",
                      self.branches, dict(zip(self.order, choice)), parts, status)
        if outcome.witness is not None:
            return outcome.witness, None
        if outcome.branch is None:
            return None, outcome.conflict
        pair, options = outcome.branch
        last = outcome.conflict
        for p in self._shuffled(options):
            w, c = self._search(choice, {**partitions, pair: p})
            if w is not None:
                return w, None
            last = c
        return None, last

    def decide(self) -> Verdict:
        self.branches = 0
        for ax in self.normalized:
            if not ax.disjuncts:
                return Verdict(False, conflict=Conflict("propositional", (ax.lhs,), ("bottom",)))
        orders = [self._shuffled(list(range(len(ax.disjuncts)))) for ax in self.normalized]
        last = None
        for choice in itertools.product(*orders):
            w, c = self._search(list(choice), {})
            if w is not None:
                return Verdict(True, witness=w, branches=self.branches)
            last = c
        return Verdict(False, conflict=last, branches=self.branches)


def decide(t: TBox, seed: Optional[int] = None) -> Verdict:
    return Reasoner(t, seed).decide()


def check_conjunctive_case(t: TBox, choice: Sequence[int],
                           partitions: Optional[Dict[Pair, Partition]] = None):
    """Single branch check; returns a :class:`Witness` or a :class:`Conflict`.

    An ambiguous overlap that still needs branching is reported as its conflict.
    """
    outcome = Reasoner(t).check_conjunctive_case(choice, partitions or {})
    return outcome.witness if outcome.witness is not None else outcome.conflict
