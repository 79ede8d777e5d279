"""Witness data, serialisation and an independent model checker.

:func:`verify_witness` evaluates each axiom's right-hand side recursively at
its interval, straight from the concept semantics.  It shares no code with
the decision procedure beyond the AST, the domain tables and convex-set
membership.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from .allen import Partition, classify_partition
from .domains import registry_lookup
from .qualnet import QualNetwork
from .tbox import (
    And, Bottom, Concept, ExistsRole, NegPrimitive, Or, PredicateConcept, Primitive, TBox, Top,
)


def neg(lit: str) -> str:
    return lit[4:] if lit.startswith("not ") else f"not {lit}"


@dataclass
class Witness:
    endpoints: Dict[str, Tuple[Fraction, Fraction]]
    literals: Dict[str, FrozenSet[str]]
    # concept -> feature -> spatial variable (feature-value class)
    classes: Dict[str, Dict[str, str]]
    scenario: QualNetwork
    disjuncts: Dict[str, int]
    partitions: Dict[Tuple[str, str], Partition]
    placement: Optional[Dict[str, Fraction]] = None
    domain: str = "rcc8"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Witness):
            return NotImplemented
        return to_json_obj(self) == to_json_obj(other)


# -- checking ---------------------------------------------------------------

def _overlap(a, b) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def _within(a, b) -> bool:
    return b[0] <= a[0] and a[1] <= b[1]


class _Model:
    def __init__(self, t: TBox, w: Witness):
        self.t = t
        self.w = w
        self.dom = registry_lookup(t.domain)
        self.scn: Dict[Tuple, str] = {}
        for args, rel in w.scenario:
            if len(rel) == 1:
                (a,) = rel
                self.scn[tuple(args)] = a

    def atom_at(self, args: Tuple[str, ...]) -> Optional[str]:
        if self.dom.name == "cyct":
            from .cyct import cyct_of
            if self.w.placement is None or any(a not in self.w.placement for a in args):
                return None
            return cyct_of(*(self.w.placement[a] for a in args))
        u, v = args
        if u == v:
            return "EQ"
        if (u, v) in self.scn:
            return self.scn[(u, v)]
        if (v, u) in self.scn:
            from .rcc8 import CONVERSE
            return CONVERSE[self.scn[(v, u)]]
        return None

    def sat(self, c: Concept, s: str) -> bool:
        if isinstance(c, Top):
            return True
        if isinstance(c, Bottom):
            return False
        if isinstance(c, Primitive):
            return c.name in self.w.literals.get(s, ())
        if isinstance(c, NegPrimitive):
            return c.name not in self.w.literals.get(s, ())
        if isinstance(c, PredicateConcept):
            feats = self.w.classes.get(s, {})
            if any(g not in feats for g in c.features):
                return False
            atom = self.atom_at(tuple(feats[g] for g in c.features))
            return atom is not None and atom in c.predicate
        if isinstance(c, ExistsRole):
            if c.target not in self.w.endpoints:
                return False
            return c.role.holds(self.w.endpoints[s], self.w.endpoints[c.target])
        if isinstance(c, And):
            return all(self.sat(x, s) for x in c.items)
        if isinstance(c, Or):
            return any(self.sat(x, s) for x in c.items)
        raise TypeError(c)


def verify_witness(t: TBox, w: Witness) -> bool:
    return not witness_problems(t, w)


def witness_problems(t: TBox, w: Witness) -> List[str]:
    """Everything wrong with ``w`` as a model of ``t`` (empty when valid)."""
    problems = []
    names = [ax.lhs for ax in t.axioms]
    if set(names) != set(w.endpoints):
        return [f"intervals {sorted(w.endpoints)} do not match defined concepts {sorted(names)}"]
    ends = w.endpoints
    for c, (b, e) in ends.items():
        if not b < e:
            problems.append(f"{c} is not a durative interval: ({b}, {e})")
    for c, lits in w.literals.items():
        for lit in lits:
            if neg(lit) in lits:
                problems.append(f"{c} has complementary literals {lit}")
    if problems:
        return problems

    model = _Model(t, w)
    for ax in t.axioms:
        if not model.sat(ax.rhs, ax.lhs):
            problems.append(f"{ax.lhs} does not satisfy its definition")

    for c, d in itertools.combinations(names, 2):
        i, j = ends[c], ends[d]
        if _overlap(i, j):
            union = w.literals.get(c, frozenset()) | w.literals.get(d, frozenset())
            bad = sorted(l for l in union if not l.startswith("not ") and neg(l) in union)
            if bad:
                problems.append(f"overlapping {c}/{d} disagree on {', '.join(bad)}")
            fc, fd = w.classes.get(c, {}), w.classes.get(d, {})
            for g in sorted(set(fc) & set(fd)):
                if fc[g] != fd[g]:
                    problems.append(f"overlapping {c}/{d} give {g} different values")
        for sub, sup in ((c, d), (d, c)):
            if _within(ends[sub], ends[sup]):
                missing = w.literals.get(sup, frozenset()) - w.literals.get(sub, frozenset())
                if missing:
                    problems.append(f"{sub} lies within {sup} but lacks {', '.join(sorted(missing))}")
        recorded = w.partitions.get((c, d))
        if recorded is not None and recorded != classify_partition(i, j):
            problems.append(f"recorded partition {recorded} for {c}/{d} is wrong")

    if not w.scenario.is_atomic:
        problems.append("scenario is not atomic")
    elif not model.dom.verify_scenario(w.scenario, w.placement):
        problems.append("scenario is not realisable")
    return problems


# -- serialisation ----------------------------------------------------------

def _rat(x) -> str:
    return str(Fraction(x))


def to_json_obj(w: Witness) -> dict:
    scenario = [
        {"vars": list(args), "atom": sorted(rel)[0] if len(rel) == 1 else sorted(rel)}
        for args, rel in w.scenario
    ]
    obj = {
        "domain": w.domain,
        "endpoints": {c: [_rat(b), _rat(e)] for c, (b, e) in w.endpoints.items()},
        "literals": {c: sorted(ls) for c, ls in w.literals.items()},
        "classes": {c: dict(sorted(fs.items())) for c, fs in w.classes.items()},
        "scenario": scenario,
        "disjuncts": dict(w.disjuncts),
        "partitions": {f"{a}|{b}": str(p) for (a, b), p in w.partitions.items()},
    }
    if w.placement is not None:
        obj["placement"] = {v: _rat(x) for v, x in w.placement.items()}
    return obj


def from_json_obj(obj: dict) -> Witness:
    domain = obj.get("domain", "rcc8")
    dom = registry_lookup(domain)
    scenario = QualNetwork(dom.arity)
    for entry in obj["scenario"]:
        atom = entry["atom"]
        scenario.add(tuple(entry["vars"]), [atom] if isinstance(atom, str) else atom)
    placement = obj.get("placement")
    return Witness(
        endpoints={c: (Fraction(b), Fraction(e)) for c, (b, e) in obj["endpoints"].items()},
        literals={c: frozenset(ls) for c, ls in obj["literals"].items()},
        classes={c: dict(fs) for c, fs in obj.get("classes", {}).items()},
        scenario=scenario,
        disjuncts={c: int(i) for c, i in obj["disjuncts"].items()},
        partitions={tuple(k.split("|")): Partition(p) for k, p in obj["partitions"].items()},
        placement=None if placement is None else {v: Fraction(x) for v, x in placement.items()},
        domain=domain,
    )


def dumps(w: Witness) -> str:
    return json.dumps(to_json_obj(w), indent=2)


def loads(text: str) -> Witness:
    return from_json_obj(json.loads(text))


def format_text(w: Witness) -> str:
    lines = ["endpoints:"]
    lines += [f"  {c} = ({_rat(b)}, {_rat(e)})" for c, (b, e) in w.endpoints.items()]
    lines.append("literals:")
    lines += [f"  {c}: {{{', '.join(sorted(ls))}}}" for c, ls in w.literals.items()]
    lines.append("features:")
    for c, fs in w.classes.items():
        if fs:
            lines.append(f"  {c}: " + ", ".join(f"{g}={v}" for g, v in sorted(fs.items())))
    lines.append("scenario:")
    for args, rel in w.scenario:
        lines.append(f"  {'|'.join(sorted(rel))}({', '.join(args)})")
    if w.placement is not None:
        lines.append("placement (turns):")
        lines += [f"  {v} = {_rat(x)}" for v, x in w.placement.items()]
    lines.append("disjuncts:")
    lines += [f"  {c}: {i}" for c, i in w.disjuncts.items()]
    lines.append("partitions:")
    lines += [f"  {a}/{b}: {p}" for (a, b), p in w.partitions.items()]
    return "\n".join(lines)
