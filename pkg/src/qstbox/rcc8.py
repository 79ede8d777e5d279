"""RCC8 relation algebra: converse, composition and network consistency.

Base relations between regions::

    DC     disconnected              EC     externally connected
    PO     partial overlap           EQ     equal
    TPP    tangential proper part    NTPP   non-tangential proper part
    TPPi   converse of TPP           NTPPi  converse of NTPP

The composition table is the standard one for the calculus (Randell, Cui &
Cohn 1992; Renz & Nebel 1999).  For atomic networks, path consistency decides
satisfiability; disjunctive networks are solved by backtracking over atoms.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Hashable, List, Optional, Tuple

from .qualnet import QualNetwork

ATOMS: Tuple[str, ...] = ("DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ")
UNIVERSAL: FrozenSet[str] = frozenset(ATOMS)
EMPTY: FrozenSet[str] = frozenset()

CONVERSE: Dict[str, str] = {
    "DC": "DC", "EC": "EC", "PO": "PO", "EQ": "EQ",
    "TPP": "TPPi", "TPPi": "TPP", "NTPP": "NTPPi", "NTPPi": "NTPP",
}

_ALL = "DC EC PO TPP NTPP TPPi NTPPi EQ"

# row: r(a, b); column: s(b, c); entry: possible t(a, c)
_TABLE_ROWS = {
    "DC": {
        "DC": _ALL, "EC": "DC EC PO TPP NTPP", "PO": "DC EC PO TPP NTPP",
        "TPP": "DC EC PO TPP NTPP", "NTPP": "DC EC PO TPP NTPP",
        "TPPi": "DC", "NTPPi": "DC",
    },
    "EC": {
        "DC": "DC EC PO TPPi NTPPi", "EC": "DC EC PO TPP TPPi EQ",
        "PO": "DC EC PO TPP NTPP", "TPP": "EC PO TPP NTPP", "NTPP": "PO TPP NTPP",
        "TPPi": "DC EC", "NTPPi": "DC",
    },
    "PO": {
        "DC": "DC EC PO TPPi NTPPi", "EC": "DC EC PO TPPi NTPPi", "PO": _ALL,
        "TPP": "PO TPP NTPP", "NTPP": "PO TPP NTPP",
        "TPPi": "DC EC PO TPPi NTPPi", "NTPPi": "DC EC PO TPPi NTPPi",
    },
    "TPP": {
        "DC": "DC", "EC": "DC EC", "PO": "DC EC PO TPP NTPP", "TPP": "TPP NTPP",
        "NTPP": "NTPP", "TPPi": "DC EC PO TPP TPPi EQ", "NTPPi": "DC EC PO TPPi NTPPi",
    },
    "NTPP": {
        "DC": "DC", "EC": "DC", "PO": "DC EC PO TPP NTPP", "TPP": "NTPP",
        "NTPP": "NTPP", "TPPi": "DC EC PO TPP NTPP", "NTPPi": _ALL,
    },
    "TPPi": {
        "DC": "DC EC PO TPPi NTPPi", "EC": "EC PO TPPi NTPPi", "PO": "PO TPPi NTPPi",
        "TPP": "PO TPP TPPi EQ", "NTPP": "PO TPP NTPP", "TPPi": "TPPi NTPPi",
        "NTPPi": "NTPPi",
    },
    "NTPPi": {
        "DC": "DC EC PO TPPi NTPPi", "EC": "PO TPPi NTPPi", "PO": "PO TPPi NTPPi",
        "TPP": "PO TPPi NTPPi", "NTPP": "PO TPP NTPP TPPi NTPPi EQ",
        "TPPi": "NTPPi", "NTPPi": "NTPPi",
    },
}


def _build_table() -> Dict[Tuple[str, str], FrozenSet[str]]:
    table = {}
    for a in ATOMS:
        table[("EQ", a)] = frozenset({a})
        table[(a, "EQ")] = frozenset({a})
    for a, row in _TABLE_ROWS.items():
        for b, entry in row.items():
            table[(a, b)] = frozenset(entry.split())
    return table


COMPOSITION: Dict[Tuple[str, str], FrozenSet[str]] = _build_table()


def compose(a: str, b: str) -> FrozenSet[str]:
    return COMPOSITION[(a, b)]


_REL_COMPOSE_CACHE: Dict[Tuple[FrozenSet[str], FrozenSet[str]], FrozenSet[str]] = {}


def compose_rel(r: FrozenSet[str], s: FrozenSet[str]) -> FrozenSet[str]:
    if type(r) is not frozenset or type(s) is not frozenset:
        r, s = frozenset(r), frozenset(s)
    key = (r, s)
    out = _REL_COMPOSE_CACHE.get(key)
    if out is None:
        acc = set()
        for a in r:
            for b in s:
                acc |= COMPOSITION[(a, b)]
                if len(acc) == 8:
                    break
        out = _REL_COMPOSE_CACHE[key] = frozenset(acc)
    return out


def converse_rel(r) -> FrozenSet[str]:
    return frozenset(CONVERSE[a] for a in r)


def check_relation(r) -> FrozenSet[str]:
    r = frozenset(r)
    bad = r - UNIVERSAL
    if bad:
        raise ValueError(f"unknown RCC8 atom(s): {', '.join(sorted(bad))}")
    return r


# -- networks -------------------------------------------------------------

class _Matrix:
    """Dense, converse-closed working form of a binary network."""

    def __init__(self, variables: List[Hashable]):
        self.vars = variables
        n = len(variables)
        self.m: List[List[FrozenSet[str]]] = [[UNIVERSAL] * n for _ in range(n)]
        for i in range(n):
            self.m[i][i] = frozenset({"EQ"})

    @classmethod
    def from_network(cls, net: QualNetwork) -> "_Matrix":
        if net.arity != 2:
            raise ValueError("RCC8 networks are binary")
        mat = cls(list(net.variables))
        idx = {v: i for i, v in enumerate(mat.vars)}
        for (u, v), rel in net:
            i, j = idx[u], idx[v]
            mat.m[i][j] = mat.m[i][j] & rel
            if i != j:
                mat.m[j][i] = converse_rel(mat.m[i][j])
        return mat

    def copy(self) -> "_Matrix":
        out = _Matrix.__new__(_Matrix)
        out.vars = self.vars
        out.m = [list(row) for row in self.m]
        return out

    def to_network(self) -> QualNetwork:
        net = QualNetwork(2, self.vars)
        n = len(self.vars)
        for i in range(n):
            for j in range(i + 1, n):
                net.constraints[(self.vars[i], self.vars[j])] = self.m[i][j]
        return net

    def path_consistency(self, queue=None) -> bool:
        m = self.m
        n = len(m)
        if any(not m[i][j] for i in range(n) for j in range(n)):
            return False
        if queue is None:
            queue = [(i, j) for i in range(n) for j in range(i + 1, n)]
        pending = set(queue)
        queue = list(queue)
        while queue:
            i, j = queue.pop()
            pending.discard((i, j))
            for k in range(n):
                if k == i or k == j:
                    continue
                # tighten (i, k) via j and (k, j) via i
                for a, b, c in ((i, j, k), (k, i, j)):
                    new = m[a][c] & compose_rel(m[a][b], m[b][c])
                    if new != m[a][c]:
                        if not new:
                            return False
                        m[a][c] = new
                        m[c][a] = converse_rel(new)
                        key = (min(a, c), max(a, c))
                        if key not in pending:
                            pending.add(key)
                            queue.append(key)
        return True


def path_consistency(net: QualNetwork) -> Tuple[bool, QualNetwork]:
    """Algebraic closure.  Returns ``(nonempty, refined)``; ``refined`` is
    complete over all variable pairs."""
    mat = _Matrix.from_network(net)
    ok = mat.path_consistency()
    return ok, mat.to_network()


def consistent(net: QualNetwork) -> Tuple[bool, Optional[QualNetwork]]:
    """Decide satisfiability; returns an atomic scenario when satisfiable."""
    mat = _Matrix.from_network(net)
    if not mat.path_consistency():
        return False, None
    result = _search(mat)
    if result is None:
        return False, None
    return True, result.to_network()


def _search(mat: _Matrix) -> Optional[_Matrix]:
    n = len(mat.vars)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            size = len(mat.m[i][j])
            if size > 1 and (best is None or size < best[0]):
                best = (size, i, j)
    if best is None:
        return mat
    _, i, j = best
    for atom in ATOMS:
        if atom not in mat.m[i][j]:
            continue
        trial = mat.copy()
        trial.m[i][j] = frozenset({atom})
        trial.m[j][i] = frozenset({CONVERSE[atom]})
        if trial.path_consistency([(i, j)]):
            found = _search(trial)
            if found is not None:
                return found
    return None


def is_algebraically_closed(scenario: QualNetwork) -> bool:
    """Check an atomic complete scenario triangle by triangle."""
    vs = list(scenario.variables)
    rel = {}
    for (u, v), r in scenario:
        if len(r) != 1:
            return False
        (a,) = r
        rel[(u, v)] = a
        rel[(v, u)] = CONVERSE[a]
    for v in vs:
        if rel.setdefault((v, v), "EQ") != "EQ":
            return False
    for x, y, z in itertools.permutations(vs, 3):
        if (x, y) not in rel or (y, z) not in rel or (x, z) not in rel:
            return False
        if rel[(x, z)] not in COMPOSITION[(rel[(x, y)], rel[(y, z)])]:
            return False
    return True
