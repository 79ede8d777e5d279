"""Simple temporal problems over interval endpoints.

Every interval contributes two time points, ``I_b`` and ``I_e``.  Constraints
are convex sets on differences ``value(v) - value(u)`` and the network is
solved by an all-pairs closure (Floyd-Warshall on convex sets), which keeps
strict bounds exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Hashable, List, NamedTuple, Optional, Set, Tuple

from .allen import PARTITION_ORDER, EndpointRole, Partition, partition_role
from .intervals import INF, NEG_INF, POSITIVE, REALS, ZERO, ConvexSet, intersect, interval, negate, pick, point


class StpError(ValueError):
    pass


class EndpointVar(NamedTuple):
    interval: Hashable
    which: str  # "b", "e", or "0" for the origin

    def __str__(self) -> str:
        return f"{self.interval}_{self.which}"


ORIGIN = EndpointVar("X0", "0")


class StpNetwork:
    """Difference-constraint network; ``edge(u, v)`` bounds ``v - u``."""

    def __init__(self, origin: bool = False):
        self.vars: List[EndpointVar] = []
        self.intervals: List[Hashable] = []
        self._index: Dict[EndpointVar, int] = {}
        self._d: List[List[ConvexSet]] = []
        self.conflict: Optional[Tuple[EndpointVar, EndpointVar]] = None
        if origin:
            self._add_var(ORIGIN)

    # -- construction ---------------------------------------------------

    def _add_var(self, v: EndpointVar) -> int:
        n = len(self.vars)
        self.vars.append(v)
        self._index[v] = n
        for row in self._d:
            row.append(REALS)
        self._d.append([REALS] * (n + 1))
        self._d[n][n] = ZERO
        return n

    def add_interval(self, ident: Hashable) -> "StpNetwork":
        if ident in self.intervals:
            raise StpError(f"duplicate interval {ident!r}")
        self.intervals.append(ident)
        b = self._add_var(EndpointVar(ident, "b"))
        e = self._add_var(EndpointVar(ident, "e"))
        self._constrain(b, e, POSITIVE)
        return self

    def _constrain(self, u: int, v: int, s: ConvexSet) -> None:
        d = self._d
        d[u][v] = intersect(d[u][v], s)
        d[v][u] = negate(d[u][v]) if u != v else d[u][v]

    def constrain(self, u: EndpointVar, v: EndpointVar, s: ConvexSet) -> "StpNetwork":
        self._constrain(self._index[u], self._index[v], s)
        return self

    def constrain_unary(self, u: EndpointVar, s: ConvexSet) -> "StpNetwork":
        """Constrain ``value(u) - value(origin)``; needs ``origin=True``."""
        if ORIGIN not in self._index:
            raise StpError("network has no origin variable")
        return self.constrain(ORIGIN, u, s)

    def add_role(self, i: Hashable, j: Hashable, role: EndpointRole) -> "StpNetwork":
        for x, y, s in role.items():
            self.constrain(EndpointVar(i, x), EndpointVar(j, y), s)
        return self

    # -- inspection -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.vars)

    def var(self, ident: Hashable, which: str) -> EndpointVar:
        return EndpointVar(ident, which)

    def edge(self, u: EndpointVar, v: EndpointVar) -> ConvexSet:
        return self._d[self._index[u]][self._index[v]]

    def edges(self):
        for i, u in enumerate(self.vars):
            for j, v in enumerate(self.vars):
                yield u, v, self._d[i][j]

    def role_between(self, i: Hashable, j: Hashable) -> EndpointRole:
        """Current endpoint role on (i, j), read off the edges."""
        E = EndpointVar
        return EndpointRole(
            self.edge(E(i, "b"), E(j, "b")), self.edge(E(i, "b"), E(j, "e")),
            self.edge(E(i, "e"), E(j, "b")), self.edge(E(i, "e"), E(j, "e")),
        )

    def copy(self) -> "StpNetwork":
        net = StpNetwork.__new__(StpNetwork)
        net.vars = list(self.vars)
        net.intervals = list(self.intervals)
        net._index = dict(self._index)
        net._d = [list(row) for row in self._d]
        net.conflict = self.conflict
        return net

    def __eq__(self, other) -> bool:
        return isinstance(other, StpNetwork) and self.vars == other.vars and self._d == other._d

    def __repr__(self) -> str:
        return f"StpNetwork({len(self.intervals)} intervals, {len(self.vars)} vars)"


def closure(net: StpNetwork) -> Tuple[bool, StpNetwork]:
    """Path-consistency closure.  Returns ``(consistent, minimal_network)``.

    Runs Floyd-Warshall on the distance graph: ``w[u][v]`` is the upper bound
    of ``v - u`` as ``(value, flag)`` with flag 0 for strict, 1 for non-strict,
    so tuple order prefers the strict bound at equal values.  Finite values are
    scaled to integers by the common denominator.  On inconsistency the
    returned network carries the first emptied edge in ``conflict``.
    """
    out = net.copy()
    d = out._d
    n = len(d)
    for u in range(n):
        for v in range(n):
            if d[u][v].is_empty:
                out.conflict = (out.vars[u], out.vars[v])
                return False, out

    scale = 1
    for row in d:
        for s in row:
            if s.hi.finite:
                scale = math.lcm(scale, s.hi.value.denominator)
    w: List[List[Optional[Tuple[int, int]]]] = [
        [None if not s.hi.finite else (int(s.hi.value * scale), 0 if s.hi.strict else 1) for s in row]
        for row in d
    ]
    for k in range(n):
        wk = w[k]
        for i in range(n):
            wik = w[i][k]
            if wik is None or i == k:
                continue
            wi = w[i]
            ik_val, ik_flag = wik
            for j in range(n):
                wkj = wk[j]
                if wkj is None or j == k:
                    continue
                cand = (ik_val + wkj[0], ik_flag & wkj[1])
                cur = wi[j]
                if cur is None or cand < cur:
                    wi[j] = cand
                    back = w[j][i]
                    if back is not None and (cand[0] + back[0], cand[1] & back[1]) < (0, 1):
                        out.conflict = (out.vars[i], out.vars[j])
                        return False, out

    for i in range(n):
        for j in range(n):
            hi, lo = w[i][j], w[j][i]
            d[i][j] = interval(
                NEG_INF if lo is None else Fraction(-lo[0], scale),
                INF if hi is None else Fraction(hi[0], scale),
                lo is None or lo[1] == 0,
                hi is None or hi[1] == 0,
            )
    out.conflict = None
    return True, out


def extract_solution(minimal: StpNetwork) -> Dict[EndpointVar, Fraction]:
    """Assign every variable a rational satisfying every edge of ``minimal``.

    Variables are fixed one at a time inside the window left by those already
    fixed; minimal networks are decomposable, so no backtracking is needed.
    """
    d = minimal._d
    n = len(d)
    if any(d[u][v].is_empty for u in range(n) for v in range(n)):
        raise StpError("extract_solution needs a consistent minimal network")
    values: List[Fraction] = []
    for v in range(n):
        window = REALS
        for u in range(v):
            window = intersect(window, _shift(d[u][v], values[u]))
        if window.is_empty:
            raise StpError("network is not minimal/consistent")
        if v == 0:
            values.append(Fraction(0))
        else:
            values.append(pick(window))
    return {var: values[i] for i, var in enumerate(minimal.vars)}


def _shift(s: ConvexSet, x: Fraction) -> ConvexSet:
    return s + point(x)


def classify_pair(minimal: StpNetwork, i: Hashable, j: Hashable) -> Set[Partition]:
    role = minimal.role_between(i, j)
    return {p for p in PARTITION_ORDER if (role & partition_role(p)).usable}


def check_assignment(net: StpNetwork, values: Dict[EndpointVar, Fraction]) -> bool:
    """Independent membership check of an assignment against every edge."""
    for u, v, s in net.edges():
        if values[v] - values[u] not in s:
            return False
    return True
