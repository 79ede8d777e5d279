"""Registry of the spatial concrete domains (RCC8 and CYC_t).

A domain's predicates are all subsets of its atoms, so complements and the
universal predicate are always available.  ``solve`` decides a conjunction of
predicates given as a :class:`QualNetwork` and returns an atomic scenario.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Optional, Tuple

from . import cyct, rcc8
from .qualnet import QualNetwork


class DomainError(KeyError):
    pass


@dataclass(frozen=True)
class Solution:
    """Atomic scenario, plus concrete angles for CYC_t."""

    scenario: QualNetwork
    placement: Optional[Dict[Hashable, Fraction]] = None


@dataclass(frozen=True)
class ConcreteDomain:
    name: str
    arity: int
    atoms: Tuple[str, ...]
    _solve: Callable[[QualNetwork], Optional[Solution]]
    _verify: Callable[[QualNetwork, Optional[Dict]], bool]

    @property
    def universal(self) -> FrozenSet[str]:
        return frozenset(self.atoms)

    def complement(self, predicate: Iterable[str]) -> FrozenSet[str]:
        p = self.check(predicate)
        return self.universal - p

    def check(self, predicate: Iterable[str]) -> FrozenSet[str]:
        p = frozenset(predicate)
        bad = p - self.universal
        if bad:
            raise ValueError(f"unknown {self.name} atom(s): {', '.join(sorted(bad))}")
        return p

    def network(self) -> QualNetwork:
        return QualNetwork(self.arity)

    def solve(self, net: QualNetwork) -> Optional[Solution]:
        """Scenario for a satisfiable network, ``None`` otherwise."""
        return self._solve(net)

    def consistent(self, net: QualNetwork) -> Tuple[bool, Optional[Solution]]:
        sol = self._solve(net)
        return sol is not None, sol

    def verify_scenario(self, scenario: QualNetwork, placement: Optional[Dict] = None) -> bool:
        """Check that an atomic scenario is itself realisable."""
        return self._verify(scenario, placement)


def complement(domain: ConcreteDomain, predicate: Iterable[str]) -> FrozenSet[str]:
    return domain.complement(predicate)


def _rcc8_solve(net: QualNetwork) -> Optional[Solution]:
    ok, scenario = rcc8.consistent(net)
    return Solution(scenario) if ok else None


def _rcc8_verify(scenario: QualNetwork, placement=None) -> bool:
    return rcc8.is_algebraically_closed(scenario)


def _cyct_solve(net: QualNetwork) -> Optional[Solution]:
    ok, placement = cyct.consistent(net)
    if not ok:
        return None
    return Solution(cyct.scenario_from_placement(net, placement), placement)


def _cyct_verify(scenario: QualNetwork, placement=None) -> bool:
    if placement is None:
        return cyct.consistent(scenario)[0]
    return scenario.is_atomic and cyct.placement_satisfies(scenario, placement)


RCC8 = ConcreteDomain("rcc8", 2, rcc8.ATOMS, _rcc8_solve, _rcc8_verify)
CYCT = ConcreteDomain("cyct", 3, cyct.ATOMS, _cyct_solve, _cyct_verify)

_REGISTRY: Dict[str, ConcreteDomain] = {d.name: d for d in (RCC8, CYCT)}


def registry_lookup(name: str) -> ConcreteDomain:
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        raise DomainError(f"unknown concrete domain {name!r} (known: {', '.join(_REGISTRY)})") from None
