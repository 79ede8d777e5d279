"""Qualitative constraint networks shared by the spatial domains."""

from __future__ import annotations

from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, Optional, Tuple

Relation = FrozenSet[str]


class QualNetwork:
    """Conjunctive constraints ``rel(v1, ..., vn)`` of one fixed arity.

    Adding a second constraint on the same variable tuple intersects the two
    atom sets.  Relations are plain sets of atom names, so the same container
    serves binary (RCC8) and ternary (CYC_t) algebras.
    """

    def __init__(self, arity: int, variables: Iterable[Hashable] = ()):
        self.arity = arity
        self.variables: Dict[Hashable, None] = dict.fromkeys(variables)
        self.constraints: Dict[Tuple, Relation] = {}

    def add_variable(self, v: Hashable) -> None:
        self.variables.setdefault(v)

    def add(self, args: Tuple, relation: Iterable[str]) -> "QualNetwork":
        args = tuple(args)
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        for v in args:
            self.add_variable(v)
        rel = frozenset(relation)
        if args in self.constraints:
            rel = self.constraints[args] & rel
        self.constraints[args] = rel
        return self

    def get(self, args: Tuple) -> Optional[Relation]:
        return self.constraints.get(tuple(args))

    def __iter__(self) -> Iterator[Tuple[Tuple, Relation]]:
        return iter(self.constraints.items())

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def is_atomic(self) -> bool:
        return all(len(r) == 1 for r in self.constraints.values())

    def copy(self) -> "QualNetwork":
        net = QualNetwork(self.arity, self.variables)
        net.constraints = dict(self.constraints)
        return net

    def __eq__(self, other) -> bool:
        return (isinstance(other, QualNetwork) and self.arity == other.arity
                and set(self.variables) == set(other.variables)
                and self.constraints == other.constraints)

    def __repr__(self) -> str:
        body = ", ".join(f"{'|'.join(sorted(r))}{args}" for args, r in self.constraints.items())
        return f"QualNetwork({body})"
