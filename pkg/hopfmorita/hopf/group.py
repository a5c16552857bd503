"""
Group algebras of finite groups as Hopf *-algebras, built from a multiplication
table that is checked to be a group at construction.
"""
from itertools import product
from typing import List, Optional, Sequence

from hopfmorita.errors import ModelError

from hopfmorita.algebra.scalar import ONE

from .base import HopfAlgebra


class GroupHopf(HopfAlgebra):
    """
    The group algebra C[G] of a finite group given by its multiplication table
    (table[g][h] = gh on element indices 0..n-1). Group elements are grouplike:
    Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1 = g*.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        n = len(table)
        if n == 0:
            raise ModelError("A group needs at least one element")
        if any(len(row) != n for row in table):
            raise ModelError("The group table must be square")
        if any(not 0 <= v < n for row in table for v in row):
            raise ModelError("Group table entries must be element indices")
        self.order = n
        self.table = [list(row) for row in table]
        self.labels = list(labels) if labels is not None else [f"g{k}" for k in range(n)]
        if len(self.labels) != n:
            raise ModelError(f"Expected {n} group element labels, got {len(self.labels)}")

        identities = [e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))]
        if not identities:
            raise ModelError("The group table has no identity element")
        self._identity = identities[0]
        for g, h, k in product(range(n), repeat=3):
            if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]]:
                raise ModelError(f"The group table is not associative on ({g}, {h}, {k})")
        self._inverse = []
        for g in range(n):
            inverses = [h for h in range(n) if self.table[g][h] == self._identity]
            if not inverses:
                raise ModelError(f"Group element {g} has no inverse")
            self._inverse.append(inverses[0])

    @classmethod
    def cyclic(cls, n: int) -> "GroupHopf":
        return cls([[(g + h) % n for h in range(n)] for g in range(n)])

    def inverse(self, g: int) -> int:
        return self._inverse[g]

    def basis(self) -> List[int]:
        return list(range(self.order))

    @property
    def unit_key(self):
        return self._identity

    def degree(self, g) -> int:
        return 0

    def mul_basis(self, g, h):
        return {self.table[g][h]: ONE}

    def coproduct_basis(self, g):
        return {(g, g): ONE}

    def counit_basis(self, g):
        return ONE

    def antipode_basis(self, g):
        return {self._inverse[g]: ONE}

    def star_basis(self, g):
        return {self._inverse[g]: ONE}

    def key_name(self, g) -> str:
        return self.labels[g]

    def format_key(self, g) -> str:
        return str(g)

    def parse_key(self, text: str) -> int:
        if text in self.labels:
            return self.labels.index(text)
        try:
            g = int(text)
        except ValueError:
            raise ModelError(f"Unknown group element {text!r}")
        if not 0 <= g < self.order:
            raise ModelError(f"Group element {g} outside of a group of order {self.order}")
        return g

    def __repr__(self) -> str:
        return f"GroupHopf(order={self.order})"
