"""Combinatorial rectangles: product sets of assignments over an edge
bipartition.  A and B hold partial assignment masks whose bits stay inside
their own block; the represented set is {a | b}."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Rectangle:
    e1_mask: int
    e2_mask: int
    a_side: frozenset[int]
    b_side: frozenset[int]
    num_vars: int

    def __post_init__(self):
        if self.e1_mask & self.e2_mask:
            raise ValueError("blocks must be disjoint")
        if self.e1_mask | self.e2_mask != (1 << self.num_vars) - 1:
            raise ValueError("blocks must cover all variables")
        if any(a & ~self.e1_mask for a in self.a_side):
            raise ValueError("A-side assignment leaves its block")
        if any(b & ~self.e2_mask for b in self.b_side):
            raise ValueError("B-side assignment leaves its block")

    @property
    def size(self) -> int:
        return len(self.a_side) * len(self.b_side)

    def models(self) -> set[int]:
        return {a | b for a in self.a_side for b in self.b_side}

    def is_balanced(self) -> bool:
        n1 = bin(self.e1_mask).count("1")
        n2 = bin(self.e2_mask).count("1")
        total = self.num_vars
        return 3 * n1 >= total and 3 * n2 >= total and 3 * n1 <= 2 * total and 3 * n2 <= 2 * total


def mask_of(edge_ids) -> int:
    m = 0
    for e in edge_ids:
        m |= 1 << e
    return m


def is_rectangle(assignments, e1_mask: int, e2_mask: int, num_vars: int) -> Rectangle | None:
    """The A x B decomposition of the set, or None when it is not a
    product for this partition."""
    s = set(assignments)
    a_side = frozenset(x & e1_mask for x in s)
    b_side = frozenset(x & e2_mask for x in s)
    if len(a_side) * len(b_side) != len(s):
        return None
    rect = Rectangle(e1_mask, e2_mask, a_side, b_side, num_vars)
    return rect if rect.models() == s else None
