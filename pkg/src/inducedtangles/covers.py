"""Bitset helpers: small-cover search and vertical element indexes."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import members


def iter_bits(x: int):
    """Indices of the set bits of ``x``, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def inclusion_maximal(masks: Sequence[int]) -> list[int]:
    """Indices of the distinct inclusion-maximal masks, first occurrence kept."""
    order = sorted(range(len(masks)), key=lambda i: (-masks[i].bit_count(), i))
    width = max((m.bit_length() for m in masks), default=0)
    # containing[v]: bitset over positions in `kept` whose mask contains v
    containing = [0] * width
    kept: list[int] = []
    seen = set()
    for i in order:
        m = masks[i]
        if m in seen:
            continue
        seen.add(m)
        acc = (1 << len(kept)) - 1
        for v in members(m):
            acc &= containing[v]
            if not acc:
                break
        if acc:
            continue
        bit = 1 << len(kept)
        for v in members(m):
            containing[v] |= bit
        kept.append(i)
    return sorted(kept)


def find_cover(sides: Sequence[int], target: int, limit: int) -> list[int] | None:
    """Indices of at most ``limit`` sides whose union contains ``target``.

    Depth-first search branching on the uncovered element lying in the fewest
    sides.  A node is pruned when the fractional weighting ``1/largest side
    containing v`` of the uncovered elements exceeds the remaining budget:
    every side carries total weight at most 1 under it.
    """
    width = max(target.bit_length(), max((s.bit_length() for s in sides), default=0))
    by_elem: list[list[int]] = [[] for _ in range(width)]
    for i, s in enumerate(sides):
        for v in members(s & target):
            by_elem[v].append(i)
    weight = [Fraction(0)] * width
    for v in members(target):
        if not by_elem[v]:
            return None
        weight[v] = Fraction(1, max(sides[i].bit_count() for i in by_elem[v]))
    failed: set[tuple[int, int]] = set()

    def search(uncovered: int, budget: int) -> list[int] | None:
        if not uncovered:
            return []
        if budget == 0 or (uncovered, budget) in failed:
            return None
        if sum(weight[v] for v in iter_bits(uncovered)) > budget:
            failed.add((uncovered, budget))
            return None
        pivot = min(iter_bits(uncovered), key=lambda v: (len(by_elem[v]), v))
        cands = sorted(by_elem[pivot], key=lambda i: (-(sides[i] & uncovered).bit_count(), i))
        for i in cands:
            rest = search(uncovered & ~sides[i], budget - 1)
            if rest is not None:
                return [i] + rest
        failed.add((uncovered, budget))
        return None

    for depth in range(0, limit + 1):
        found = search(target, depth)
        if found is not None:
            return found
    return None


class ElementIndex:
    """Per-element-of-V bitsets over a list of oriented separations.

    Answers "which separations have small side containing X and within Y, big
    side containing P and within Q" with a handful of big-int ANDs.
    """

    def __init__(self, pairs: Sequence[tuple[int, int]], n: int):
        self.n = n
        self.count = len(pairs)
        self.all = (1 << len(pairs)) - 1
        in_small = [0] * n
        in_big = [0] * n
        for i, (a, b) in enumerate(pairs):
            bit = 1 << i
            for v in members(a):
                in_small[v] |= bit
            for v in members(b):
                in_big[v] |= bit
        self.in_small = in_small
        self.in_big = in_big

    def select(self, small_sup: int = 0, small_sub: int | None = None,
               big_sup: int = 0, big_sub: int | None = None) -> int:
        full = (1 << self.n) - 1
        acc = self.all
        for v in members(small_sup):
            acc &= self.in_small[v]
            if not acc:
                return 0
        for v in members(big_sup):
            acc &= self.in_big[v]
            if not acc:
                return 0
        if small_sub is not None:
            for v in members(full & ~small_sub):
                acc &= ~self.in_small[v]
                if not acc:
                    return 0
        if big_sub is not None:
            for v in members(full & ~big_sub):
                acc &= ~self.in_big[v]
                if not acc:
                    return 0
        return acc & self.all

    def above(self, a: int, b: int) -> int:
        """Separations (C, D) with (a, b) <= (C, D)."""
        return self.select(small_sup=a, big_sub=b)

    def below(self, a: int, b: int) -> int:
        """Separations (C, D) with (C, D) <= (a, b)."""
        return self.select(small_sub=a, big_sup=b)
