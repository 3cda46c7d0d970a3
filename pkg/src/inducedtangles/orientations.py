"""Orientations of separation systems and the axioms they may satisfy."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .core import OrientedSeparation, Separation, SeparationSystem, full_mask, meet
from .covers import ElementIndex, find_cover, inclusion_maximal, iter_bits
from .errors import InputError, ResourceError

DEFAULT_ENUM_BUDGET = 1 << 22


def enum_budget() -> int:
    return int(os.environ.get("INDUCEDTANGLES_ENUM_BUDGET", DEFAULT_ENUM_BUDGET))


class Verdict(NamedTuple):
    """Outcome of an axiom check; falsy exactly when the axiom fails."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


class Orientation:
    """One chosen orientation per separation of ``system``.

    ``choice[i]`` is True when separation ``i`` is oriented as its canonical
    pair (small, big) and False for the inverse.
    """

    __slots__ = ("system", "choice", "_elements")

    def __init__(self, system: SeparationSystem, choice: Sequence[bool]):
        if len(choice) != len(system):
            raise InputError("orientation must choose exactly one side per separation")
        self.system = system
        self.choice = tuple(bool(c) for c in choice)
        self._elements = None

    @classmethod
    def from_elements(cls, system: SeparationSystem,
                      elements: Iterable[OrientedSeparation]) -> Orientation:
        choice: list[bool | None] = [None] * len(system)
        for e in elements:
            try:
                i = system.index(e)
            except KeyError:
                raise InputError(f"{e!r} is not a separation of the system") from None
            fwd = system.separations[i].canonical == e
            if choice[i] is not None and choice[i] != fwd:
                raise InputError(f"both orientations of {system.separations[i]!r} given")
            choice[i] = fwd
        if any(c is None for c in choice):
            missing = system.separations[choice.index(None)]
            raise InputError(f"no orientation given for {missing!r}")
        return cls(system, choice)

    @classmethod
    def from_rule(cls, system: SeparationSystem,
                  rule: Callable[[Separation], OrientedSeparation]) -> Orientation:
        return cls.from_elements(system, (rule(s) for s in system.separations))

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def elements(self) -> tuple[OrientedSeparation, ...]:
        if self._elements is None:
            self._elements = tuple(
                s.canonical if c else s.canonical.inverse()
                for s, c in zip(self.system.separations, self.choice))
        return self._elements

    def pairs(self) -> list[tuple[int, int]]:
        return [(e.small, e.big) for e in self.elements]

    def __iter__(self) -> Iterator[OrientedSeparation]:
        return iter(self.elements)

    def __len__(self):
        return len(self.choice)

    def __contains__(self, e: OrientedSeparation) -> bool:
        if e not in self.system:
            return False
        return self.elements[self.system.index(e)] == e

    def oriented(self, s: Separation) -> OrientedSeparation:
        return self.elements[self.system.index(s)]

    def restrict(self, sub: SeparationSystem) -> Orientation:
        return Orientation.from_elements(sub, (self.oriented(s) for s in sub.separations))

    def extends_to(self, other: Orientation) -> bool:
        """Whether this orientation is a subset of ``other``."""
        return all(e in other for e in self.elements)

    def __eq__(self, other):
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.system == other.system and self.choice == other.choice

    def __hash__(self):
        return hash((self.system.separations, self.choice))

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.elements)) + "}"


def _index(tau: Orientation) -> ElementIndex:
    return ElementIndex(tau.pairs(), tau.n)


def is_consistent(tau: Orientation) -> Verdict:
    """No r, s in tau with distinct underlying separations and inverse(r) < s."""
    elems = tau.elements
    idx = _index(tau)
    for i, r in enumerate(elems):
        # s >= inverse(r) = (r.big, r.small)
        cand = idx.above(r.big, r.small) & ~(1 << i)
        if cand:
            j = next(iter_bits(cand))
            return Verdict(False, (r, elems[j]))
    return Verdict(True)


def is_regular(tau: Orientation) -> Verdict:
    for e in tau.elements:
        if e.is_cosmall():
            return Verdict(False, (e,))
    return Verdict(True)


def is_profile(tau: Orientation) -> Verdict:
    """Consistent, and no distinct s, t in tau with inverse(s) ^ inverse(t) in tau."""
    cons = is_consistent(tau)
    if not cons:
        return cons
    elems = tau.elements
    idx = _index(tau)
    full = full_mask(tau.n)
    for m in elems:
        m1, m2 = m.small, m.big
        # s with inverse(s) >= m: big side contains m1, small side within m2
        cand = idx.select(big_sup=m1, small_sub=m2)
        for i in iter_bits(cand):
            s = elems[i]
            # t must have big side avoiding s.big - m1 and small side covering m2 - s.small
            partners = idx.select(small_sup=m2 & ~s.small, big_sub=full & ~(s.big & ~m1))
            partners &= cand
            partners &= ~(1 << i)
            for j in iter_bits(partners):
                t = elems[j]
                if meet(s.inverse(), t.inverse()) == m:
                    a, b = (s, t) if i < j else (t, s)
                    return Verdict(False, (a, b, m))
    return Verdict(True)


def _small_side_cover(tau: Orientation, limit: int) -> list[OrientedSeparation] | None:
    elems = tau.elements
    smalls = [e.small for e in elems]
    keep = inclusion_maximal(smalls)
    found = find_cover([smalls[i] for i in keep], full_mask(tau.n), limit)
    if found is None:
        return None
    return [elems[keep[i]] for i in found]


def is_tangle(tau: Orientation) -> Verdict:
    """Consistent, and no three (not necessarily distinct) small sides cover V."""
    cons = is_consistent(tau)
    if not cons:
        return cons
    cover = _small_side_cover(tau, 3)
    if cover is not None:
        cover = cover + [cover[-1]] * (3 - len(cover))
        return Verdict(False, tuple(cover))
    return Verdict(True)


@dataclass(frozen=True)
class AxiomReport:
    consistent: bool
    profile: bool
    regular: bool
    tangle: bool
    witnesses: dict


def axiom_report(tau: Orientation) -> AxiomReport:
    checks = {
        "consistent": is_consistent(tau),
        "profile": is_profile(tau),
        "regular": is_regular(tau),
        "tangle": is_tangle(tau),
    }
    return AxiomReport(**{k: v.ok for k, v in checks.items()},
                       witnesses={k: v.witness for k, v in checks.items() if not v})


def _require_bipartitions(tau: Orientation) -> None:
    for s in tau.system.separations:
        if not s.is_bipartition():
            raise InputError(f"{s!r} is not a bipartition")


def max_F_ell(tau: Orientation) -> int | None:
    """Smallest big-side intersection over all triples of tau.

    ``None`` for an empty orientation (every threshold is met).
    """
    _require_bipartitions(tau)
    bigs = [e.big for e in tau.elements]
    if not bigs:
        return None
    # inclusion-minimal big sides are the complements of maximal small sides
    full = full_mask(tau.n)
    keep = inclusion_maximal([full & ~b for b in bigs])
    cands = [bigs[i] for i in keep]
    best = None
    for b1, b2, b3 in itertools.combinations_with_replacement(cands, 3):
        size = (b1 & b2 & b3).bit_count()
        if best is None or size < best:
            best = size
    return best


def is_F_ell_tangle(tau: Orientation, ell) -> bool:
    ell = Fraction(ell)
    if ell < 0:
        raise InputError("ell must be non-negative")
    star = max_F_ell(tau)
    if not is_consistent(tau):
        return False
    return star is None or star >= ell


def maximal_elements(tau: Orientation) -> list[OrientedSeparation]:
    """The elements of tau not strictly below another element of tau."""
    elems = tau.elements
    idx = _index(tau)
    out = []
    for i, e in enumerate(elems):
        if not idx.above(e.small, e.big) & ~(1 << i):
            out.append(e)
    return out


# -- brute-force enumeration -------------------------------------------------

FILTERS = ("none", "consistent", "profile", "regular", "regular-profile", "tangle")


def _nogoods(system: SeparationSystem, flt: str) -> list[tuple[tuple[int, bool], ...]]:
    """Forbidden partial assignments (separation index, choice) for an axiom."""
    seps = system.separations
    full = full_mask(system.n)
    opts = [[(i, c, s.canonical if c else s.canonical.inverse()) for c in (True, False)]
            for i, s in enumerate(seps)]
    flat = [o for group in opts for o in group]
    out = []

    def add(*lits):
        merged: dict[int, bool] = {}
        for i, c in lits:
            if merged.get(i, c) != c:
                return
            merged[i] = c
        out.append(tuple(sorted(merged.items())))

    if flt in ("regular", "regular-profile"):
        for i, c, e in flat:
            if e.is_cosmall():
                add((i, c))
    if flt in ("consistent", "profile", "regular-profile", "tangle"):
        for (i, ci, r), (j, cj, s) in itertools.permutations(flat, 2):
            if i != j and r.inverse() < s:
                add((i, ci), (j, cj))
    if flt in ("profile", "regular-profile"):
        for (i, ci, s), (j, cj, t) in itertools.combinations(flat, 2):
            if i == j:
                continue
            m = meet(s.inverse(), t.inverse())
            if m in system:
                k = system.index(m)
                ck = seps[k].canonical == m
                add((i, ci), (j, cj), (k, ck))
    if flt == "tangle":
        for trio in itertools.combinations_with_replacement(flat, 3):
            if (trio[0][2].small | trio[1][2].small | trio[2][2].small) == full:
                add(*((i, c) for i, c, _ in trio))
    return out


def enumerate_orientations(system: SeparationSystem,
                           filter: str | Callable[[Orientation], bool] | None = "none",
                           budget: int | None = None) -> Iterator[Orientation]:
    """Yield every orientation of ``system`` passing ``filter``.

    Named filters are decided by backtracking over forbidden partial
    assignments; a callable filter is applied to all ``2^|S|`` orientations.
    The degenerate separation, having a single orientation, is enumerated once.
    """
    budget = enum_budget() if budget is None else budget
    seps = system.separations
    fixed = [s.canonical.is_degenerate() for s in seps]
    if filter is None:
        filter = "none"
    if callable(filter) or filter == "none":
        free = [i for i, f in enumerate(fixed) if not f]
        if (1 << len(free)) > budget:
            raise ResourceError(f"2^{len(free)} orientations exceed budget {budget}")
        for bits in itertools.product((True, False), repeat=len(free)):
            choice = [True] * len(seps)
            for i, b in zip(free, bits):
                choice[i] = b
            tau = Orientation(system, choice)
            if filter == "none" or filter(tau):
                yield tau
        return
    if filter not in FILTERS:
        raise InputError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")
    by_last: list[list[tuple]] = [[] for _ in seps]
    for ng in _nogoods(system, filter):
        by_last[max(i for i, _ in ng)].append(ng)
    assign: list[bool] = [True] * len(seps)
    nodes = 0

    def rec(pos: int):
        nonlocal nodes
        if pos == len(seps):
            yield Orientation(system, assign)
            return
        for c in ((True,) if fixed[pos] else (True, False)):
            nodes += 1
            if nodes > budget:
                raise ResourceError(f"enumeration visited more than {budget} nodes")
            assign[pos] = c
            if all(any(assign[i] != v for i, v in ng) for ng in by_last[pos]):
                yield from rec(pos + 1)
        assign[pos] = True

    yield from rec(0)
