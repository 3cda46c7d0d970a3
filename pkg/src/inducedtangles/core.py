"""Set separations of a finite ground set and their lattice structure.

Sides are stored as ``int`` bitmasks over the element indices ``0..n-1``;
bit ``i`` set means element ``i`` belongs to the side.  Everything here is
immutable.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 0:
            raise InputError(f"negative element index {i}")
        m |= 1 << i
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted element indices of a bitmask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def fmt_side(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise InputError("ground set must have at least one element")
        if self.labels is not None and len(self.labels) != self.size:
            raise InputError("label count does not match ground set size")

    @property
    def full(self) -> int:
        return full_mask(self.size)


@dataclass(frozen=True)
class OrientedSeparation:
    """The ordered pair (small, big) of sides; ``small | big`` is all of V."""

    small: int
    big: int
    n: int

    def __post_init__(self):
        full = full_mask(self.n)
        if (self.small | self.big) != full:
            raise InputError(
                f"sides {fmt_side(self.small)}, {fmt_side(self.big)} do not cover V")
        if (self.small | self.big) & ~full:
            raise InputError("side contains an element outside the ground set")

    @classmethod
    def of(cls, small: Iterable[int], big: Iterable[int], n: int) -> OrientedSeparation:
        return cls(to_mask(small), to_mask(big), n)

    def inverse(self) -> OrientedSeparation:
        return OrientedSeparation(self.big, self.small, self.n)

    def separation(self) -> Separation:
        return Separation.of(self.small, self.big, self.n)

    @property
    def separator(self) -> int:
        return self.small & self.big

    def is_small(self) -> bool:
        return self.big == full_mask(self.n)

    def is_cosmall(self) -> bool:
        return self.small == full_mask(self.n)

    def is_degenerate(self) -> bool:
        return self.small == self.big

    def __le__(self, other: OrientedSeparation) -> bool:
        _same_ground(self, other)
        return not (self.small & ~other.small) and not (other.big & ~self.big)

    def __lt__(self, other: OrientedSeparation) -> bool:
        return self <= other and self != other

    def __ge__(self, other: OrientedSeparation) -> bool:
        return other <= self

    def __gt__(self, other: OrientedSeparation) -> bool:
        return other < self

    def __repr__(self):
        return f"({fmt_side(self.small)}, {fmt_side(self.big)})"


def _same_ground(r: OrientedSeparation, s: OrientedSeparation) -> None:
    if r.n != s.n:
        raise InputError(f"ground sets differ: {r.n} vs {s.n} elements")


def _lex_key(mask: int) -> tuple[int, ...]:
    return members(mask)


@dataclass(frozen=True)
class Separation:
    """An unordered separation, stored in its canonical orientation.

    The canonical orientation is the one whose first side is
    lexicographically least as a sorted index sequence.
    """

    canonical: OrientedSeparation

    @classmethod
    def of(cls, a: int, b: int, n: int) -> Separation:
        if _lex_key(b) < _lex_key(a):
            a, b = b, a
        return cls(OrientedSeparation(a, b, n))

    @classmethod
    def from_sets(cls, a: Iterable[int], b: Iterable[int], n: int) -> Separation:
        return cls.of(to_mask(a), to_mask(b), n)

    @property
    def n(self) -> int:
        return self.canonical.n

    @property
    def sides(self) -> tuple[int, int]:
        return self.canonical.small, self.canonical.big

    def orientations(self) -> tuple[OrientedSeparation, OrientedSeparation]:
        return self.canonical, self.canonical.inverse()

    def is_bipartition(self) -> bool:
        return not (self.canonical.small & self.canonical.big)

    def sort_key(self) -> tuple:
        return (_lex_key(self.canonical.small), _lex_key(self.canonical.big))

    def __repr__(self):
        a, b = self.sides
        return f"{{{fmt_side(a)}, {fmt_side(b)}}}"


class Relation(enum.Enum):
    LT = "lt"
    GT = "gt"
    EQ = "eq"
    INCOMPARABLE = "incomparable"


def compare(r: OrientedSeparation, s: OrientedSeparation) -> Relation:
    _same_ground(r, s)
    if r == s:
        return Relation.EQ
    if r <= s:
        return Relation.LT
    if s <= r:
        return Relation.GT
    return Relation.INCOMPARABLE


def join(r: OrientedSeparation, s: OrientedSeparation) -> OrientedSeparation:
    _same_ground(r, s)
    return OrientedSeparation(r.small | s.small, r.big & s.big, r.n)


def meet(r: OrientedSeparation, s: OrientedSeparation) -> OrientedSeparation:
    _same_ground(r, s)
    return OrientedSeparation(r.small & s.small, r.big | s.big, r.n)


def classify(s: OrientedSeparation) -> frozenset[str]:
    flags = set()
    if s.is_small():
        flags.add("small")
    if s.is_cosmall():
        flags.add("cosmall")
    if s.is_degenerate():
        flags.add("degenerate")
    return frozenset(flags)


@dataclass(frozen=True)
class OrderSpec:
    """How separations are assigned their order.

    ``standard`` is the separator size, ``crossing`` counts the families that
    meet both sides, ``explicit`` is a lookup table.
    """

    kind: str = "standard"
    families: tuple[int, ...] = ()
    table: Mapping[Separation, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("standard", "crossing", "explicit"):
            raise InputError(f"unknown order kind {self.kind!r}")
        if self.kind == "explicit":
            if self.table is None:
                raise InputError("explicit order needs a table")
            if any(v < 0 for v in self.table.values()):
                raise InputError("orders must be non-negative")

    @classmethod
    def standard(cls) -> OrderSpec:
        return cls("standard")

    @classmethod
    def crossing(cls, families: Iterable[int]) -> OrderSpec:
        return cls("crossing", tuple(families))

    @classmethod
    def explicit(cls, table: Mapping[Separation, int]) -> OrderSpec:
        return cls("explicit", (), dict(table))

    def __eq__(self, other):
        if not isinstance(other, OrderSpec):
            return NotImplemented
        return (self.kind, self.families, self.table) == (other.kind, other.families, other.table)

    def __hash__(self):
        return hash((self.kind, self.families))


def order(s: Separation | OrientedSeparation, spec: OrderSpec) -> int:
    if isinstance(s, OrientedSeparation):
        s = s.separation()
    a, b = s.sides
    if spec.kind == "standard":
        return (a & b).bit_count()
    if spec.kind == "crossing":
        return sum(1 for f in spec.families if f & a and f & b)
    try:
        return spec.table[s]
    except KeyError:
        raise InputError(f"explicit order table has no entry for {s!r}") from None


class SeparationSystem:
    """A deduplicated, canonically sorted family of separations of ``ground``."""

    __slots__ = ("ground", "separations", "order", "_index")

    def __init__(self, ground: GroundSet | int, separations: Iterable[Separation],
                 order: OrderSpec | None = None):
        if isinstance(ground, int):
            ground = GroundSet(ground)
        seps = set()
        for s in separations:
            if isinstance(s, OrientedSeparation):
                s = s.separation()
            if s.n != ground.size:
                raise InputError("separation ground set differs from system ground set")
            seps.add(s)
        self.ground = ground
        self.separations: tuple[Separation, ...] = tuple(sorted(seps, key=Separation.sort_key))
        self.order = order or OrderSpec.standard()
        self._index = {s: i for i, s in enumerate(self.separations)}
        if self.order.kind == "explicit":
            missing = [s for s in self.separations if s not in self.order.table]
            if missing:
                raise InputError(f"explicit order table has no entry for {missing[0]!r}")

    @property
    def n(self) -> int:
        return self.ground.size

    def __len__(self):
        return len(self.separations)

    def __iter__(self):
        return iter(self.separations)

    def __contains__(self, s):
        if isinstance(s, OrientedSeparation):
            s = s.separation()
        return s in self._index

    def index(self, s: Separation | OrientedSeparation) -> int:
        if isinstance(s, OrientedSeparation):
            s = s.separation()
        return self._index[s]

    def order_of(self, s: Separation | OrientedSeparation) -> int:
        return order(s, self.order)

    def __eq__(self, other):
        if not isinstance(other, SeparationSystem):
            return NotImplemented
        return (self.ground, self.separations, self.order) == (
            other.ground, other.separations, other.order)

    def __repr__(self):
        return f"SeparationSystem(n={self.n}, |S|={len(self)}, order={self.order.kind})"


def restrict_to_Sk(system: SeparationSystem, k: int) -> SeparationSystem:
    """The separations of ``system`` of order less than ``k``."""
    if k < 0:
        raise InputError("k must be non-negative")
    keep = [s for s in system.separations if system.order_of(s) < k]
    return SeparationSystem(system.ground, keep, system.order)


def star_interior(sigma: Iterable[OrientedSeparation], n: int) -> tuple[bool, int]:
    """Whether ``sigma`` is a star, and the intersection of its big sides."""
    sigma = list(dict.fromkeys(sigma))
    interior = full_mask(n)
    for s in sigma:
        if s.n != n:
            raise InputError("star member over a different ground set")
        interior &= s.big
    if any(s.is_degenerate() for s in sigma):
        return False, interior
    for r, s in itertools.combinations(sigma, 2):
        if not r <= s.inverse():
            return False, interior
    return True, interior


def check_submodular(system: SeparationSystem
                     ) -> tuple[bool, tuple[OrientedSeparation, OrientedSeparation] | None]:
    """Check ``|r v s| + |r ^ s| <= |r| + |s|`` over all orientations of all pairs.

    Returns the verdict and the first violating pair of orientations.
    """
    spec = system.order
    seps = system.separations
    for i, r in enumerate(seps):
        for s in seps[i:]:
            base = order(r, spec) + order(s, spec)
            for ro in r.orientations():
                for so in s.orientations():
                    total = order(join(ro, so), spec) + order(meet(ro, so), spec)
                    if total > base:
                        return False, (ro, so)
    return True, None


def all_separations(n: int) -> list[Separation]:
    """Every separation of an n-set, i.e. the universe U(V)."""
    full = full_mask(n)
    out = set()
    for assignment in itertools.product((0, 1, 2), repeat=n):
        a = b = 0
        for i, where in enumerate(assignment):
            if where != 1:
                a |= 1 << i
            if where != 0:
                b |= 1 << i
        out.add(Separation.of(a, b, n))
    assert all((s.sides[0] | s.sides[1]) == full for s in out)
    return sorted(out, key=Separation.sort_key)


def bipartitions(n: int) -> list[Separation]:
    """All unordered bipartitions of an n-set, including {emptyset, V}."""
    full = full_mask(n)
    out = {Separation.of(a, full & ~a, n) for a in range(1 << n)}
    return sorted(out, key=Separation.sort_key)


def separations_below(n: int, k: int) -> list[Separation]:
    """Separations of an n-set whose separator has fewer than ``k`` elements."""
    full = full_mask(n)
    out = set()
    for z in range(min(k, n + 1)):
        for sep in itertools.combinations(range(n), z):
            zm = to_mask(sep)
            rest = members(full & ~zm)
            for bits in range(1 << len(rest)):
                a = zm | to_mask(rest[i] for i in range(len(rest)) if bits >> i & 1)
                b = zm | (full & ~a)
                out.add(Separation.of(a, b, n))
    return sorted(out, key=Separation.sort_key)


def system_from_pairs(n: int, pairs: Sequence[tuple[Iterable[int], Iterable[int]]],
                      order: OrderSpec | None = None) -> SeparationSystem:
    return SeparationSystem(n, [Separation.from_sets(a, b, n) for a, b in pairs], order)
