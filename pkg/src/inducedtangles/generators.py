"""The instance families: principal tangles, the double-count example,
the tau_{m,k} tangles, the one-third bipartitions and grid tangles."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .core import (GroundSet, OrderSpec, OrientedSeparation, Separation,
                   SeparationSystem, bipartitions, full_mask, to_mask)
from .errors import InputError, InvariantViolation, ResourceError
from .orientations import Orientation, enum_budget


@dataclass(frozen=True)
class Instance:
    system: SeparationSystem
    orientation: Orientation
    generator: str
    params: dict = field(default_factory=dict)

    @property
    def provenance(self) -> dict:
        return {"generator": self.generator, "params": dict(self.params)}


def gen_principal(n: int, x: int) -> Instance:
    """All bipartitions of an n-set, each oriented with x on the big side."""
    if n < 2:
        raise InputError("n must be at least 2")
    if not 0 <= x < n:
        raise InputError(f"x={x} is not an element of a {n}-set")
    system = SeparationSystem(n, bipartitions(n))
    bit = 1 << x

    def toward_x(s: Separation) -> OrientedSeparation:
        a, b = s.sides
        return s.canonical if b & bit else s.canonical.inverse()

    return Instance(system, Orientation.from_rule(system, toward_x), "principal",
                    {"n": n, "x": x})


def _k_set_ground(m: int, k: int, copies: int):
    """Points are (k-subset, copy) pairs; returns the points and V_i masks."""
    points = [(c, j) for c in itertools.combinations(range(m), k) for j in range(copies)]
    families = [0] * m
    for idx, (c, _) in enumerate(points):
        for i in c:
            families[i] |= 1 << idx
    return points, families


def gen_intro(m: int) -> Instance:
    """One point per 3-set of m separations, lying on the big side of exactly those three."""
    if m < 3:
        raise InputError("m must be at least 3")
    points, bigs = _k_set_ground(m, 3, 1)
    n = len(points)
    full = full_mask(n)
    elements = [OrientedSeparation(full & ~b, b, n) for b in bigs]
    system = SeparationSystem(GroundSet(n, tuple("".join(map(str, c)) for c, _ in points)),
                              [e.separation() for e in elements])
    return Instance(system, Orientation.from_elements(system, elements), "intro", {"m": m})


def tau_mk_orient(s: Separation, families) -> OrientedSeparation | None:
    """Orient a bipartition toward the side containing some V_i; None if neither does."""
    a, b = s.sides
    for f in families:
        if not f & ~b:
            return s.canonical
        if not f & ~a:
            return s.canonical.inverse()
    return None


def gen_tau_mk(m: int, k: int, ell=None, full: bool = False,
               budget: int | None = None) -> Instance:
    """The tangle tau_{m,k} on the k-subsets of [m] under the crossing order.

    By default only the m maximal elements ``(V - V_i, V_i)`` are
    materialized; ``full=True`` builds every bipartition of crossing order
    below m (exponential in |V|, guarded by the enumeration budget).  With
    ``ell`` each k-subset contributes ``ceil(ell)`` points.
    """
    if not 3 <= k <= m:
        raise InputError(f"need 3 <= k <= m, got m={m}, k={k}")
    copies = 1
    if ell is not None:
        if ell < 1:
            raise InputError("ell must be at least 1")
        copies = math.ceil(ell)
    points, families = _k_set_ground(m, k, copies)
    n = len(points)
    labels = tuple("".join(map(str, c)) + (f".{j}" if copies > 1 else "") for c, j in points)
    ground = GroundSet(n, labels)
    order = OrderSpec.crossing(families)
    fm = full_mask(n)
    params = {"m": m, "k": k}
    if ell is not None:
        params["ell"] = ell
    if not full:
        elements = [OrientedSeparation(fm & ~f, f, n) for f in families]
        system = SeparationSystem(ground, [e.separation() for e in elements], order)
        return Instance(system, Orientation.from_elements(system, elements), "tau-mk", params)
    budget = enum_budget() if budget is None else budget
    if (1 << (n - 1)) > budget:
        raise ResourceError(f"2^{n - 1} bipartitions exceed budget {budget}")
    seps = [s for s in bipartitions(n) if _crossing(s, families) < m]
    system = SeparationSystem(ground, seps, order)
    tau = Orientation.from_rule(system, lambda s: tau_mk_orient(s, families))
    params["full"] = True
    return Instance(system, tau, "tau-mk", params)


def _crossing(s: Separation, families) -> int:
    a, b = s.sides
    return sum(1 for f in families if f & a and f & b)


def gen_thirds(n: int) -> Instance:
    """Bipartitions with a side smaller than n/3, oriented toward the larger side."""
    if n < 4:
        raise InputError("n must be at least 4")
    seps = []
    for s in bipartitions(n):
        a, b = s.sides
        if 3 * a.bit_count() < n or 3 * b.bit_count() < n:
            seps.append(s)
    system = SeparationSystem(n, seps)

    def toward_larger(s: Separation) -> OrientedSeparation:
        a, b = s.sides
        return s.canonical if a.bit_count() < b.bit_count() else s.canonical.inverse()

    return Instance(system, Orientation.from_rule(system, toward_larger), "thirds", {"n": n})


def grid_adjacency(rows: int, cols: int) -> list[int]:
    adj = [0] * (rows * cols)
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            for di, dj in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                a, b = i + di, j + dj
                if 0 <= a < rows and 0 <= b < cols:
                    adj[v] |= 1 << (a * cols + b)
    return adj


def components(mask: int, adj: list[int]) -> list[int]:
    out = []
    while mask:
        comp = frontier = mask & -mask
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                reach |= adj[low.bit_length() - 1]
            frontier = reach & mask & ~comp
            comp |= frontier
        out.append(comp)
        mask &= ~comp
    return out


def graph_separations(adj: list[int], max_order: int,
                      budget: int | None = None) -> list[Separation]:
    """Every separation {A, B} of the graph with ``|A & B| <= max_order``.

    For each separator Z, A - Z and B - Z are unions of components of G - Z.
    """
    n = len(adj)
    budget = enum_budget() if budget is None else budget
    count = sum(math.comb(n, z) for z in range(max_order + 1))
    if count > budget:
        raise ResourceError(f"{count} separators exceed budget {budget}")
    full = full_mask(n)
    out = set()
    for z in range(min(max_order, n) + 1):
        for sep in itertools.combinations(range(n), z):
            zm = to_mask(sep)
            comps = components(full & ~zm, adj)
            # fix the first component on the B side; the swap gives the same separation
            for bits in range(1 << max(len(comps) - 1, 0)):
                a = zm
                for i, c in enumerate(comps[1:]):
                    if bits >> i & 1:
                        a |= c
                b = (full & ~a) | zm
                out.add(Separation.of(a, b, n))
    return sorted(out, key=Separation.sort_key)


def gen_grid(n: int, budget: int | None = None) -> Instance:
    """Separations of order < 5 of the n x n grid, oriented toward the side with more vertices."""
    if n < 5:
        raise InputError("n must be at least 5")
    adj = grid_adjacency(n, n)
    seps = graph_separations(adj, 4, budget)
    labels = tuple(f"{i},{j}" for i in range(n) for j in range(n))
    system = SeparationSystem(GroundSet(n * n, labels), seps)

    def toward_heavier(s: Separation) -> OrientedSeparation:
        a, b = s.sides
        ca, cb = a.bit_count(), b.bit_count()
        if ca == cb:
            raise InvariantViolation(f"grid separation {s!r} has equal sides")
        return s.canonical if ca < cb else s.canonical.inverse()

    return Instance(system, Orientation.from_rule(system, toward_heavier), "grid", {"n": n})


GENERATORS = {
    "principal": gen_principal,
    "intro": gen_intro,
    "tau-mk": gen_tau_mk,
    "thirds": gen_thirds,
    "grid": gen_grid,
}
