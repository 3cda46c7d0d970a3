"""Weight functions that induce orientations, and how to find them.

A weight function ``w`` induces an orientation when ``w(A) < w(B)`` for
every ``(A, B)`` in it.  :func:`decide_induced` settles the question exactly
through an LP and returns a checkable certificate either way; the other
entry points are constructive extractors valid under extra hypotheses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (OrientedSeparation, SeparationSystem, full_mask, members,
                   separations_below, star_interior)
from .errors import InputError, InvariantViolation, ResourceError
from .exactlp import Feasible, Infeasible, solve_feasibility, verify_certificate
from .orientations import (Orientation, enum_budget, is_F_ell_tangle, is_profile,
                           is_regular, maximal_elements)


@dataclass(frozen=True)
class WeightFunction:
    """Non-negative rational weights indexed ``0..len-1``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise InputError("weights must be non-negative")
        object.__setattr__(self, "values", vals)

    @classmethod
    def indicator(cls, mask: int, n: int) -> WeightFunction:
        return cls(tuple(Fraction(mask >> i & 1) for i in range(n)))

    @classmethod
    def constant(cls, n: int, value=1) -> WeightFunction:
        return cls((Fraction(value),) * n)

    def __len__(self):
        return len(self.values)

    def __call__(self, mask: int) -> Fraction:
        return sum((self.values[i] for i in members(mask)), Fraction(0))

    def is_nonzero(self) -> bool:
        return any(self.values)

    def support(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values) if v)

    def as_set(self) -> int | None:
        """The set ``w^-1(1)`` if ``w`` is 0/1-valued, else None."""
        if all(v in (0, 1) for v in self.values):
            return self.support()
        return None

    def scaled(self, factor: Fraction) -> WeightFunction:
        return WeightFunction(tuple(v * factor for v in self.values))

    def __add__(self, other: WeightFunction) -> WeightFunction:
        if len(other) != len(self):
            raise InputError("weight functions over different domains")
        return WeightFunction(tuple(a + b for a, b in zip(self.values, other.values)))


def _check_domain(w: WeightFunction, n: int) -> None:
    if len(w) != n:
        raise InputError(f"weight function has {len(w)} values, ground set has {n}")


def orient_by_weight(w: WeightFunction, system: SeparationSystem):
    """Orient each separation toward its heavier side.

    Returns ``(elements, ties)``: the oriented separations in system order and
    the separations whose sides weigh the same, which are left unoriented.
    """
    _check_domain(w, system.n)
    elements, ties = [], []
    for s in system.separations:
        a, b = s.sides
        wa, wb = w(a), w(b)
        if wa < wb:
            elements.append(s.canonical)
        elif wb < wa:
            elements.append(s.canonical.inverse())
        else:
            ties.append(s)
    return elements, ties


def orientation_from_weight(w: WeightFunction, system: SeparationSystem) -> Orientation:
    elements, ties = orient_by_weight(w, system)
    if ties:
        raise InputError(f"weight function ties on {ties[0]!r}")
    return Orientation(system, [s.canonical == e for s, e in zip(system.separations, elements)])


def induces(w: WeightFunction, tau: Orientation | Iterable[OrientedSeparation]) -> bool:
    elems = list(tau)
    for e in elems:
        _check_domain(w, e.n)
        if not w(e.small) < w(e.big):
            return False
    return True


def set_induces(x: int, tau: Iterable[OrientedSeparation]) -> bool:
    return all((x & e.small).bit_count() < (x & e.big).bit_count() for e in tau)


def build_matrix(columns: Sequence[OrientedSeparation], n: int) -> list[list[Fraction]]:
    """The n x len(columns) matrix with ``(Q^T x)_j = w(B_j) - w(A_j)``."""
    one, zero = Fraction(1), Fraction(0)
    Q = []
    for v in range(n):
        bit = 1 << v
        row = []
        for e in columns:
            in_a, in_b = bool(e.small & bit), bool(e.big & bit)
            row.append(zero if in_a and in_b else one if in_b else -one)
        Q.append(row)
    return Q


@dataclass(frozen=True)
class Induced:
    weights: WeightFunction
    trivial: bool = False  # empty orientation, zero function by convention


@dataclass(frozen=True)
class NotInduced:
    """A non-zero weighting of ``columns`` that no point of V favours.

    For every v, the witness weight of the columns having v on the small
    side is at least that of the columns having v on the big side.
    """

    witness: WeightFunction
    columns: tuple[OrientedSeparation, ...] = field(repr=False)


InduceOutcome = Induced | NotInduced


def decide_induced(tau: Orientation, use_maximal: bool = True) -> InduceOutcome:
    """Decide whether some weight function induces ``tau``.

    With ``use_maximal`` the LP only has a column per maximal element, which
    suffices because inducing the maximal elements induces everything below.
    """
    n = tau.n
    if len(tau) == 0:
        return Induced(WeightFunction.constant(n, 0), trivial=True)
    columns = tuple(maximal_elements(tau) if use_maximal else tau.elements)
    Q = build_matrix(columns, n)
    ones = [Fraction(1)] * len(columns)
    result = solve_feasibility(Q, ones)
    if not verify_certificate(Q, ones, result):
        raise InvariantViolation("LP certificate failed re-verification")
    if isinstance(result, Feasible):
        w = WeightFunction(result.x)
        if not induces(w, tau):
            raise InvariantViolation("LP solution does not induce the orientation")
        return Induced(w)
    return NotInduced(WeightFunction(result.y), columns)


def check_not_induced(outcome: NotInduced, n: int) -> bool:
    """Independent re-check of a NotInduced witness."""
    y = outcome.witness
    if len(y) != len(outcome.columns) or not y.is_nonzero():
        return False
    for v in range(n):
        bit = 1 << v
        on_small = sum((y.values[j] for j, e in enumerate(outcome.columns) if e.small & bit),
                       Fraction(0))
        on_big = sum((y.values[j] for j, e in enumerate(outcome.columns) if e.big & bit),
                     Fraction(0))
        if on_small < on_big:
            return False
    return True


def margin(w: WeightFunction, tau: Iterable[OrientedSeparation]) -> Fraction | None:
    gaps = [w(e.big) - w(e.small) for e in tau]
    return min(gaps) if gaps else None


def normalize_inducer(w: WeightFunction, tau: Orientation, K=1) -> WeightFunction:
    """An integer-valued inducer of ``tau`` with margin at least ``K``."""
    K = Fraction(K)
    if K <= 0:
        raise InputError("K must be positive")
    if not induces(w, tau):
        raise InputError("weight function does not induce the orientation")
    low = margin(w, tau)
    scaled = w if low is None or low >= K else w.scaled(K / low)
    lcm = math.lcm(*(v.denominator for v in scaled.values)) if len(scaled) else 1
    out = scaled.scaled(Fraction(lcm))
    assert all(v.denominator == 1 for v in out.values)
    return out


@dataclass(frozen=True)
class DenseResult:
    weights: WeightFunction
    path: str  # "V", "B1", "B1&B2", "counting" or "lp-fallback"

    @property
    def as_set(self) -> int | None:
        return self.weights.as_set() if self.path in ("V", "B1", "B1&B2") else None


def dense_tangle_inducer(tau: Orientation, ell) -> DenseResult:
    """Inducer for an F^ell-tangle of bipartitions with ``ell >= |V|/8``.

    Tries V, then the big side of some element with ``|B1| <= |V|/2``, then
    ``B1 & B2``; when ``ell > |V|/8`` one of these sets always works.  In the
    boundary case the count of balanced elements having v on their big side,
    shifted by a constant, is tried before falling back to the LP.
    """
    ell = Fraction(ell)
    n = tau.n
    if 8 * ell < n:
        raise InputError(f"ell = {ell} is below |V|/8 = {Fraction(n, 8)}")
    if not is_F_ell_tangle(tau, ell):
        raise InputError(f"orientation is not an F^{ell}-tangle")
    elems = tau.elements
    full = full_mask(n)

    def as_result(x: int, path: str) -> DenseResult:
        return DenseResult(WeightFunction.indicator(x, n), path)

    if set_induces(full, elems):
        return as_result(full, "V")
    first = next(e for e in elems if 2 * e.big.bit_count() <= n)
    b1 = first.big
    if set_induces(b1, elems):
        return as_result(b1, "B1")
    for e2 in elems:
        if (b1 & e2.small).bit_count() >= (b1 & e2.big).bit_count():
            if set_induces(b1 & e2.big, elems):
                return as_result(b1 & e2.big, "B1&B2")

    balanced = [e for e in elems if e.small.bit_count() == e.big.bit_count()]
    counts = [sum(1 for e in balanced if e.big >> v & 1) for v in range(n)]
    w = WeightFunction(tuple(counts))
    shift = 1 + max([0] + [w(e.small) - w(e.big) for e in elems])
    w = w + WeightFunction.constant(n, shift)
    if induces(w, elems):
        return DenseResult(w, "counting")
    outcome = decide_induced(tau)
    if not isinstance(outcome, Induced):
        raise InvariantViolation("F^ell-tangle with ell >= |V|/8 is not induced")
    return DenseResult(outcome.weights, "lp-fallback")


@dataclass(frozen=True)
class StarInteriorResult:
    interior: int
    star: tuple[OrientedSeparation, ...]
    steps: int


def _require_regular_2k_profile(tau: Orientation, k: int) -> None:
    system = tau.system
    n = system.n
    if k < 1:
        raise InputError("k must be at least 1")
    if n < 2 * k:
        raise InputError(f"|V| = {n} < 2k = {2 * k}: no regular {2 * k}-profile exists")
    if system.order.kind != "standard":
        raise InputError("star-interior extraction requires the standard order")
    expected = set(separations_below(n, 2 * k))
    if set(system.separations) != expected:
        raise InputError(f"system is not the set of all separations of order < {2 * k}")
    if not is_regular(tau):
        raise InputError("orientation is not regular")
    if not is_profile(tau):
        raise InputError("orientation is not a profile")


def star_interior_inducer(tau: Orientation, k: int, check: bool = True) -> StarInteriorResult:
    """A set of size >= 2k inducing the order-<k part of a regular 2k-profile.

    Starting from the empty star (interior V), repeatedly take a lowest-order
    ``(A, B)`` of order < k with ``|X & A| >= k`` and replace the star by
    ``{(A, B)} + {(B & C, A | D) : (C, D) in star}``; the interior strictly
    shrinks, and when no such ``(A, B)`` is left the interior induces.
    """
    if check:
        _require_regular_2k_profile(tau, k)
    n = tau.n
    system = tau.system
    orders = [system.order_of(s) for s in system.separations]
    low = [(orders[i], i, e) for i, e in enumerate(tau.elements) if orders[i] < k]
    star: list[OrientedSeparation] = []
    interior = full_mask(n)
    for step in range(n + 1):
        bad = [(o, i, e) for o, i, e in low if (interior & e.small).bit_count() >= k]
        if not bad:
            break
        _, _, chosen = min(bad, key=lambda t: (t[0], t[1]))
        a, b = chosen.small, chosen.big
        new = [chosen] + [OrientedSeparation(b & c.small, a | c.big, n) for c in star]
        new = list(dict.fromkeys(new))
        for e in new:
            if e not in tau:
                raise InvariantViolation(f"improved star member {e!r} is not in the profile")
        ok, new_interior = star_interior(new, n)
        if not ok:
            raise InvariantViolation("improvement step did not produce a star")
        if new_interior.bit_count() >= interior.bit_count():
            raise InvariantViolation("star interior did not shrink")
        star, interior = new, new_interior
    else:
        raise InvariantViolation("star improvement did not terminate")
    restricted = [e for o, i, e in low]
    if interior.bit_count() < 2 * k or not set_induces(interior, restricted):
        raise InvariantViolation("star interior does not induce the order-<k restriction")
    return StarInteriorResult(interior, tuple(star), step)


def lex_subsets(n: int):
    """Subsets of range(n) as bitmasks, in lexicographic order of sorted tuples."""
    def rec(prefix: int, start: int):
        yield prefix
        for i in range(start, n):
            yield from rec(prefix | 1 << i, i + 1)
    return rec(0, 0)


def brute_force_set_inducer(tau: Orientation, budget: int | None = None) -> int | None:
    """The lexicographically first ``X`` whose indicator induces ``tau``."""
    budget = enum_budget() if budget is None else budget
    n = tau.n
    if (1 << n) > budget:
        raise ResourceError(f"2^{n} subsets exceed budget {budget}")
    elems = tau.elements
    for x in lex_subsets(n):
        if set_induces(x, elems):
            return x
    return None
