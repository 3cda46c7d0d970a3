"""Resilience and the k-locally ell-induced criterion."""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .core import OrientedSeparation, full_mask
from .covers import find_cover, inclusion_maximal
from .errors import InputError, InvariantViolation, ResourceError
from .exactlp import Infeasible, solve_feasibility, verify_certificate
from .inducers import WeightFunction, build_matrix, induces
from .orientations import Orientation, maximal_elements

DEFAULT_LP_BUDGET = 5000


def lp_budget() -> int:
    return int(os.environ.get("INDUCEDTANGLES_LP_BUDGET", DEFAULT_LP_BUDGET))


@dataclass(frozen=True)
class ResilienceValue:
    kind: str  # "finite", "at_least" or "infinite"
    k: int | None = None
    cover: tuple[OrientedSeparation, ...] = ()

    @classmethod
    def finite(cls, k: int, cover=()) -> ResilienceValue:
        return cls("finite", k, tuple(cover))

    @classmethod
    def at_least(cls, k: int) -> ResilienceValue:
        return cls("at_least", k)

    @classmethod
    def infinite(cls) -> ResilienceValue:
        return cls("infinite")

    def __str__(self):
        if self.kind == "finite":
            return str(self.k)
        if self.kind == "at_least":
            return f">={self.k}"
        return "infinite"

    def is_at_least(self, k: int) -> bool:
        """Whether the orientation is known to be k-resilient."""
        return self.kind == "infinite" or self.k >= k


def _maximal_small_sides(tau: Orientation):
    mu = maximal_elements(tau)
    keep = inclusion_maximal([e.small for e in mu])
    return mu, [mu[i] for i in keep]


def resilience(tau: Orientation, cap: int | None = None) -> ResilienceValue:
    """Largest k such that no k elements of tau have small sides covering V.

    Only maximal elements need to be searched.  Covers are looked for up to
    size ``cap`` (default: the number of maximal elements, which decides the
    value exactly).
    """
    mu, reps = _maximal_small_sides(tau)
    cap = len(mu) if cap is None else cap
    if cap < 1:
        raise InputError("cap must be at least 1")
    full = full_mask(tau.n)
    found = find_cover([e.small for e in reps], full, cap)
    if found is not None:
        return ResilienceValue.finite(len(found) - 1, [reps[i] for i in found])
    union = 0
    for e in reps:
        union |= e.small
    if union != full:
        return ResilienceValue.infinite()
    return ResilienceValue.at_least(cap)


def is_k_resilient(tau: Orientation, k: int) -> bool:
    _, reps = _maximal_small_sides(tau)
    return find_cover([e.small for e in reps], full_mask(tau.n), k) is None


@dataclass(frozen=True)
class LocalWitnessSet:
    """One weight function per k-subset of the maximal elements.

    Keys are index tuples into ``maximal``; when there are at most k maximal
    elements the single key is the full index tuple.
    """

    k: int
    ell: Fraction
    maximal: tuple[OrientedSeparation, ...]
    witnesses: dict[tuple[int, ...], WeightFunction]


@dataclass(frozen=True)
class LocalCounterexample:
    """A subset of maximal elements for which no local witness exists.

    ``farkas`` weights the maximal elements and certifies infeasibility of
    the local system.
    """

    k: int
    ell: Fraction
    maximal: tuple[OrientedSeparation, ...]
    subset: tuple[int, ...]
    farkas: tuple[Fraction, ...]


def local_rhs(m: int, subset, ell: Fraction) -> list[Fraction]:
    chosen = set(subset)
    return [Fraction(1) if j in chosen else -ell for j in range(m)]


def local_subsets(m: int, k: int):
    if m <= k:
        return [tuple(range(m))]
    return itertools.combinations(range(m), k)


def check_local_witness(w: WeightFunction, subset, tau: Orientation, ell) -> bool:
    """Conditions (margin >= 1 on the subset, deficit <= ell on all of tau)."""
    mu = maximal_elements(tau)
    ell = Fraction(ell)
    if any(w(mu[j].big) - w(mu[j].small) < 1 for j in subset):
        return False
    return all(w(e.small) - w(e.big) <= ell for e in tau.elements)


def is_locally_induced(tau: Orientation, k: int, ell, budget: int | None = None
                       ) -> LocalWitnessSet | LocalCounterexample:
    """Solve the local LP for every k-subset of maximal elements.

    Returns all witnesses, or the first subset (in lexicographic order)
    whose LP is infeasible together with its Farkas certificate.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    ell = Fraction(ell)
    if ell < 0:
        raise InputError("ell must be non-negative")
    mu = tuple(maximal_elements(tau))
    m = len(mu)
    budget = lp_budget() if budget is None else budget
    total = 1 if m <= k else math.comb(m, k)
    if total > budget:
        raise ResourceError(f"{total} local LPs exceed budget {budget}")
    if m == 0:
        return LocalWitnessSet(k, ell, mu, {(): WeightFunction.constant(tau.n, 0)})
    Q = build_matrix(mu, tau.n)
    witnesses = {}
    for subset in local_subsets(m, k):
        b = local_rhs(m, subset, ell)
        result = solve_feasibility(Q, b)
        if not verify_certificate(Q, b, result):
            raise InvariantViolation("local LP certificate failed re-verification")
        if isinstance(result, Infeasible):
            return LocalCounterexample(k, ell, mu, subset, result.y)
        w = WeightFunction(result.x)
        if not check_local_witness(w, subset, tau, ell):
            raise InvariantViolation("local witness violates its conditions")
        witnesses[subset] = w
    return LocalWitnessSet(k, ell, mu, witnesses)


def combination_suffices(k: int, m: int, ell) -> bool:
    """Whether ``k > m / (1 + 1/ell)`` (or ``k >= m``), so summing local witnesses induces."""
    ell = Fraction(ell)
    return k >= m or k * (ell + 1) > m * ell


def combined_weight(ws: LocalWitnessSet, tau: Orientation | None = None) -> WeightFunction:
    """Pointwise sum of the local witnesses.

    When the parameters satisfy :func:`combination_suffices` the sum must
    induce the maximal elements (and ``tau`` if given); failure there is a bug.
    """
    funcs = list(ws.witnesses.values())
    if not funcs:
        raise InputError("empty witness set")
    total = funcs[0]
    for f in funcs[1:]:
        total = total + f
    m = len(ws.maximal)
    if m and combination_suffices(ws.k, m, ws.ell):
        targets = tau.elements if tau is not None else ws.maximal
        if not induces(total, targets):
            raise InvariantViolation("combined local witnesses do not induce")
    return total


@dataclass(frozen=True)
class TopKCover:
    point: int
    big_weight: Fraction
    small_weight: Fraction
    top: tuple[int, ...]


def top_k_cover_check(tau: Orientation, w: WeightFunction, k: int) -> TopKCover:
    """Find v outside every small side of the k heaviest maximal elements.

    For k-resilient tau with k > m/2 such a v exists and has strictly more
    ``w``-weight on the maximal elements whose big side contains it than on
    those whose small side does.
    """
    mu = maximal_elements(tau)
    m = len(mu)
    if len(w) != m:
        raise InputError(f"weight function has {len(w)} values, expected {m}")
    if not w.is_nonzero():
        raise InputError("weight function must be non-zero")
    if not 2 * k > m:
        raise InputError(f"need k > m/2, got k={k}, m={m}")
    if not is_k_resilient(tau, k):
        raise InputError(f"orientation is not {k}-resilient")
    top = sorted(range(m), key=lambda j: (-w.values[j], j))[:k]
    covered = 0
    for j in top:
        covered |= mu[j].small
    outside = full_mask(tau.n) & ~covered
    v = (outside & -outside).bit_length() - 1
    bit = 1 << v
    big = sum((w.values[j] for j in range(m) if mu[j].big & bit), Fraction(0))
    small = sum((w.values[j] for j in range(m) if mu[j].small & bit), Fraction(0))
    if not small < big:
        raise InvariantViolation("top-k point does not separate the weights")
    return TopKCover(v, big, small, tuple(sorted(top)))
