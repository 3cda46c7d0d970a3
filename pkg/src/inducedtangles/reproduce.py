"""The acceptance suite: every criterion regenerated from parameters.

Each ``criterion_N`` returns a :class:`CriterionResult` whose ``details``
list the individual checks, so a failing criterion says exactly which
check failed and with what values.  Random instances use fixed seeds.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .core import (OrientedSeparation, Separation, SeparationSystem, fmt_side,
                   full_mask, restrict_to_Sk, separations_below)
from .duality import double_dual, dualize, favoured_points, witness_on_dual
from .errors import InputError
from .exactlp import Infeasible, verify_certificate
from .generators import (gen_grid, gen_intro, gen_principal, gen_tau_mk,
                         gen_thirds)
from .inducers import (Induced, NotInduced, WeightFunction, brute_force_set_inducer,
                       build_matrix, decide_induced, dense_tangle_inducer, induces,
                       orient_by_weight, orientation_from_weight, set_induces,
                       star_interior_inducer)
from .orientations import (Orientation, enumerate_orientations, is_consistent,
                           is_F_ell_tangle, is_profile, is_regular, is_tangle,
                           max_F_ell, maximal_elements)
from .resilience import (LocalWitnessSet, combined_weight, is_k_resilient,
                         is_locally_induced, resilience)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, message: str) -> bool:
        self.details.append(("ok   " if ok else "FAIL ") + message)
        if not ok:
            self.passed = False
        return ok

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.title}"


# -- shared helpers ------------------------------------------------------------

def farkas_verifies(outcome: NotInduced, n: int) -> bool:
    Q = build_matrix(outcome.columns, n)
    return verify_certificate(Q, [1] * len(outcome.columns), Infeasible(outcome.witness.values))


def all_ones_verifies(tau: Orientation) -> bool:
    """Whether weighting every maximal element 1 is itself a Farkas witness."""
    mu = maximal_elements(tau)
    Q = build_matrix(mu, tau.n)
    return verify_certificate(Q, [1] * len(mu), Infeasible((Fraction(1),) * len(mu)))


def singleton_principal_example() -> Orientation:
    """The three singleton bipartitions of {0,1,2}, oriented toward 2."""
    n = 3
    elements = [OrientedSeparation.of([0], [1, 2], n),
                OrientedSeparation.of([1], [0, 2], n),
                OrientedSeparation.of([0, 1], [2], n)]
    system = SeparationSystem(n, [e.separation() for e in elements])
    return Orientation.from_elements(system, elements)


def singleton_majority_example() -> Orientation:
    """The singleton bipartitions of {0,1,2}, each oriented away from its singleton."""
    n = 3
    elements = [OrientedSeparation.of([i], [j for j in range(n) if j != i], n) for i in range(n)]
    system = SeparationSystem(n, [e.separation() for e in elements])
    return Orientation.from_elements(system, elements)


def random_system(rng: random.Random, n: int, count: int,
                  bipartitions_only: bool = False) -> SeparationSystem:
    full = full_mask(n)
    seps = set()
    for _ in range(count):
        a = b = 0
        for v in range(n):
            r = rng.random()
            if bipartitions_only:
                where = 0 if r < 0.5 else 1
            else:
                where = 0 if r < 0.4 else 1 if r < 0.8 else 2
            if where != 1:
                a |= 1 << v
            if where != 0:
                b |= 1 << v
        seps.add(Separation.of(a, b, n))
    assert all(s.sides[0] | s.sides[1] == full for s in seps)
    return SeparationSystem(n, seps)


def random_orientation(rng: random.Random, system: SeparationSystem) -> Orientation:
    """Half the time uniformly random, otherwise induced by random integer weights
    (ties broken at random)."""
    if rng.random() < 0.5:
        return Orientation(system, [rng.random() < 0.5 for _ in system.separations])
    w = WeightFunction(tuple(rng.randint(0, 3) for _ in range(system.n)))
    elements, ties = orient_by_weight(w, system)
    elements += [rng.choice(s.orientations()) for s in ties]
    return Orientation.from_elements(system, elements)


def minimal_star_interior(tau: Orientation) -> int:
    """Smallest interior over all stars contained in ``tau``.

    Interiors only shrink as stars grow and small elements never shrink
    them, so the minimum is attained at a maximal clique of the graph on the
    non-degenerate, non-small elements joined when they point toward each
    other.  The empty star has interior V.
    """
    elems = [e for e in tau.elements if not e.is_degenerate() and not e.is_small()]
    g = nx.Graph()
    g.add_nodes_from(range(len(elems)))
    for i, r in enumerate(elems):
        for j in range(i + 1, len(elems)):
            if r <= elems[j].inverse():
                g.add_edge(i, j)
    best = full_mask(tau.n)
    for clique in nx.find_cliques(g):
        interior = full_mask(tau.n)
        for i in clique:
            interior &= elems[i].big
        if interior.bit_count() < best.bit_count():
            best = interior
    return best


# -- the criteria ---------------------------------------------------------------

def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "tau_{6,3}: tangle, 6 maximal, resilience 3, Farkas witness")
    inst = gen_tau_mk(6, 3)
    tau = inst.orientation
    res.check(tau.n == 20, f"|V| = {tau.n} (expected 20)")
    res.check(is_tangle(tau).ok, "is_tangle")
    mu = maximal_elements(tau)
    res.check(len(mu) == 6, f"{len(mu)} maximal elements (expected 6)")
    r = resilience(tau)
    res.check(r.kind == "finite" and r.k == 3, f"resilience {r} (expected 3)")
    out = decide_induced(tau)
    if res.check(isinstance(out, NotInduced), f"decide_induced -> {type(out).__name__}"):
        res.check(farkas_verifies(out, tau.n), "Farkas witness re-verifies exactly")
    res.check(all_ones_verifies(tau), "all-ones witness verifies")
    return res


def criterion_2() -> CriterionResult:
    res = CriterionResult(2, "tau_{5,3}: LP decider and local-witness construction agree")
    for full in (False, True):
        tau = gen_tau_mk(5, 3, full=full).orientation
        tag = f"[{len(tau)} separations]"
        r = resilience(tau)
        res.check(r.kind == "finite" and r.k == 3, f"{tag} resilience {r} (expected 3)")
        res.check(2 * 3 > len(maximal_elements(tau)), f"{tag} 3 > m/2 with m = 5")
        out = decide_induced(tau)
        res.check(isinstance(out, Induced) and induces(out.weights, tau),
                  f"{tag} decide_induced -> Induced, verified")
        ws = is_locally_induced(tau, 3, 1)
        if res.check(isinstance(ws, LocalWitnessSet), f"{tag} 3-locally 1-induced"):
            w = combined_weight(ws, tau)
            res.check(induces(w, tau), f"{tag} combined local witnesses induce tau")
    return res


def criterion_3() -> CriterionResult:
    res = CriterionResult(3, "intro example m=6: property (*), not 4-resilient, not induced")
    tau = gen_intro(6).orientation
    counts = [sum(1 for e in tau.elements if e.big >> v & 1) for v in range(tau.n)]
    res.check(tau.n == 20 and all(c == 3 for c in counts),
              f"|V| = {tau.n}; big-side memberships per point: {sorted(set(counts))}")
    res.check(not is_k_resilient(tau, 4), "not 4-resilient")
    out = decide_induced(tau)
    if res.check(isinstance(out, NotInduced), f"decide_induced -> {type(out).__name__}"):
        res.check(farkas_verifies(out, tau.n), "Farkas witness re-verifies")
    return res


def criterion_4() -> CriterionResult:
    res = CriterionResult(4, "thirds n=6: resilience 3, 6 maximal elements, induced by V")
    tau = gen_thirds(6).orientation
    r = resilience(tau)
    res.check(r.kind == "finite" and r.k == 3,
              f"resilience {r} (expected 3); a smallest cover uses "
              f"{len(r.cover)} small sides: {', '.join(fmt_side(e.small) for e in r.cover)}")
    mu = maximal_elements(tau)
    res.check(len(mu) == math.comb(6, 1), f"{len(mu)} maximal elements (expected 6)")
    out = decide_induced(tau)
    res.check(isinstance(out, Induced) and induces(out.weights, tau), "decide_induced -> Induced")
    res.check(induces(WeightFunction.constant(tau.n), tau), "w = 1 induces tau")
    return res


def criterion_5() -> CriterionResult:
    res = CriterionResult(5, "5x5 grid: tie-free, tangle, small sides <= 10, resilience >= 3")
    start = time.perf_counter()
    try:
        tau = gen_grid(5).orientation
    except Exception as exc:  # the generator raises on a tie
        res.check(False, f"grid generation failed: {exc}")
        return res
    res.check(True, f"orientation of {len(tau)} separations is tie-free")
    res.check(is_tangle(tau).ok, "is_tangle")
    biggest = max(e.small.bit_count() for e in tau.elements)
    res.check(biggest <= 10, f"largest small side has {biggest} vertices")
    r = resilience(tau, cap=5)
    res.check(r.is_at_least(3), f"resilience with cap 5: {r}")
    elapsed = time.perf_counter() - start
    res.check(elapsed < 300, f"runtime {elapsed:.1f}s (budget 300s)")
    return res


def random_dense_instances(count: int, seed: int = 6):
    """Majority orientations of random bipartition systems that are F^ell-tangles
    with ``ell >= |V|/8``."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        n = rng.randint(8, 16)
        limit = (7 * n) // 24
        seps = set()
        for _ in range(rng.randint(3, 12)):
            size = rng.randint(0, limit)
            a = sum(1 << v for v in rng.sample(range(n), size))
            seps.add(Separation.of(a, full_mask(n) & ~a, n))
        system = SeparationSystem(n, seps)
        tau = orientation_from_weight(WeightFunction.constant(n), system)
        ell = max_F_ell(tau)
        if ell is not None and 8 * ell >= n and is_F_ell_tangle(tau, ell):
            found.append((tau, ell))
    return found


def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "tau_{8,4} and the 1/8 threshold; dense-tangle inducer")
    tau = gen_tau_mk(8, 4).orientation
    ell = max_F_ell(tau)
    res.check(ell == 5 == math.comb(5, 1), f"l* = {ell} (expected 5)")
    res.check(is_F_ell_tangle(tau, 4), "F^4-tangle")
    res.check(isinstance(decide_induced(tau), NotInduced), "decide_induced -> NotInduced")
    res.check(8 * 4 < tau.n, f"4 < |V|/8 = {Fraction(tau.n, 8)}")
    instances = random_dense_instances(50)
    bad, not_set, strict = 0, 0, 0
    for t, ell in instances:
        out = dense_tangle_inducer(t, ell)
        if not induces(out.weights, t):
            bad += 1
        if 8 * ell > t.n:
            strict += 1
            if out.as_set is None:
                not_set += 1
    res.check(bad == 0, f"{len(instances)} random instances: {bad} unverified inducers")
    res.check(not_set == 0, f"{strict} with l > |V|/8: {not_set} without a 0/1 inducer")
    return res


def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "200 random instances: Farkas exclusivity and soundness")
    rng = random.Random(7)
    mismatched, unverified, disagree = 0, 0, 0
    tags = {"Induced": 0, "NotInduced": 0}
    for _ in range(200):
        n = rng.randint(2, 6)
        system = random_system(rng, n, rng.randint(1, 8))
        tau = random_orientation(rng, system)
        a = decide_induced(tau, use_maximal=True)
        b = decide_induced(tau, use_maximal=False)
        tags[type(a).__name__] += 1
        if type(a) is not type(b):
            disagree += 1
        x = brute_force_set_inducer(tau)
        if x is not None and not isinstance(a, Induced):
            mismatched += 1
        for out in (a, b):
            ok = induces(out.weights, tau) if isinstance(out, Induced) else farkas_verifies(out, n)
            if not ok:
                unverified += 1
    res.check(mismatched == 0, f"set found but not Induced: {mismatched}")
    res.check(unverified == 0, f"certificates failing re-verification: {unverified}")
    res.check(disagree == 0, f"use_maximal true/false disagreements: {disagree}")
    res.check(min(tags.values()) > 0, f"outcome mix {tags}")
    return res


def random_injective_instances(count: int, seed: int = 8):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 6)
        system = random_system(rng, n, rng.randint(1, 6))
        tau = random_orientation(rng, system)
        if dualize(tau).injective:
            out.append(tau)
    return out


def criterion_8() -> CriterionResult:
    res = CriterionResult(8, "duality: double dual and Farkas witnesses on the dual")
    cases = [("principal example", singleton_principal_example()),
             ("tau_{6,3} maximal system", gen_tau_mk(6, 3).orientation)]
    cases += [(f"random #{i}", t) for i, t in enumerate(random_injective_instances(20))]
    failed_round_trip, round_trips = [], 0
    for name, tau in cases:
        try:
            ok = double_dual(tau)
        except InputError as exc:
            dual = dualize(tau)
            res.check(False, f"{name}: double_dual refused ({exc}); "
                             f"{len(dual.base)} distinct dual separations for {tau.n} points, "
                             f"collision classes {list(dual.collisions)[:3]}...")
            continue
        round_trips += 1
        if not ok:
            failed_round_trip.append(name)
    res.check(not failed_round_trip,
              f"{round_trips} double duals computed; failing: {failed_round_trip or 'none'}")
    witnesses, favoured = 0, 0
    for name, tau in cases + [("intro m=6", gen_intro(6).orientation)]:
        for use_maximal in (True, False):
            out = decide_induced(tau, use_maximal=use_maximal)
            if not isinstance(out, NotInduced):
                continue
            witnesses += 1
            sigma, w = witness_on_dual(out.witness, out.columns, tau.n)
            if favoured_points(w, sigma):
                favoured += 1
    res.check(witnesses > 0 and favoured == 0,
              f"{witnesses} Farkas witnesses pushed to the dual; {favoured} induce a dual separation")
    return res


def criterion_9(k2_attempts: int = 50) -> CriterionResult:
    res = CriterionResult(9, "star-interior inducer on regular 2k-profiles")
    checked = 0
    for n in (4, 5):
        system = SeparationSystem(n, separations_below(n, 2))
        profiles = list(enumerate_orientations(system, "regular-profile"))
        for tau in profiles:
            out = star_interior_inducer(tau, 1)
            low = restrict_to_Sk(system, 1)
            ok = out.interior.bit_count() >= 2 and set_induces(out.interior, tau.restrict(low).elements)
            ok = ok and minimal_star_interior(tau).bit_count() >= 2
            res.check(ok, f"|V|={n}: star interior {fmt_side(out.interior)}")
            checked += 1
        res.details.append(f"info |V|={n}, k=1: {len(system)} separations of order < 2, "
                           f"{len(profiles)} regular 2-profiles enumerated")
    rng = random.Random(9)
    generated = 0
    attempts = 0
    for n in (5, 6, 7, 8):
        system = SeparationSystem(n, separations_below(n, 4))
        low = restrict_to_Sk(system, 2)
        for _ in range(k2_attempts):
            attempts += 1
            powers = rng.sample(range(n), n)
            w = WeightFunction(tuple(Fraction(2) ** p for p in powers))
            tau = orientation_from_weight(w, system)
            if not (is_regular(tau).ok and is_profile(tau).ok):
                continue
            generated += 1
            out = star_interior_inducer(tau, 2)
            ok = out.interior.bit_count() >= 4 and set_induces(out.interior, tau.restrict(low).elements)
            ok = ok and minimal_star_interior(tau).bit_count() >= 4
            res.check(ok, f"|V|={n}, k=2: star interior {fmt_side(out.interior)}")
    res.check(generated >= 20,
              f"k=2: {generated} regular 4-profiles among {attempts} generic-weight "
              f"orientations on |V| in 5..8 (need >= 20)")
    return res


def corpus_systems() -> list[tuple[str, SeparationSystem]]:
    """Small systems (at most 12 separations) the axiom hierarchy is checked on."""
    out = [
        ("singleton bipartitions of a 3-set", singleton_majority_example().system),
        ("all bipartitions of a 3-set", gen_principal(3, 0).system),
        ("all bipartitions of a 4-set", gen_principal(4, 0).system),
        ("separations of a 3-set of order < 2", SeparationSystem(3, separations_below(3, 2))),
        ("intro m=4", gen_intro(4).system),
        ("intro m=5", gen_intro(5).system),
        ("tau_{5,3} maximal", gen_tau_mk(5, 3).system),
        ("tau_{6,3} maximal", gen_tau_mk(6, 3).system),
        ("thirds n=6", gen_thirds(6).system),
    ]
    rng = random.Random(10)
    for i in range(12):
        n = rng.randint(2, 5)
        out.append((f"random #{i}", random_system(rng, n, rng.randint(1, 12))))
    return [(name, s) for name, s in out if len(s) <= 12]


def criterion_10() -> CriterionResult:
    res = CriterionResult(10, "axiom hierarchy: tangle => profile, regular, consistent")
    total, tangles, broken = 0, 0, []
    for name, system in corpus_systems():
        for tau in enumerate_orientations(system):
            total += 1
            if is_tangle(tau).ok:
                tangles += 1
                if not (is_profile(tau).ok and is_regular(tau).ok and is_consistent(tau).ok):
                    broken.append(name)
    res.check(not broken and tangles > 0,
              f"{total} orientations, {tangles} tangles, {len(broken)} violating the hierarchy")
    golden = singleton_majority_example()
    prof = is_profile(golden)
    res.check(is_consistent(golden).ok and not prof.ok,
              f"majority orientation of the singleton bipartitions: consistent, "
              f"not a profile (witness {prof.witness})")
    return res


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


def run(numbers=None) -> list[CriterionResult]:
    results = []
    for i in numbers or sorted(CRITERIA):
        start = time.perf_counter()
        try:
            r = CRITERIA[i]()
        except Exception as exc:  # report, don't abort the table
            r = CriterionResult(i, CRITERIA[i].__doc__ or f"criterion {i}", False,
                                [f"FAIL raised {type(exc).__name__}: {exc}"])
        r.seconds = time.perf_counter() - start
        results.append(r)
    return results
