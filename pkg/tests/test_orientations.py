"""Axiom checks, compared against direct transcriptions of the definitions."""
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from inducedtangles.core import (OrientedSeparation, Separation, SeparationSystem,
                                 full_mask, meet, separations_below)
from inducedtangles.errors import InputError, ResourceError
from inducedtangles.generators import gen_principal, gen_tau_mk, gen_thirds
from inducedtangles.orientations import (FILTERS, Orientation, axiom_report,
                                         enumerate_orientations, is_consistent,
                                         is_F_ell_tangle, is_profile, is_regular,
                                         is_tangle, max_F_ell, maximal_elements)

from conftest import orientations, singleton_bipartitions

O = OrientedSeparation.of


# -- naive oracles -----------------------------------------------------------

def naive_consistent(tau):
    els = tau.elements
    return not any(r.separation() != s.separation() and r.inverse() < s
                   for r in els for s in els)


def naive_profile(tau):
    els = set(tau.elements)
    if not naive_consistent(tau):
        return False
    return not any(s != t and meet(s.inverse(), t.inverse()) in els
                   for s in els for t in els)


def naive_tangle(tau):
    els = tau.elements
    full = full_mask(tau.n)
    if not naive_consistent(tau):
        return False
    return not any(a.small | b.small | c.small == full
                   for a, b, c in itertools.product(els, repeat=3))


def naive_maximal(tau):
    els = tau.elements
    return [e for e in els if not any(e < f for f in els)]


# -- examples ----------------------------------------------------------------

def principal_singletons():
    system = singleton_bipartitions()
    return Orientation.from_elements(system, [O([0], [1, 2], 3), O([1], [0, 2], 3),
                                              O([0, 1], [2], 3)])


def majority_singletons():
    system = singleton_bipartitions()
    return Orientation.from_elements(system, [O([i], [j for j in range(3) if j != i], 3)
                                              for i in range(3)])


def test_consistency_examples():
    system = SeparationSystem(3, [Separation.from_sets([0, 1], [2], 3),
                                  Separation.from_sets([0, 2], [1], 3)])
    tau = Orientation.from_elements(system, [O([0, 1], [2], 3), O([0, 2], [1], 3)])
    verdict = is_consistent(tau)
    assert not verdict.ok
    r, s = verdict.witness
    assert r.inverse() < s
    assert is_consistent(principal_singletons())
    assert is_consistent(Orientation(SeparationSystem(3, []), []))


def test_profile_examples():
    verdict = is_profile(majority_singletons())
    assert not verdict.ok
    s, t, m = verdict.witness
    assert meet(s.inverse(), t.inverse()) == m and m in majority_singletons()
    assert is_profile(principal_singletons())
    one = SeparationSystem(3, [Separation.from_sets([0], [1, 2], 3)])
    for choice in (True, False):
        assert is_profile(Orientation(one, [choice]))


def test_regular_examples():
    system = SeparationSystem(3, [Separation.from_sets([], [0, 1, 2], 3)])
    assert not is_regular(Orientation.from_elements(system, [O([0, 1, 2], [], 3)]))
    assert is_regular(principal_singletons())
    degenerate = SeparationSystem(3, [Separation.from_sets([0, 1, 2], [0, 1, 2], 3)])
    assert not is_regular(Orientation(degenerate, [True]))


def test_tangle_examples():
    assert is_tangle(gen_tau_mk(6, 3).orientation)
    verdict = is_tangle(majority_singletons())
    assert not verdict.ok
    assert len(verdict.witness) == 3
    assert verdict.witness[0].small | verdict.witness[1].small | verdict.witness[2].small == 7
    assert is_tangle(gen_principal(3, 2).orientation)


def test_tangle_triples_allow_repetition():
    # a single co-small element is a covering "triple" by itself
    system = SeparationSystem(2, [Separation.from_sets([], [0, 1], 2)])
    tau = Orientation.from_elements(system, [O([0, 1], [], 2)])
    verdict = is_tangle(tau)
    assert not verdict.ok and len(verdict.witness) == 3


def test_axiom_report_witnesses_recheck():
    report = axiom_report(majority_singletons())
    assert report.consistent and not report.profile and report.regular and not report.tangle
    assert set(report.witnesses) == {"profile", "tangle"}


def test_F_ell_examples():
    tau = gen_tau_mk(8, 4).orientation
    assert max_F_ell(tau) == 5
    assert is_F_ell_tangle(tau, 4) and is_F_ell_tangle(tau, 5)
    assert not is_F_ell_tangle(tau, Fraction(11, 2))
    assert max_F_ell(gen_principal(3, 2).orientation) == 1


def test_F_ell_threshold_is_strict_below():
    # "fewer than ell" is the forbidden condition, so ell = l* is still allowed
    tau = gen_tau_mk(8, 4).orientation
    assert is_F_ell_tangle(tau, 5) and not is_F_ell_tangle(tau, 6)


def test_F_ell_needs_bipartitions():
    system = SeparationSystem(3, [Separation.from_sets([0, 1], [1, 2], 3)])
    with pytest.raises(InputError):
        max_F_ell(Orientation(system, [True]))


def test_maximal_elements_examples():
    assert maximal_elements(gen_principal(3, 2).orientation) == [O([0, 1], [2], 3)]
    inst = gen_tau_mk(6, 3)
    full = full_mask(20)
    assert set(maximal_elements(inst.orientation)) == {
        OrientedSeparation(full & ~f, f, 20) for f in inst.system.order.families}
    mu = maximal_elements(gen_thirds(6).orientation)
    assert sorted(e.small.bit_count() for e in mu) == [1] * 6


def test_enumeration_examples():
    tangles = list(enumerate_orientations(singleton_bipartitions(), "tangle"))
    assert len(tangles) == 3
    for x in range(3):
        toward = Orientation.from_rule(singleton_bipartitions(),
                                       lambda s, x=x: s.canonical if s.sides[1] >> x & 1
                                       else s.canonical.inverse())
        assert toward in tangles
    two = SeparationSystem(3, [Separation.from_sets([0], [1, 2], 3),
                               Separation.from_sets([1], [0, 2], 3)])
    assert len(list(enumerate_orientations(two))) == 4
    trivial = SeparationSystem(3, [Separation.from_sets([], [0, 1, 2], 3)])
    only = list(enumerate_orientations(trivial, "regular-profile"))
    assert [o.elements for o in only] == [(O([], [0, 1, 2], 3),)]


def test_enumeration_budget():
    system = SeparationSystem(4, separations_below(4, 2))
    with pytest.raises(ResourceError):
        list(enumerate_orientations(system, budget=1000))
    with pytest.raises(InputError):
        list(enumerate_orientations(system, "no-such-filter"))


@pytest.mark.parametrize("flt", [f for f in FILTERS if f != "none"])
def test_named_filters_match_brute_force(flt, rng):
    checks = {"consistent": naive_consistent, "profile": naive_profile,
              "regular": lambda t: is_regular(t).ok,
              "regular-profile": lambda t: naive_profile(t) and is_regular(t).ok,
              "tangle": naive_tangle}
    for _ in range(25):
        n = rng.randint(1, 4)
        pool = separations_below(n, n + 1)
        system = SeparationSystem(n, rng.sample(pool, min(len(pool), rng.randint(0, 7))))
        fast = set(enumerate_orientations(system, flt))
        slow = set(enumerate_orientations(system, checks[flt]))
        assert fast == slow


@settings(max_examples=150, deadline=None)
@given(orientations())
def test_checks_agree_with_definitions(tau):
    assert is_consistent(tau).ok == naive_consistent(tau)
    assert is_profile(tau).ok == naive_profile(tau)
    assert is_tangle(tau).ok == naive_tangle(tau)
    assert set(maximal_elements(tau)) == set(naive_maximal(tau))


@settings(max_examples=150, deadline=None)
@given(orientations())
def test_tangles_are_regular_profiles(tau):
    if is_tangle(tau):
        assert is_profile(tau) and is_regular(tau) and is_consistent(tau)


@settings(max_examples=100, deadline=None)
@given(orientations())
def test_every_element_lies_below_a_maximal_one(tau):
    mu = maximal_elements(tau)
    assert all(any(e <= m for m in mu) for e in tau.elements)


@settings(max_examples=100, deadline=None)
@given(orientations())
def test_restriction_and_extension(tau):
    half = SeparationSystem(tau.system.ground, tau.system.separations[::2])
    sub = tau.restrict(half)
    assert sub.extends_to(tau)
    if is_tangle(tau):
        assert is_tangle(sub)


def test_maximal_elements_ignore_listing_order():
    inst = gen_thirds(7)
    seps = list(inst.system.separations)
    shuffled = SeparationSystem(inst.system.ground, reversed(seps))
    tau = Orientation.from_elements(shuffled, inst.orientation.elements)
    assert set(maximal_elements(tau)) == set(maximal_elements(inst.orientation))
