import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inducedtangles.core import (OrderSpec, OrientedSeparation, Separation, SeparationSystem,
                                 full_mask, separations_below, to_mask)
from inducedtangles.errors import InputError, ResourceError
from inducedtangles.generators import gen_intro, gen_principal, gen_tau_mk, gen_thirds
from inducedtangles.inducers import (Induced, NotInduced, WeightFunction,
                                     brute_force_set_inducer, build_matrix,
                                     check_not_induced, decide_induced, dense_tangle_inducer,
                                     induces, lex_subsets, margin, normalize_inducer,
                                     orient_by_weight, orientation_from_weight,
                                     star_interior_inducer)
from inducedtangles.orientations import (Orientation, enumerate_orientations, is_F_ell_tangle,
                                         max_F_ell, maximal_elements)
from inducedtangles.reproduce import random_orientation, random_system

from conftest import orientations, separation_pairs, singleton_bipartitions

O = OrientedSeparation.of


def test_orient_by_weight_examples():
    w = WeightFunction.indicator(to_mask([2]), 3)
    elements, ties = orient_by_weight(w, singleton_bipartitions())
    assert ties == [] and set(elements) == {O([0], [1, 2], 3), O([1], [0, 2], 3),
                                            O([0, 1], [2], 3)}
    tie = SeparationSystem(3, [Separation.from_sets([0, 1], [1, 2], 3)])
    assert orient_by_weight(WeightFunction.constant(3), tie)[1] == list(tie.separations)
    thirds = gen_thirds(6)
    assert orientation_from_weight(WeightFunction.constant(6), thirds.system) == thirds.orientation


def test_induces_examples():
    w = WeightFunction.indicator(to_mask([2]), 3)
    assert induces(w, gen_principal(3, 2).orientation)
    tie = SeparationSystem(3, [Separation.from_sets([0, 1], [1, 2], 3)])
    assert not induces(WeightFunction.constant(3), Orientation(tie, [True]))
    assert not induces(WeightFunction.constant(20), gen_tau_mk(6, 3).orientation)


def test_weights_are_non_negative():
    with pytest.raises(InputError):
        WeightFunction((Fraction(-1),))


def test_build_matrix_examples():
    assert build_matrix([O([0, 1], [2], 3)], 3) == [[-1], [-1], [1]]
    mu = maximal_elements(gen_tau_mk(6, 3).orientation)
    Q = build_matrix(mu, 20)
    assert len(Q) == 20 and all(len(r) == 6 for r in Q)
    assert all(r.count(1) == 3 and r.count(-1) == 3 for r in Q)


def test_build_matrix_matches_weight_differences(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        tau = random_orientation(rng, random_system(rng, n, rng.randint(1, 5)))
        cols = tau.elements
        Q = build_matrix(cols, n)
        x = [Fraction(rng.randint(0, 5)) for _ in range(n)]
        w = WeightFunction(tuple(x))
        for j, e in enumerate(cols):
            assert sum(Q[i][j] * x[i] for i in range(n)) == w(e.big) - w(e.small)


def test_decide_examples():
    for n, x in ((3, 2), (5, 0), (6, 4)):
        tau = gen_principal(n, x).orientation
        out = decide_induced(tau)
        assert isinstance(out, Induced) and induces(out.weights, tau)
    out = decide_induced(gen_tau_mk(6, 3).orientation)
    assert isinstance(out, NotInduced) and check_not_induced(out, 20)
    assert isinstance(decide_induced(gen_tau_mk(5, 3).orientation), Induced)


def test_decide_empty_orientation():
    out = decide_induced(Orientation(SeparationSystem(2, []), []))
    assert isinstance(out, Induced) and out.trivial


def test_normalize_examples():
    tau = gen_principal(3, 2).orientation
    w = normalize_inducer(WeightFunction.indicator(to_mask([2]), 3), tau, 5)
    assert w.values == (0, 0, 5) and margin(w, tau) == 5
    system = SeparationSystem(2, [Separation.from_sets([0], [1], 2)])
    tau2 = Orientation.from_elements(system, [O([0], [1], 2)])
    w = normalize_inducer(WeightFunction((Fraction(1, 3), Fraction(2, 3))), tau2, 1)
    assert all(v.denominator == 1 for v in w.values) and margin(w, tau2) >= 1
    tau3 = gen_tau_mk(5, 3).orientation
    w = normalize_inducer(decide_induced(tau3).weights, tau3, 1)
    assert all(v.denominator == 1 for v in w.values) and induces(w, tau3)
    with pytest.raises(InputError):
        normalize_inducer(WeightFunction.constant(3), tau, 1)


def test_dense_inducer_examples():
    n = 8
    seps = [s for s in separations_below(n, 1) if min(x.bit_count() for x in s.sides) <= 2]
    system = SeparationSystem(n, seps)
    tau = orientation_from_weight(WeightFunction.constant(n), system)
    out = dense_tangle_inducer(tau, 2)
    assert out.path == "V" and out.as_set == full_mask(n)
    with pytest.raises(InputError):
        dense_tangle_inducer(gen_tau_mk(8, 4).orientation, 4)


def test_dense_inducer_other_paths():
    """Majority orientations toward a set X other than V exercise the later branches."""
    rng = random.Random(3)
    paths = set()
    for _ in range(300):
        n = rng.randint(8, 12)
        x = to_mask(rng.sample(range(n), rng.randint(n // 2, n - 1)))
        w = WeightFunction.indicator(x, n)
        seps = set()
        for _ in range(rng.randint(2, 8)):
            a = to_mask(rng.sample(range(n), rng.randint(0, n // 3)))
            seps.add(Separation.of(a, full_mask(n) & ~a, n))
        elements, ties = orient_by_weight(w, SeparationSystem(n, seps))
        if ties:
            continue
        system = SeparationSystem(n, [e.separation() for e in elements])
        tau = Orientation.from_elements(system, elements)
        ell = max_F_ell(tau)
        if ell is None or 8 * ell < n or not is_F_ell_tangle(tau, ell):
            continue
        out = dense_tangle_inducer(tau, ell)
        assert induces(out.weights, tau)
        if 8 * ell > n:
            assert out.as_set is not None
        paths.add(out.path)
    assert {"V", "B1"} <= paths


def test_brute_force_examples():
    x = brute_force_set_inducer(gen_principal(3, 2).orientation)
    assert x is not None and x >> 2 & 1
    assert brute_force_set_inducer(gen_tau_mk(5, 3).orientation) is not None
    assert brute_force_set_inducer(gen_tau_mk(6, 3).orientation) is None
    assert brute_force_set_inducer(Orientation(SeparationSystem(3, []), [])) == 0
    with pytest.raises(ResourceError):
        brute_force_set_inducer(gen_tau_mk(6, 3).orientation, budget=1000)


def test_lex_subsets_order():
    got = [tuple(i for i in range(3) if x >> i & 1) for x in lex_subsets(3)]
    assert got == sorted(got)
    assert len(got) == 8


@settings(max_examples=200, deadline=None)
@given(separation_pairs(), st.data())
def test_lemma_monotonicity(pair, data):
    r, s = pair
    n = r.n
    w = WeightFunction(tuple(data.draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))))
    low, high = (r, s) if r <= s else (s, r) if s <= r else (None, None)
    if low is not None:
        assert w(low.big) - w(low.small) >= w(high.big) - w(high.small)


@settings(max_examples=150, deadline=None)
@given(orientations())
def test_maximal_and_full_lp_agree(tau):
    a = decide_induced(tau, use_maximal=True)
    b = decide_induced(tau, use_maximal=False)
    assert type(a) is type(b)
    for out in (a, b):
        if isinstance(out, Induced):
            assert induces(out.weights, tau)
        else:
            assert check_not_induced(out, tau.n)


@settings(max_examples=150, deadline=None)
@given(orientations())
def test_set_inducer_implies_induced(tau):
    if brute_force_set_inducer(tau) is not None:
        assert isinstance(decide_induced(tau), Induced)


def test_double_count_identity():
    for tau, k in ((gen_intro(5).orientation, 3), (gen_tau_mk(6, 3).orientation, 3),
                   (gen_tau_mk(6, 4).orientation, 4)):
        mu = maximal_elements(tau)
        rng = random.Random(tau.n)
        for _ in range(50):
            x = to_mask(v for v in range(tau.n) if rng.random() < 0.5)
            assert sum((x & e.big).bit_count() for e in mu) == k * x.bit_count()


# -- star-interior extraction -------------------------------------------------

def test_star_interior_rejects_small_ground_sets():
    system = SeparationSystem(3, separations_below(3, 4))
    tau = Orientation(system, [True] * len(system))
    with pytest.raises(InputError, match="2k"):
        star_interior_inducer(tau, 2)


def test_star_interior_requires_standard_order():
    system = SeparationSystem(4, separations_below(4, 2), OrderSpec.crossing([1, 2]))
    with pytest.raises(InputError, match="standard order"):
        star_interior_inducer(Orientation(system, [True] * len(system)), 1)


def test_star_interior_requires_the_whole_of_S_2k():
    system = SeparationSystem(4, separations_below(4, 1))
    with pytest.raises(InputError, match="order < 2"):
        star_interior_inducer(Orientation(system, [True] * len(system)), 1)


def test_star_interior_requires_a_regular_profile():
    system = SeparationSystem(4, separations_below(4, 2))
    w = WeightFunction((Fraction(1), Fraction(2), Fraction(4), Fraction(8)))
    with pytest.raises(InputError, match="profile"):
        star_interior_inducer(orientation_from_weight(w, system), 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_no_regular_2_profiles_of_set_separations(n):
    """With the separator-size order, S_2 of U(V) has no regular profile.

    Regularity puts every ({x}, V) into the profile; since the meet of the
    inverses of (V - x, {x}) and ({x}, V) is ({x}, V), the profile must then
    contain ({x}, V - x) for every x, and joining these yields (V - y, {y})
    next to ({y}, V - y).
    """
    system = SeparationSystem(n, separations_below(n, 2))
    assert list(enumerate_orientations(system, "regular-profile")) == []
    # the order-0 part alone has exactly the n principal profiles
    low = SeparationSystem(n, separations_below(n, 1))
    assert len(list(enumerate_orientations(low, "regular-profile"))) == n
