import random
from fractions import Fraction

import pytest

from inducedtangles.core import OrientedSeparation, Separation, SeparationSystem, full_mask
from inducedtangles.duality import (double_dual, dualize, favoured_points, induces_some_dual,
                                    phi, witness_on_dual)
from inducedtangles.errors import InputError
from inducedtangles.generators import gen_intro, gen_principal, gen_tau_mk
from inducedtangles.inducers import Induced, NotInduced, WeightFunction, decide_induced
from inducedtangles.orientations import Orientation
from inducedtangles.reproduce import (random_injective_instances, random_orientation,
                                      random_system, singleton_principal_example)

from conftest import singleton_bipartitions


def principal():
    system = singleton_bipartitions(3)
    return Orientation.from_rule(
        system, lambda s: s.canonical if s.sides[1] >> 2 & 1 else s.canonical.inverse())


def side(system, *seps):
    return sum(1 << system.index(Separation.from_sets(a, b, 3)) for a, b in seps)


def test_phi_principal_examples():
    sigma = principal()
    sys_ = sigma.system
    s1, s2, s3 = ([0], [1, 2]), ([1], [0, 2]), ([0, 1], [2])
    assert phi(0, sigma) == OrientedSeparation(side(sys_, s1, s3), side(sys_, s2), 3)
    assert phi(2, sigma) == OrientedSeparation(0, full_mask(3), 3)


def test_phi_errors():
    with pytest.raises(InputError):
        phi(3, principal())


def test_phi_sides_cover_and_meet_in_separators(rng):
    for _ in range(60):
        n = rng.randint(1, 6)
        sigma = random_orientation(rng, random_system(rng, n, rng.randint(1, 6),
                                                      bipartitions_only=rng.random() < 0.5))
        for v in range(n):
            img = phi(v, sigma)
            assert img.small | img.big == full_mask(len(sigma))
            crossing = sum(1 << j for j, e in enumerate(sigma.elements)
                           if (e.small & e.big) >> v & 1)
            assert img.small & img.big == crossing


def test_dualize_principal():
    dual = dualize(principal())
    assert dual.injective and len(dual.base) == 3 and dual.collisions == ()
    for v, img in enumerate(dual.images):
        assert dual.default.oriented(img.separation()) == img
        assert dual.point_of(img.separation()) == v


def test_collision_classes():
    # points 1 and 2 always lie on the same side; 0 and 3 get swapped images of
    # the same separation of S, which also counts as a collision
    system = SeparationSystem(4, [Separation.from_sets([0], [1, 2, 3], 4),
                                  Separation.from_sets([0, 1, 2], [3], 4)])
    sigma = Orientation(system, [True, True])
    dual = dualize(sigma)
    assert not dual.injective and dual.collisions == ((0, 3), (1, 2)) and dual.default is None
    with pytest.raises(InputError, match="injective"):
        double_dual(sigma)


def test_tau_63_maximal_system_collides():
    """Complementary 3-sets give the same separation of S with the sides swapped."""
    sigma = gen_tau_mk(6, 3).orientation
    dual = dualize(sigma)
    assert not dual.injective
    assert len(dual.base) == 10 and len(dual.collisions) == 10
    for u, v in dual.collisions:
        assert dual.images[u] == dual.images[v].inverse()
        assert dual.images[u].small | dual.images[v].small == full_mask(6)


def test_empty_system_cannot_be_dualized():
    with pytest.raises(InputError):
        dualize(Orientation(SeparationSystem(3, []), []))


def test_double_dual_principal():
    assert double_dual(principal())
    assert double_dual(singleton_principal_example())


def test_double_dual_random():
    for sigma in random_injective_instances(20, seed=99):
        assert double_dual(sigma)


def test_farkas_witness_induces_nothing_in_the_dual():
    rng = random.Random(21)
    seen = 0
    tries = [gen_tau_mk(6, 3).orientation, gen_intro(6).orientation]
    for _ in range(300):
        n = rng.randint(2, 6)
        tries.append(random_orientation(rng, random_system(rng, n, rng.randint(1, 6))))
    for tau in tries:
        out = decide_induced(tau)
        if not isinstance(out, NotInduced):
            continue
        sigma, w = witness_on_dual(out.witness, out.columns, tau.n)
        assert w.is_nonzero()
        assert favoured_points(w, sigma) == []
        assert not induces_some_dual(w, sigma)
        seen += 1
    assert seen >= 5


def test_induced_orientations_have_dual_points_for_every_weight():
    rng = random.Random(22)
    checked = 0
    for _ in range(200):
        n = rng.randint(2, 6)
        tau = random_orientation(rng, random_system(rng, n, rng.randint(1, 6)))
        if not isinstance(decide_induced(tau), Induced):
            continue
        for _ in range(5):
            w = WeightFunction(tuple(Fraction(rng.randint(0, 4)) for _ in range(len(tau))))
            if w.is_nonzero():
                assert favoured_points(w, tau)
                checked += 1
    assert checked > 50


def test_favoured_points_length_check():
    with pytest.raises(InputError):
        favoured_points(WeightFunction.constant(2), principal())
