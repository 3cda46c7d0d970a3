import random

import pytest
from hypothesis import strategies as st

from inducedtangles.core import OrientedSeparation, Separation, SeparationSystem, full_mask
from inducedtangles.orientations import Orientation


@st.composite
def oriented_separations(draw, n=None):
    """A random oriented separation: each element goes to A, B, or both."""
    if n is None:
        n = draw(st.integers(1, 7))
    places = draw(st.lists(st.sampled_from("abx"), min_size=n, max_size=n))
    a = sum(1 << i for i, p in enumerate(places) if p in "ax")
    b = sum(1 << i for i, p in enumerate(places) if p in "bx")
    return OrientedSeparation(a, b, n)


@st.composite
def separation_pairs(draw):
    n = draw(st.integers(1, 7))
    return draw(oriented_separations(n)), draw(oriented_separations(n))


@st.composite
def orientations(draw, max_n=5, max_seps=6):
    n = draw(st.integers(1, max_n))
    elems = draw(st.lists(oriented_separations(n), min_size=0, max_size=max_seps))
    # keep one orientation per underlying separation
    chosen = {}
    for e in elems:
        chosen.setdefault(e.separation(), e)
    system = SeparationSystem(n, chosen.keys())
    return Orientation.from_elements(system, chosen.values())


@pytest.fixture
def rng():
    return random.Random(12345)


def singleton_bipartitions(n=3):
    full = full_mask(n)
    return SeparationSystem(n, [Separation.of(1 << i, full & ~(1 << i), n) for i in range(n)])
