"""Dual separation systems.

Each point v of V separates the set S of separations into those whose
oriented small side contains v and those whose big side does.  The elements
of S, indexed in the system's canonical order, form the dual ground set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import OrientedSeparation, Separation, SeparationSystem, members
from .errors import InputError
from .inducers import WeightFunction
from .orientations import Orientation


def phi(v: int, sigma: Orientation) -> OrientedSeparation:
    """The separation (C, D) of S: C holds the s with v in the small side, D with v in the big side."""
    if not 0 <= v < sigma.n:
        raise InputError(f"element {v} outside the ground set")
    bit = 1 << v
    c = d = 0
    for j, e in enumerate(sigma.elements):
        if e.small & bit:
            c |= 1 << j
        if e.big & bit:
            d |= 1 << j
    return OrientedSeparation(c, d, len(sigma))


@dataclass(frozen=True)
class DualSystem:
    base: SeparationSystem
    images: tuple[OrientedSeparation, ...]
    injective: bool
    collisions: tuple[tuple[int, ...], ...]
    default: Orientation | None = None

    def point_of(self, s: Separation) -> int:
        """The element of V mapped onto ``s`` (injective case only)."""
        for v, img in enumerate(self.images):
            if img.separation() == s:
                return v
        raise KeyError(s)


def dualize(sigma: Orientation) -> DualSystem:
    if len(sigma) == 0:
        raise InputError("cannot dualize an empty system: the dual ground set would be empty")
    images = tuple(phi(v, sigma) for v in range(sigma.n))
    classes: dict[Separation, list[int]] = {}
    for v, img in enumerate(images):
        classes.setdefault(img.separation(), []).append(v)
    collisions = tuple(tuple(vs) for vs in classes.values() if len(vs) > 1)
    base = SeparationSystem(len(sigma), classes.keys())
    injective = not collisions
    default = Orientation.from_elements(base, images) if injective else None
    return DualSystem(base, images, injective, collisions, default)


def double_dual(sigma: Orientation) -> bool:
    """Whether dualizing the dual gives back ``sigma`` up to relabelling."""
    dual = dualize(sigma)
    if not dual.injective:
        raise InputError("phi is not injective; the default dual orientation is undefined")
    back = dualize(dual.default)
    # points of the second dual are the separations of S; its ground set is the
    # dual separations in base order, each standing for the v mapped onto it
    to_point = [dual.point_of(s) for s in dual.base.separations]

    def relabel(mask: int) -> int:
        return sum(1 << to_point[i] for i in members(mask))

    if len(back.images) != len(sigma):
        return False
    for j, e in enumerate(sigma.elements):
        img = back.images[j]
        if OrientedSeparation(relabel(img.small), relabel(img.big), sigma.n) != e:
            return False
    return True


def favoured_points(w: WeightFunction, sigma: Orientation) -> list[int]:
    """Points v with ``w(C(v)) < w(D(v))``, i.e. dual separations that ``w`` induces."""
    if len(w) != len(sigma):
        raise InputError("weight function must weight the separations of the system")
    out = []
    for v in range(sigma.n):
        img = phi(v, sigma)
        if w(img.small) < w(img.big):
            out.append(v)
    return out


def induces_some_dual(w: WeightFunction, sigma: Orientation) -> bool:
    return bool(favoured_points(w, sigma))


def witness_on_dual(witness: WeightFunction, columns, n: int
                    ) -> tuple[Orientation, WeightFunction]:
    """Re-index a witness on ``columns`` to the canonical order of their own system."""
    system = SeparationSystem(n, [e.separation() for e in columns])
    sigma = Orientation.from_elements(system, columns)
    values = [Fraction(0)] * len(system)
    for e, y in zip(columns, witness.values):
        values[system.index(e)] = y
    return sigma, WeightFunction(tuple(values))
