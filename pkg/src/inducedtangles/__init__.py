"""Deciding whether tangles of set separations are induced by weights or point sets."""
from .core import (GroundSet, OrderSpec, OrientedSeparation, Separation,
                   SeparationSystem)
from .errors import InputError, InvariantViolation, ResourceError
from .inducers import Induced, NotInduced, WeightFunction, decide_induced
from .orientations import Orientation
from .resilience import ResilienceValue, resilience

__version__ = "0.1.0"

__all__ = [
    "GroundSet", "OrderSpec", "OrientedSeparation", "Separation", "SeparationSystem",
    "InputError", "InvariantViolation", "ResourceError",
    "Induced", "NotInduced", "WeightFunction", "decide_induced",
    "Orientation", "ResilienceValue", "resilience",
]
