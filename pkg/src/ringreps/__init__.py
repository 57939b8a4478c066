"""Representation counting for matrix groups over finite local rings."""

from .fields import GaloisField, gf
from .rings import (
    LocalRing,
    RingElement,
    TruncatedPolyRing,
    Witt2Ring,
    ZmodRing,
    classify_local_ring,
    parse_ring,
)

from .schemes import GroupScheme, parse_scheme

__version__ = "0.1.0"


def analyze_group(*args, **kwargs):
    from .clifford import analyze_group as _impl
    return _impl(*args, **kwargs)


def compare_rings(*args, **kwargs):
    from .clifford import compare_rings as _impl
    return _impl(*args, **kwargs)
