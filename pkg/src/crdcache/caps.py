"""Size guards for the exhaustive enumerations used throughout.

The cross-intersection search and the field/point constructions are
exhaustive by design; the caps below bound how much work a single call may
do.  ``max_intersections`` counts intersections actually computed (the
search aborts early on the first mismatch, so designs whose profile dies
quickly stay cheap even when the worst-case product is huge).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SizeCaps:
    max_points: int = 4096
    max_intersections: int = 10_000_000


DEFAULT_CAPS = SizeCaps()
