"""Piecewise-linear membership functions over grade variations.

Two fuzzy sets classify a candidate prerequisite link from the grade
variation ``delta = grade(target) - grade(source)`` of a single learner:

* ``mu_cpr`` -- degree to which the link looks like a correct prerequisite.
  Triangular with apex 1 at delta = 0, falling to 0 at s1 (negative) and
  at s2 (positive).
* ``mu_rpr`` -- degree to which the link looks reversed (correct in the
  opposite direction). Triangular with apex 1 at delta = s2, falling to 0
  at delta = 0 and at s3.

Both are total over finite deltas and return values in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonFinite, NonNegativeS1, NonPositiveS2, S3NotAboveS2

__all__ = ["FuzzyThresholds", "validate_thresholds", "mu_cpr", "mu_rpr"]


@dataclass(frozen=True)
class FuzzyThresholds:
    """Validated threshold triple, in grade points, with s1 < 0 < s2 < s3."""

    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        for name, value in (("s1", self.s1), ("s2", self.s2), ("s3", self.s3)):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise NonFinite(f"threshold {name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise NonFinite(f"threshold {name} must be finite, got {value!r}")
        if self.s1 >= 0:
            raise NonNegativeS1(f"s1 must be strictly negative, got {self.s1}")
        if self.s2 <= 0:
            raise NonPositiveS2(f"s2 must be strictly positive, got {self.s2}")
        if self.s3 <= self.s2:
            raise S3NotAboveS2(f"s3 must exceed s2, got s2={self.s2}, s3={self.s3}")


def validate_thresholds(s1: float, s2: float, s3: float) -> FuzzyThresholds:
    """Validate and freeze a threshold triple.

    Raises NonFinite, NonNegativeS1, NonPositiveS2 or S3NotAboveS2; the
    checks run in that order.
    """
    def as_float(name, value):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise NonFinite(f"threshold {name} must be a number, got {value!r}")
        return float(value)

    return FuzzyThresholds(as_float("s1", s1), as_float("s2", s2), as_float("s3", s3))


def mu_cpr(delta: float, t: FuzzyThresholds) -> float:
    """Membership of a grade variation in the correct-prerequisite set.

    Rises linearly from 0 at s1 to 1 at delta = 0, then falls linearly to
    0 at s2. Breakpoint values are taken from the branch that yields them
    exactly in floating point: 0.0 at delta <= s1 and delta >= s2, and
    exactly 1.0 at delta = 0.
    """
    if delta <= t.s1:
        return 0.0
    if delta <= 0:
        return (-1.0 / t.s1) * delta + 1.0
    if delta < t.s2:
        return (-1.0 / t.s2) * delta + 1.0
    return 0.0


def mu_rpr(delta: float, t: FuzzyThresholds) -> float:
    """Membership of a grade variation in the reversed-prerequisite set.

    Rises linearly from 0 at delta = 0 to 1 at s2, then falls linearly to
    0 at s3. The falling segment is (s3 - delta) / (s3 - s2), which is the
    shape the rising segment meets with value exactly 1 at delta = s2.
    Breakpoints owned for exactness: 0.0 at delta <= 0 and delta >= s3,
    exactly 1.0 at delta = s2.
    """
    if delta <= 0:
        return 0.0
    if delta < t.s2:
        return (1.0 / t.s2) * delta
    if delta < t.s3:
        return (t.s3 - delta) / (t.s3 - t.s2)
    return 0.0
