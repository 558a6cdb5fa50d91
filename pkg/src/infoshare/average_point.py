"""Average of privately held points, shared only among those who submit.

Outputs are ``None`` for non-participants. Values are measured against the
average of the true points, whoever participates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import BOTTOM, ConfigurationError, StructuralError

SUPPORTED_EXPONENTS = (1, 2)


@dataclass(frozen=True)
class PointInstance:
    points: tuple[Fraction, ...]
    p: int = 2
    true_average: Fraction = field(init=False)

    def __post_init__(self):
        pts = tuple(Fraction(a) for a in self.points)
        if not pts:
            raise StructuralError("an instance needs at least one player")
        if self.p not in SUPPORTED_EXPONENTS:
            raise ConfigurationError(f"exponent p={self.p} not supported; use one of {SUPPORTED_EXPONENTS}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "true_average", sum(pts, Fraction(0)) / len(pts))

    @property
    def n(self) -> int:
        return len(self.points)


def point_value(y: Optional[Fraction], a_bar: Fraction, p: int = 2):
    if p not in SUPPORTED_EXPONENTS:
        raise ConfigurationError(f"exponent p={p} not supported; use one of {SUPPORTED_EXPONENTS}")
    if y is None or y is BOTTOM:
        return BOTTOM
    return -abs(Fraction(y) - a_bar) ** p


@dataclass(frozen=True)
class AverageOutcome:
    outputs: tuple[Optional[Fraction], ...]
    benefits: tuple[Fraction, ...]


def average_mechanism(instance: PointInstance, participating: Sequence[bool]) -> AverageOutcome:
    if len(participating) != instance.n:
        raise StructuralError(f"expected {instance.n} participation flags, got {len(participating)}")
    submitted = [a for a, p in zip(instance.points, participating) if p]
    mean = sum(submitted, Fraction(0)) / len(submitted) if submitted else None
    outputs = tuple(mean if p else None for p in participating)
    a_bar, p = instance.true_average, instance.p
    benefits = tuple(
        point_value(mean, a_bar, p) - point_value(a, a_bar, p) if part else Fraction(0)
        for a, part in zip(instance.points, participating)
    )
    return AverageOutcome(outputs, benefits)
