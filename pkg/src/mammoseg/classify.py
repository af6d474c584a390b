"""Size-based tumor classification rules.

Three independent rule sets keyed on the measured diameter: tumor type
(healthy / benign / malignant), risk stage, and the size component of
the TNM staging table (T1mi..T4). The type and risk tables deliberately
stay separate even where their boundary behavior differs at exactly
1 cm; the report carries both.
"""

from __future__ import annotations

import enum
import math

from .errors import NegativeDiameter, NonFinite, NonPositiveDiameter


class _OrderedEnum(enum.Enum):
    def __lt__(self, other):
        if self.__class__ is not other.__class__:
            return NotImplemented
        members = list(self.__class__)
        return members.index(self) < members.index(other)

    def __le__(self, other):
        return self == other or self.__lt__(other)


class TumorType(enum.Enum):
    HEALTHY = "healthy"
    BENIGN = "benign"
    MALIGNANT = "malignant"


class RiskStage(_OrderedEnum):
    NO_RISK = "no-risk"
    LOW = "low"
    LOW_MEDIUM = "low-medium"
    HIGH = "high"


class TCategory(_OrderedEnum):
    T1MI = "T1mi"
    T1A = "T1a"
    T1B = "T1b"
    T1C = "T1c"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"


def _check_diameter(d_cm: float) -> float:
    d = float(d_cm)
    if math.isnan(d) or math.isinf(d):
        raise NonFinite(f"diameter must be finite, got {d}")
    if d < 0:
        raise NegativeDiameter(f"diameter must be >= 0, got {d}")
    return d


def classify_type(d_cm: float) -> TumorType:
    """0 -> healthy; under 1 cm -> possible benign; 1 cm and over ->
    possible malignant (the boundary goes to the conservative side).
    """
    d = _check_diameter(d_cm)
    if d == 0:
        return TumorType.HEALTHY
    if d < 1.0:
        return TumorType.BENIGN
    return TumorType.MALIGNANT


def classify_risk(d_cm: float) -> RiskStage:
    """Nested size bands: (0,1] low, (1,2] low-to-medium, >2 high."""
    d = _check_diameter(d_cm)
    if d == 0:
        return RiskStage.NO_RISK
    if d <= 1.0:
        return RiskStage.LOW
    if d <= 2.0:
        return RiskStage.LOW_MEDIUM
    return RiskStage.HIGH


def classify_t_category(d_mm: float, chest_wall_or_skin_invasion: bool = False) -> TCategory:
    """Size category of the TNM table (8th edition), in millimeters.

    Intervals are open below, closed above (T1a is (1, 5], etc.);
    chest-wall or skin invasion forces T4 regardless of size.
    """
    d = float(d_mm)
    if math.isnan(d) or math.isinf(d):
        raise NonFinite(f"diameter must be finite, got {d}")
    if d <= 0:
        raise NonPositiveDiameter(f"size category needs a diameter > 0, got {d}")
    if chest_wall_or_skin_invasion:
        return TCategory.T4
    if d <= 1.0:
        return TCategory.T1MI
    if d <= 5.0:
        return TCategory.T1A
    if d <= 10.0:
        return TCategory.T1B
    if d <= 20.0:
        return TCategory.T1C
    if d <= 50.0:
        return TCategory.T2
    return TCategory.T3
