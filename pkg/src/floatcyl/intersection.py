"""Self-intersection test for the two menisci of a floating configuration.

When the meniscus overhangs (the interface is not a graph over x) and the
cylinder sits high enough, the left and right interfaces can cross on the
centerline, which is not physically realizable.  Crossing is decided by the
horizontal reach of the right interface at the vertical-tangent inclination:
the configuration intersects itself exactly when the margin

    I(phi0, C) = C sin(phi0) - sqrt(2) - ln tan(pi/8)
                 + 2 sin((phi0+gamma)/2) + ln|tan((phi0+gamma-pi)/4)|

is <= 0, within the overhanging regimes

    psi0 in [-pi, -pi/2]  <=>  gamma in [0, pi/2],  phi0 in [0, pi/2 - gamma]
    psi0 in [ pi/2,  pi]  <=>  gamma in [pi/2, pi], phi0 in [3pi/2 - gamma, pi]

(the depressed mirror image of the raised case; one margin formula serves
both through the absolute value in the logarithm).  Outside these regimes
the interface is a graph near the vertical tangent and no crossing occurs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import DimensionlessParams, center_height

PI = math.pi

_MARGIN_CONST = math.sqrt(2.0) + math.log(math.tan(PI / 8.0))


class FlatInterfaceError(Exception):
    """phi0 + gamma = pi: the interface is flat and can never self-intersect."""


class Regime(str, Enum):
    PSI_NEGATIVE = "psi_negative"
    PSI_POSITIVE = "psi_positive"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class SubConditions:
    """The three individual overlap conditions, surfaced for diagnostics.

    inclination_in_range: contact inclination reaches past vertical
        (|psi0| >= pi/2).
    height_beyond_radius: cylinder center clears the undisturbed level by
        more than one radius on the overhang side (h > a raised, -h > a
        depressed).
    reach_nonpositive: horizontal coordinate of the interface at the
        vertical-tangent point is <= 0, i.e. the margin is <= 0.
    """

    inclination_in_range: bool
    height_beyond_radius: bool
    reach_nonpositive: bool


@dataclass(frozen=True)
class ValidityReport:
    intersecting: bool
    regime: Regime
    margin: float | None
    conditions: SubConditions


def intersection_margin(phi0: float, capillary_ratio: float,
                        contact_angle: float) -> float:
    """Signed clearance of the right meniscus from the centerline.

    Positive means the interfaces stay apart; <= 0 means they cross (when
    the overhang regime applies).  Raises FlatInterfaceError at
    phi0 + gamma = pi, where the logarithm diverges and no crossing is
    possible.
    """
    if not capillary_ratio > 0.0:
        raise ValueError(
            f"capillary_ratio must be positive, got {capillary_ratio!r}")
    quarter = (phi0 + contact_angle - PI) / 4.0
    if quarter == 0.0:
        raise FlatInterfaceError(
            f"flat interface at phi0={phi0!r}, contact_angle={contact_angle!r}")
    return (capillary_ratio * math.sin(phi0) - _MARGIN_CONST
            + 2.0 * math.sin((phi0 + contact_angle) / 2.0)
            + math.log(abs(math.tan(quarter))))


def _regime(phi0: float, contact_angle: float) -> Regime:
    if 0.0 <= contact_angle <= PI / 2.0 and 0.0 <= phi0 <= PI / 2.0 - contact_angle:
        return Regime.PSI_NEGATIVE
    if PI / 2.0 <= contact_angle <= PI and 3.0 * PI / 2.0 - contact_angle <= phi0 <= PI:
        return Regime.PSI_POSITIVE
    return Regime.NOT_APPLICABLE


def validity(phi0: float, params: DimensionlessParams) -> ValidityReport:
    """Classify a configuration as physically realizable or self-intersecting.

    Classification rests on regime membership plus the sign of the margin;
    the remaining sub-conditions are evaluated and reported but do not
    enter the verdict (the margin already encodes the decisive reach
    condition, and the region structure is generated from it alone).
    """
    if not 0.0 <= phi0 <= PI:
        raise ValueError(f"phi0 must lie in [0, pi], got {phi0!r}")
    regime = _regime(phi0, params.contact_angle)
    h = float(center_height(phi0, params))

    if regime is Regime.NOT_APPLICABLE:
        beyond = abs(h) > 1.0
        return ValidityReport(
            intersecting=False, regime=regime, margin=None,
            conditions=SubConditions(False, beyond, False))

    margin = intersection_margin(phi0, params.capillary_ratio,
                                 params.contact_angle)
    beyond = h > 1.0 if regime is Regime.PSI_NEGATIVE else -h > 1.0
    return ValidityReport(
        intersecting=margin <= 0.0, regime=regime, margin=margin,
        conditions=SubConditions(True, beyond, margin <= 0.0))
