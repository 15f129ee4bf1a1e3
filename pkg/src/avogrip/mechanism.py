"""Kinematics and force analysis of the five-finger internal-gear gripper.

A motor drives a large internal ring gear that meshes with one pinion per
finger; each finger is a post offset from its pinion's centre.  Points are
named O (ring centre), A (pinion centre), B (finger centre).  The drive
angle ``alpha`` is the angle at A between AO and AB, measured by the motor
encoder.

Force chain per finger, for motor torque tau_M:

    F_t = tau_M / R          tangent force at the ring/pinion pitch circle
    tau_1 = F_t * r          torque on the pinion
    F = tau_1 / l_AB         force at the finger post

The radial mesh component points at the ring centre and carries no moment.
The finger force contributes a moment about O through its component along
the tangent of the circle of finger centres:

    tau = n * F * cos(theta) * d

with d = |OB| from the law of cosines and theta the angle between F and
that tangent.  theta = pi - angle_ABO identically, so cos(theta) changes
sign when angle_ABO passes 90 deg: past the critical drive angle
acos(l_AB/l_OA) the finger force opposes closing and the total moment goes
negative.  Moments are returned signed; callers decide on clamping.

angle_ABO is computed from the law of cosines.  The sine-rule form
asin(l_OA*sin(alpha)/d) returns the acute branch and is wrong whenever
angle_ABO is obtuse; it is kept only as a cross-check for acute
configurations (:func:`abo_angle_asin`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any

from .errors import (
    AlphaRangeError,
    DomainError,
    UnreachableApertureError,
)

# Actuation limits of the physical prototype; stored as the default range
# for new geometries.
DEFAULT_ALPHA_RANGE = (math.radians(13.0), math.radians(110.0))

# |aperture(alpha) - opening| and bracket width at which the aperture
# inversion stops; both bounds hold on return.
APERTURE_TOL = 1e-9
_ALPHA_BRACKET_TOL = 1e-12

_GEOMETRY_JSON_KEYS = (
    "ring_radius_mm",
    "pinion_radius_mm",
    "finger_offset_mm",
    "center_distance_mm",
    "finger_count",
    "finger_diameter_mm",
    "alpha_min_deg",
    "alpha_max_deg",
)


@dataclass(frozen=True)
class GripperGeometry:
    """Link/gear dimensions and actuation limits (SI: metres, radians).

    ring_radius     R      pitch radius of the internal ring gear
    pinion_radius   r      pitch radius of each finger pinion
    finger_offset   l_AB   pinion centre to finger centre
    center_distance l_OA   ring centre to pinion centre
    """

    ring_radius: float
    pinion_radius: float
    finger_offset: float
    center_distance: float
    finger_count: int = 5
    finger_diameter: float = 0.01
    alpha_range: tuple[float, float] = DEFAULT_ALPHA_RANGE

    def __post_init__(self) -> None:
        for name in (
            "ring_radius",
            "pinion_radius",
            "finger_offset",
            "center_distance",
            "finger_diameter",
        ):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be > 0, got {value!r}", field=name)
        if self.finger_count < 2:
            raise DomainError(
                f"finger_count must be >= 2, got {self.finger_count}",
                field="finger_count",
            )
        if self.pinion_radius >= self.ring_radius:
            raise DomainError(
                "pinion_radius must be smaller than ring_radius",
                field="pinion_radius",
            )
        if self.finger_offset >= self.center_distance:
            # Equality would let B coincide with O at alpha -> 0 (degenerate
            # triangle, d -> 0); the finger pivot circle must stay inside
            # the pinion-centre circle.
            raise DomainError(
                "finger_offset must be smaller than center_distance",
                field="finger_offset",
            )
        lo, hi = self.alpha_range
        if not (0.0 < lo < hi < math.pi):
            raise DomainError(
                f"alpha_range must satisfy 0 < min < max < pi, got ({lo}, {hi})",
                field="alpha_range",
            )

    # -- JSON boundary (millimetres / degrees in the file) ------------------

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "ring_radius_mm": self.ring_radius * 1e3,
            "pinion_radius_mm": self.pinion_radius * 1e3,
            "finger_offset_mm": self.finger_offset * 1e3,
            "center_distance_mm": self.center_distance * 1e3,
            "finger_count": self.finger_count,
            "finger_diameter_mm": self.finger_diameter * 1e3,
            "alpha_min_deg": math.degrees(self.alpha_range[0]),
            "alpha_max_deg": math.degrees(self.alpha_range[1]),
        }

    @classmethod
    def from_json_dict(cls, doc: dict[str, Any]) -> "GripperGeometry":
        missing = [k for k in _GEOMETRY_JSON_KEYS if k not in doc]
        if missing:
            raise DomainError(
                f"geometry document missing keys: {', '.join(missing)}",
                field=missing[0],
            )
        return cls(
            ring_radius=float(doc["ring_radius_mm"]) / 1e3,
            pinion_radius=float(doc["pinion_radius_mm"]) / 1e3,
            finger_offset=float(doc["finger_offset_mm"]) / 1e3,
            center_distance=float(doc["center_distance_mm"]) / 1e3,
            finger_count=int(doc["finger_count"]),
            finger_diameter=float(doc["finger_diameter_mm"]) / 1e3,
            alpha_range=(
                math.radians(float(doc["alpha_min_deg"])),
                math.radians(float(doc["alpha_max_deg"])),
            ),
        )

    @classmethod
    def from_json(cls, source: str | Path | IO[str]) -> "GripperGeometry":
        if hasattr(source, "read"):
            doc = json.load(source)
        else:
            with open(source, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        if not isinstance(doc, dict):
            raise DomainError("geometry document must be a JSON object")
        return cls.from_json_dict(doc)


@dataclass(frozen=True)
class FingerLoad:
    """Per-finger force decomposition for a given motor torque.

    ``radial_force_moment_free`` records that the radial mesh component
    points at the ring centre and therefore contributes no moment.
    """

    tangent_force: float
    pinion_torque: float
    finger_force: float
    radial_force_moment_free: bool = True


@dataclass(frozen=True)
class FingerConfiguration:
    """Triangle ABO solved at one drive angle (lengths m, angles rad)."""

    alpha: float
    d: float
    angle_abo: float
    gamma: float
    theta: float


def _check_alpha(geom: GripperGeometry, alpha: float) -> float:
    lo, hi = geom.alpha_range
    if not (lo <= alpha <= hi):
        raise AlphaRangeError(alpha, geom.alpha_range)
    return float(alpha)


def finger_drive_force(geom: GripperGeometry, motor_torque: float) -> FingerLoad:
    """Force chain ring -> pinion -> finger for one finger.

    Negative torque is rejected; drive direction is the caller's concern,
    not a sign convention here.
    """
    if motor_torque < 0:
        raise DomainError(
            f"motor_torque must be >= 0, got {motor_torque!r}", field="motor_torque"
        )
    tangent = motor_torque / geom.ring_radius
    pinion = tangent * geom.pinion_radius
    finger = pinion / geom.finger_offset
    return FingerLoad(tangent_force=tangent, pinion_torque=pinion, finger_force=finger)


def pivot_distance(geom: GripperGeometry, alpha: float) -> float:
    """|OB|: ring centre to finger centre, law of cosines in triangle ABO."""
    v, u = geom.finger_offset, geom.center_distance
    return math.sqrt(v * v + u * u - 2.0 * v * u * math.cos(alpha))


def pivot_distance_slope(geom: GripperGeometry, alpha: float) -> float:
    """Analytic d(pivot_distance)/d(alpha) = l_AB*l_OA*sin(alpha)/d."""
    d = pivot_distance(geom, alpha)
    return geom.finger_offset * geom.center_distance * math.sin(alpha) / d


def finger_configuration(geom: GripperGeometry, alpha: float) -> FingerConfiguration:
    """Solve triangle ABO at a drive angle within the actuation range."""
    alpha = _check_alpha(geom, alpha)
    v, u = geom.finger_offset, geom.center_distance
    d = pivot_distance(geom, alpha)
    cos_abo = (v * v + d * d - u * u) / (2.0 * v * d)
    angle_abo = math.acos(max(-1.0, min(1.0, cos_abo)))
    gamma = angle_abo - math.pi / 2.0
    theta = math.pi / 2.0 - gamma
    return FingerConfiguration(alpha=alpha, d=d, angle_abo=angle_abo, gamma=gamma, theta=theta)


def abo_angle_asin(geom: GripperGeometry, alpha: float) -> float:
    """angle_ABO from the sine rule: asin(l_OA*sin(alpha)/d).

    Returns the acute branch only, so it disagrees with
    :func:`finger_configuration` whenever angle_ABO is obtuse.  Kept as an
    independent cross-check for acute configurations.
    """
    alpha = _check_alpha(geom, alpha)
    d = pivot_distance(geom, alpha)
    ratio = geom.center_distance * math.sin(alpha) / d
    return math.asin(max(-1.0, min(1.0, ratio)))


def single_finger_moment(geom: GripperGeometry, motor_torque: float, alpha: float) -> float:
    """Moment about the ring centre from one finger: F*cos(theta)*d, signed."""
    load = finger_drive_force(geom, motor_torque)
    config = finger_configuration(geom, alpha)
    return load.finger_force * math.cos(config.theta) * config.d


def total_grasp_moment(geom: GripperGeometry, motor_torque: float, alpha: float) -> float:
    """Closing moment from all fingers: n*F*cos(theta)*d, signed.

    Negative values mean the finger force opposes closing at this drive
    angle (theta past 90 deg).
    """
    return geom.finger_count * single_finger_moment(geom, motor_torque, alpha)


def transmits(geom: GripperGeometry, alpha: float) -> bool:
    """True when the fingers produce a positive closing moment at alpha."""
    return math.cos(finger_configuration(geom, alpha).theta) > 0.0


def aperture(geom: GripperGeometry, alpha: float) -> float:
    """Opening between opposing finger surfaces: 2*d(alpha) - finger_diameter.

    Diameter of the circle traced by the finger centrelines minus one
    finger diameter; strictly increasing in alpha.  Finger curvature and
    deflection are ignored.
    """
    alpha = _check_alpha(geom, alpha)
    return 2.0 * pivot_distance(geom, alpha) - geom.finger_diameter


def aperture_range(geom: GripperGeometry) -> tuple[float, float]:
    """Achievable (min, max) aperture over the actuation range."""
    lo, hi = geom.alpha_range
    return aperture(geom, lo), aperture(geom, hi)


def alpha_for_aperture(geom: GripperGeometry, opening: float) -> float:
    """Drive angle producing a given opening, by bisection.

    Monotonicity of the aperture guarantees a unique root; iteration stops
    once both the aperture mismatch is below ``APERTURE_TOL`` and the alpha
    bracket has collapsed below 1e-12 rad.
    """
    lo, hi = geom.alpha_range
    ap_lo, ap_hi = aperture_range(geom)
    if not (ap_lo <= opening <= ap_hi):
        raise UnreachableApertureError(opening, (ap_lo, ap_hi))
    if opening == ap_lo:
        return lo
    if opening == ap_hi:
        return hi
    a, b = lo, hi
    while (b - a) > _ALPHA_BRACKET_TOL:
        mid = 0.5 * (a + b)
        if aperture(geom, mid) < opening:
            a = mid
        else:
            b = mid
    result = 0.5 * (a + b)
    if abs(aperture(geom, result) - opening) > APERTURE_TOL:
        raise UnreachableApertureError(opening, (ap_lo, ap_hi))
    return result
