"""Motor-torque sizing, detachment budgets, timing, and the suction model.

The sizing target is the moment the gripper must hold while the wrist
rotates the fruit off its peduncle: a quasi-static holding moment
(detachment force times a lever arm, default half the fruit height) plus
an inertial term for non-zero angular acceleration about the transverse
centroidal axis.

Worst-case motor torque is searched over the cartesian product of a
1-degree drive-angle grid and the 8 corner points of the fruit envelope,
then refined by golden-section around the coarse maximiser.  Drive angles
past the critical angle acos(l_AB/l_OA) cannot transmit a closing moment
and are skipped; the required torque grows without bound as the critical
angle is approached, so for geometries whose actuation range crosses it
the reported worst case sits at the refinement resolution next to that
boundary.  Such a result should be read as "redesign the linkage or
restrict the actuation range", not as a usable motor rating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

from .errors import DomainError, NonTransmittingConfigurationError
from .fruit import CylinderFruit, InertiaAxis, SizeEnvelope, moment_of_inertia
from .mechanism import GripperGeometry, finger_configuration, total_grasp_moment

# Wrist angular velocity during detachment (manufacturer default).
DEFAULT_WRIST_SPEED = 0.326  # rad/s

# Standard atmosphere used for suction force unless overridden.
ATMOSPHERIC_PRESSURE = 101325.0  # Pa

# Vacuum-gripper comparison rig: pump ultimate vacuum, tube and cup bores,
# and the holding force quoted for the rig.  The quoted force does not
# follow from the quoted tube bore (see suction_report), so both are kept
# and reports flag the mismatch instead of silently correcting it.
VACUUM_RIG_ULTIMATE_PA = 5.0
VACUUM_RIG_TUBE_DIAMETER = 0.0168  # m
VACUUM_RIG_CUP_DIAMETER = 0.0445  # m
VACUUM_RIG_QUOTED_FORCE = 28.60  # N

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DetachBudget:
    """Moment budget for one detachment: holding + inertial terms [N*m]."""

    holding_moment: float
    inertial_moment: float
    total: float

    def __post_init__(self) -> None:
        if self.holding_moment < 0 or self.inertial_moment < 0:
            raise DomainError("budget terms must be >= 0")
        if abs(self.total - (self.holding_moment + self.inertial_moment)) > 1e-12:
            raise DomainError("total must equal holding_moment + inertial_moment")


@dataclass(frozen=True)
class MotorSpec:
    """Motor selection output: rated torque and the worst case behind it."""

    rated_torque: float
    safety_factor: float
    worst_case_alpha: float | None = None
    worst_case_fruit: CylinderFruit | None = None

    def __post_init__(self) -> None:
        if not self.rated_torque > 0:
            raise DomainError(
                f"rated_torque must be > 0, got {self.rated_torque!r}",
                field="rated_torque",
            )
        if self.safety_factor < 1.0:
            raise DomainError(
                f"safety_factor must be >= 1, got {self.safety_factor!r}",
                field="safety_factor",
            )

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "rated_torque_nm": self.rated_torque,
            "safety_factor": self.safety_factor,
        }
        if self.worst_case_alpha is not None:
            doc["worst_case_alpha_deg"] = math.degrees(self.worst_case_alpha)
        if self.worst_case_fruit is not None:
            fruit = self.worst_case_fruit
            doc["worst_case_fruit"] = {
                "width_mm": fruit.width * 1e3,
                "height_mm": fruit.height * 1e3,
                "mass_kg": fruit.mass,
                "label": fruit.label,
            }
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict[str, Any]) -> "MotorSpec":
        alpha = doc.get("worst_case_alpha_deg")
        fruit_doc = doc.get("worst_case_fruit")
        fruit = None
        if fruit_doc is not None:
            fruit = CylinderFruit(
                radius=float(fruit_doc["width_mm"]) / 2e3,
                height=float(fruit_doc["height_mm"]) / 1e3,
                mass=float(fruit_doc["mass_kg"]),
                label=str(fruit_doc.get("label", "")),
            )
        return cls(
            rated_torque=float(doc["rated_torque_nm"]),
            safety_factor=float(doc.get("safety_factor", 1.0)),
            worst_case_alpha=math.radians(float(alpha)) if alpha is not None else None,
            worst_case_fruit=fruit,
        )


def detach_budget(
    fruit: CylinderFruit,
    detach_force: float,
    angular_accel: float = 0.0,
    lever_arm: float | None = None,
) -> DetachBudget:
    """Moment budget to detach one fruit.

    The holding term is the detachment force times a lever arm, default
    half the fruit height (centroid to calyx).  The inertial term uses the
    transverse centroidal inertia, the worst axis for detachment rotation.
    """
    if detach_force < 0:
        raise DomainError(
            f"detach_force must be >= 0, got {detach_force!r}", field="detach_force"
        )
    if angular_accel < 0:
        raise DomainError(
            f"angular_accel must be >= 0, got {angular_accel!r}", field="angular_accel"
        )
    if lever_arm is None:
        lever_arm = fruit.height / 2.0
    elif lever_arm < 0:
        raise DomainError(
            f"lever_arm must be >= 0, got {lever_arm!r}", field="lever_arm"
        )
    holding = detach_force * lever_arm
    inertial = moment_of_inertia(fruit, InertiaAxis.TRANSVERSE) * angular_accel
    return DetachBudget(
        holding_moment=holding, inertial_moment=inertial, total=holding + inertial
    )


def required_motor_torque(
    geom: GripperGeometry, alpha: float, target_moment: float
) -> float:
    """Motor torque for which the fingers deliver ``target_moment`` at alpha.

    Exact inverse of :func:`avogrip.mechanism.total_grasp_moment`:
    tau_M = target * R * l_AB / (n * r * cos(theta) * d).  Raises when the
    configuration cannot transmit a closing moment (cos(theta) <= 0).
    """
    if target_moment < 0:
        raise DomainError(
            f"target_moment must be >= 0, got {target_moment!r}",
            field="target_moment",
        )
    config = finger_configuration(geom, alpha)
    transmission = math.cos(config.theta) * config.d
    if transmission <= 0.0:
        raise NonTransmittingConfigurationError(
            f"configuration at alpha={math.degrees(alpha):.3f} deg cannot "
            "transmit a closing moment (theta >= 90 deg)",
            alpha=alpha,
        )
    return (
        target_moment
        * geom.ring_radius
        * geom.finger_offset
        / (geom.finger_count * geom.pinion_radius * transmission)
    )


def _golden_max(
    f: Callable[[float], float], a: float, b: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximiser returning the best evaluated (x, f(x)).

    Points where ``f`` returns -inf are valid probes (used to mark
    non-transmitting angles), so the best *evaluated* point is tracked
    rather than the final bracket midpoint.
    """
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb > best_f:
        best_x, best_f = b, fb
    c = b - (b - a) * _GOLDEN
    d = a + (b - a) * _GOLDEN
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        for x, fx in ((c, fc), (d, fd)):
            if fx > best_f:
                best_x, best_f = x, fx
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _GOLDEN
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _GOLDEN
            fd = f(d)
    return best_x, best_f


def size_motor(
    geom: GripperGeometry,
    envelope: SizeEnvelope,
    detach_force: float,
    angular_accel: float = 0.0,
    safety_factor: float = 1.0,
    grid_step: float = math.radians(1.0),
    refine_tol: float = 1e-4,
) -> MotorSpec:
    """Worst-case motor torque over drive angles and envelope corners.

    Evaluates :func:`required_motor_torque` on a ``grid_step`` drive-angle
    grid (endpoints included) crossed with the 8 envelope corners,
    skipping non-transmitting angles, then refines the maximum by
    golden-section to ``refine_tol`` radians around the coarse maximiser.
    The reduction is order-independent: ties break on (torque, alpha,
    corner index).  Raises when no angle in the range transmits.
    """
    if safety_factor < 1.0:
        raise DomainError(
            f"safety_factor must be >= 1, got {safety_factor!r}",
            field="safety_factor",
        )
    if grid_step <= 0:
        raise DomainError(
            f"grid_step must be > 0, got {grid_step!r}", field="grid_step"
        )

    corners = []
    for idx, (w, h, m) in enumerate(envelope.corners()):
        fruit = CylinderFruit(
            radius=w / 2.0,
            height=h,
            mass=m,
            label=f"corner-{idx}(w={w * 1e3:.1f}mm,h={h * 1e3:.1f}mm,m={m:.3f}kg)",
        )
        budget = detach_budget(fruit, detach_force, angular_accel)
        corners.append((fruit, budget.total))

    lo, hi = geom.alpha_range
    alphas = []
    steps = int(math.floor((hi - lo) / grid_step + 1e-12))
    for k in range(steps + 1):
        alphas.append(min(lo + k * grid_step, hi))
    if alphas[-1] < hi - 1e-12:
        alphas.append(hi)

    evaluations: list[tuple[float, float, int]] = []  # (torque, alpha, corner idx)
    for alpha in alphas:
        for idx, (_, total) in enumerate(corners):
            try:
                torque = required_motor_torque(geom, alpha, total)
            except NonTransmittingConfigurationError:
                continue
            evaluations.append((torque, alpha, idx))
    if not evaluations:
        raise NonTransmittingConfigurationError(
            "no drive angle in the actuation range transmits a closing moment"
        )

    coarse_torque, coarse_alpha, coarse_idx = max(evaluations)
    worst_fruit, worst_budget = corners[coarse_idx]

    def objective(alpha: float) -> float:
        try:
            return required_motor_torque(geom, alpha, worst_budget)
        except NonTransmittingConfigurationError:
            return -math.inf

    bracket_lo = max(lo, coarse_alpha - grid_step)
    bracket_hi = min(hi, coarse_alpha + grid_step)
    refined_alpha, refined_torque = _golden_max(
        objective, bracket_lo, bracket_hi, refine_tol
    )
    if coarse_torque > refined_torque:
        refined_alpha, refined_torque = coarse_alpha, coarse_torque

    return MotorSpec(
        rated_torque=safety_factor * refined_torque,
        safety_factor=safety_factor,
        worst_case_alpha=refined_alpha,
        worst_case_fruit=worst_fruit,
    )


def detach_time(rotation_deg: float, wrist_speed: float = DEFAULT_WRIST_SPEED) -> float:
    """Seconds to rotate the wrist through ``rotation_deg`` at constant speed."""
    if rotation_deg < 0:
        raise DomainError(
            f"rotation must be >= 0, got {rotation_deg!r}", field="rotation"
        )
    if not wrist_speed > 0:
        raise DomainError(
            f"wrist_speed must be > 0, got {wrist_speed!r}", field="wrist_speed"
        )
    return math.radians(rotation_deg) / wrist_speed


def suction_force(
    vacuum_pressure: float,
    effective_diameter: float,
    atmospheric: float = ATMOSPHERIC_PRESSURE,
) -> float:
    """Holding force of a suction attachment: (P_atm - P_vac) * bore area."""
    if not effective_diameter > 0:
        raise DomainError(
            f"effective_diameter must be > 0, got {effective_diameter!r}",
            field="effective_diameter",
        )
    if vacuum_pressure < 0:
        raise DomainError(
            f"vacuum_pressure must be >= 0, got {vacuum_pressure!r}",
            field="vacuum_pressure",
        )
    if vacuum_pressure >= atmospheric:
        raise DomainError(
            f"vacuum_pressure {vacuum_pressure!r} must be below atmospheric "
            f"{atmospheric!r}",
            field="vacuum_pressure",
        )
    radius = effective_diameter / 2.0
    return (atmospheric - vacuum_pressure) * math.pi * radius * radius


def implied_suction_diameter(
    force: float,
    vacuum_pressure: float = VACUUM_RIG_ULTIMATE_PA,
    atmospheric: float = ATMOSPHERIC_PRESSURE,
) -> float:
    """Effective bore diameter that would produce ``force`` at this vacuum."""
    if not force > 0:
        raise DomainError(f"force must be > 0, got {force!r}", field="force")
    if vacuum_pressure >= atmospheric:
        raise DomainError(
            f"vacuum_pressure {vacuum_pressure!r} must be below atmospheric "
            f"{atmospheric!r}",
            field="vacuum_pressure",
        )
    return 2.0 * math.sqrt(force / ((atmospheric - vacuum_pressure) * math.pi))


def suction_report(
    vacuum_pressure: float,
    effective_diameter: float,
    atmospheric: float = ATMOSPHERIC_PRESSURE,
) -> dict[str, Any]:
    """Suction force plus a consistency check against the rig's quoted figures.

    The comparison rig quotes a 28.60 N holding force alongside a 1.68 cm
    tube bore; the pressure-times-area model gives 22.46 N for that bore,
    and 28.60 N back-solves to a 1.90 cm effective bore.  The report always
    carries the quoted figures, the model value for the quoted tube, and a
    ``quoted_figures_consistent`` flag so the mismatch is never papered
    over.
    """
    force = suction_force(vacuum_pressure, effective_diameter, atmospheric)
    tube_force = suction_force(
        VACUUM_RIG_ULTIMATE_PA, VACUUM_RIG_TUBE_DIAMETER, ATMOSPHERIC_PRESSURE
    )
    implied = implied_suction_diameter(VACUUM_RIG_QUOTED_FORCE)
    consistent = abs(tube_force - VACUUM_RIG_QUOTED_FORCE) <= 0.05
    return {
        "vacuum_pa": vacuum_pressure,
        "atmospheric_pa": atmospheric,
        "delta_p_pa": atmospheric - vacuum_pressure,
        "effective_diameter_m": effective_diameter,
        "force_n": force,
        "rig_reference": {
            "quoted_force_n": VACUUM_RIG_QUOTED_FORCE,
            "tube_diameter_m": VACUUM_RIG_TUBE_DIAMETER,
            "cup_diameter_m": VACUUM_RIG_CUP_DIAMETER,
            "tube_force_model_n": tube_force,
            "implied_diameter_m": implied,
            "quoted_figures_consistent": consistent,
            "note": (
                "quoted holding force does not follow from the quoted tube "
                "bore; it implies the larger effective bore reported here"
            ),
        },
    }
