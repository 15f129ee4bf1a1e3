"""Harvest workflow state machine, per-fruit simulation, and campaigns.

The workflow runs staging -> attaching -> grasping -> detaching.  The
simulator is event-driven: time advances only at phase boundaries, and
detaching is the only phase whose duration comes from physics (wrist
rotation at constant speed).  Staging/attaching/grasping get fixed,
configurable latencies standing in for arm motion; they must be positive
so the event log stays strictly time-ordered.

Two gates decide the outcome.  Grasping succeeds when a drive angle
closing the aperture onto the fruit width exists within the actuation
range and the motor's rated torque produces at least the holding-moment
threshold there.  Detaching succeeds when the required wrist rotation is
within the configured limit; reaching it counts as detachment
confirmation.  Gate failures are Fault outcomes, not exceptions.

Campaigns replay recorded trials by default (each trial's own rotation is
the requirement); the predictive mode instead asks the nearest-centroid
rotation model.  Only replay is checkable against the bundled dataset.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .datasets import GraspTrial, SizeGroup, required_rotation
from .errors import DomainError, InvalidTransitionError, UnreachableApertureError
from .fruit import CylinderFruit, Viewpoint, cylinder_from_fruit
from .mechanism import GripperGeometry, alpha_for_aperture, total_grasp_moment
from .sizing import DEFAULT_WRIST_SPEED, MotorSpec, detach_budget, detach_time

# Mean canonical-view detachment force of the bundled bench dataset; the
# default holding-moment threshold is the quasi-static budget for this
# force on the fruit being grasped.
CV_MEAN_DETACH_FORCE = 9.6  # N

DEFAULT_FRUIT_MASS = 0.25  # kg, middle of the typical 0.2-0.3 kg range


class HarvestState(enum.Enum):
    HOME = "Home"
    STAGING = "Staging"
    ATTACHING = "Attaching"
    GRASPING = "Grasping"
    DETACHING = "Detaching"
    RETRIEVED = "Retrieved"
    FAULT = "Fault"

    def __str__(self) -> str:
        return self.value


class HarvestEvent(enum.Enum):
    BEGIN_STAGE = "BeginStage"
    STAGE_POSE_REACHED = "StagePoseReached"
    FRUIT_ENCLOSED = "FruitEnclosed"
    CLOSURE_REACHED = "ClosureReached"
    DETACH_CONFIRMED = "DetachConfirmed"
    ABORT = "Abort"

    def __str__(self) -> str:
        return self.value


_TRANSITIONS: dict[tuple[HarvestState, HarvestEvent], HarvestState] = {
    (HarvestState.HOME, HarvestEvent.BEGIN_STAGE): HarvestState.STAGING,
    (HarvestState.STAGING, HarvestEvent.STAGE_POSE_REACHED): HarvestState.ATTACHING,
    (HarvestState.ATTACHING, HarvestEvent.FRUIT_ENCLOSED): HarvestState.GRASPING,
    (HarvestState.GRASPING, HarvestEvent.CLOSURE_REACHED): HarvestState.DETACHING,
    (HarvestState.DETACHING, HarvestEvent.DETACH_CONFIRMED): HarvestState.RETRIEVED,
}


def step(state: HarvestState, event: HarvestEvent) -> HarvestState:
    """Advance the workflow one event; Abort faults from any state."""
    if event is HarvestEvent.ABORT:
        return HarvestState.FAULT
    try:
        return _TRANSITIONS[(state, event)]
    except KeyError:
        raise InvalidTransitionError(state, event) from None


@dataclass(frozen=True)
class Pose6D:
    """Position [m] and Euler-XYZ orientation [deg], components in (-180, 180]."""

    position: tuple[float, float, float]
    orientation_deg: tuple[float, float, float]

    def __post_init__(self) -> None:
        for angle in self.orientation_deg:
            if not (-180.0 < angle <= 180.0):
                raise DomainError(
                    f"orientation component {angle!r} outside (-180, 180]",
                    field="orientation_deg",
                )

    def as_list(self) -> list[float]:
        return [*self.position, *self.orientation_deg]


# Pre-grasp pose of the end-effector frame relative to the arm base used
# throughout the in-lab trials.
STAGING_POSE = Pose6D(position=(-0.09, -0.53, 0.84), orientation_deg=(90.1, 5.4, 0.0))


@dataclass(frozen=True)
class HarvestTimings:
    """Fixed phase latencies [s]; all positive to keep event logs ordered."""

    staging_s: float = 2.0
    attaching_s: float = 1.0
    grasping_s: float = 1.0

    def __post_init__(self) -> None:
        for name in ("staging_s", "attaching_s", "grasping_s"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0", field=name)


@dataclass(frozen=True)
class HarvestOutcome:
    """Result of one simulated harvest.

    ``event_log`` records (state entered, entry time); a successful run
    ends in Retrieved, a failed one in Fault with ``fault_reason`` set.
    """

    success: bool
    closure_alpha: float | None
    wrist_rotation_deg: float | None
    elapsed_s: float
    applied_moment: float | None
    fault_reason: str | None
    event_log: tuple[tuple[HarvestState, float], ...]

    def __post_init__(self) -> None:
        if not self.event_log:
            raise DomainError("event_log must be nonempty")
        final = self.event_log[-1][0]
        if self.success and final is not HarvestState.RETRIEVED:
            raise DomainError("successful outcome must end in Retrieved")
        if not self.success and final is not HarvestState.FAULT:
            raise DomainError("failed outcome must end in Fault")
        times = [t for _, t in self.event_log]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("event_log timestamps must be strictly increasing")

    @property
    def detach_seconds(self) -> float | None:
        """Duration of the detaching phase, None if it was never entered."""
        entered = None
        for state, t in self.event_log:
            if state is HarvestState.DETACHING:
                entered = t
            elif entered is not None and state in (
                HarvestState.RETRIEVED,
                HarvestState.FAULT,
            ):
                return t - entered
        return None


RotationModel = Callable[[CylinderFruit, Viewpoint], float]


def simulate_harvest(
    geom: GripperGeometry,
    motor: MotorSpec,
    fruit: CylinderFruit,
    viewpoint: Viewpoint,
    rotation_model: RotationModel,
    wrist_speed: float = DEFAULT_WRIST_SPEED,
    holding_threshold: float | None = None,
    timings: HarvestTimings = HarvestTimings(),
    max_wrist_rotation_deg: float = 360.0,
) -> HarvestOutcome:
    """Drive one fruit through the full workflow.

    ``rotation_model`` maps (fruit, viewpoint) to the wrist rotation [deg]
    required for detachment.  ``holding_threshold`` defaults to the
    quasi-static detachment budget of the grasped fruit at the bundled CV
    mean force.  Gate failures return Fault outcomes; only malformed
    inputs raise.
    """
    if viewpoint is Viewpoint.BV:
        raise DomainError("harvest simulation covers FV and CV poses only", field="viewpoint")
    if not wrist_speed > 0:
        raise DomainError(f"wrist_speed must be > 0, got {wrist_speed!r}", field="wrist_speed")

    log: list[tuple[HarvestState, float]] = []
    clock = 0.0
    state = step(HarvestState.HOME, HarvestEvent.BEGIN_STAGE)
    log.append((state, clock))

    closure_alpha: float | None = None
    applied_moment: float | None = None

    def fault(reason: str, at: float) -> HarvestOutcome:
        log.append((step(state, HarvestEvent.ABORT), at))
        return HarvestOutcome(
            success=False,
            closure_alpha=closure_alpha,
            wrist_rotation_deg=None,
            elapsed_s=at,
            applied_moment=applied_moment,
            fault_reason=reason,
            event_log=tuple(log),
        )

    clock += timings.staging_s
    state = step(state, HarvestEvent.STAGE_POSE_REACHED)
    log.append((state, clock))

    clock += timings.attaching_s
    state = step(state, HarvestEvent.FRUIT_ENCLOSED)
    log.append((state, clock))

    # Grasp gate: the aperture must close onto the fruit width and the
    # motor must produce the holding moment there.
    clock += timings.grasping_s
    try:
        closure_alpha = alpha_for_aperture(geom, fruit.width)
    except UnreachableApertureError:
        return fault("aperture", clock)
    applied_moment = total_grasp_moment(geom, motor.rated_torque, closure_alpha)
    if holding_threshold is None:
        holding_threshold = detach_budget(fruit, CV_MEAN_DETACH_FORCE).total
    if applied_moment < holding_threshold:
        return fault("holding moment", clock)
    state = step(state, HarvestEvent.CLOSURE_REACHED)
    log.append((state, clock))

    rotation = rotation_model(fruit, viewpoint)
    if rotation > max_wrist_rotation_deg:
        clock += detach_time(max_wrist_rotation_deg, wrist_speed)
        return fault("wrist rotation", clock)
    clock += detach_time(rotation, wrist_speed)
    state = step(state, HarvestEvent.DETACH_CONFIRMED)
    log.append((state, clock))

    return HarvestOutcome(
        success=True,
        closure_alpha=closure_alpha,
        wrist_rotation_deg=rotation,
        elapsed_s=clock,
        applied_moment=applied_moment,
        fault_reason=None,
        event_log=tuple(log),
    )


@dataclass(frozen=True)
class TrialResult:
    sample_no: int
    group: SizeGroup
    viewpoint: Viewpoint
    width_mm: float
    height_mm: float
    outcome: HarvestOutcome


@dataclass(frozen=True)
class CellTiming:
    """Mean timings over the successful trials of one (group, viewpoint)."""

    group: SizeGroup
    viewpoint: Viewpoint
    successes: int
    mean_elapsed_s: float | None
    mean_detach_s: float | None


@dataclass(frozen=True)
class CampaignReport:
    trial_results: tuple[TrialResult, ...]
    successes: int
    success_rate: float
    cell_timings: tuple[CellTiming, ...]
    wrist_speed: float
    fruit_mass_default: float
    mode: str
    staging_pose: Pose6D = STAGING_POSE

    def cell(self, group: SizeGroup, viewpoint: Viewpoint) -> CellTiming:
        for cell in self.cell_timings:
            if cell.group is group and cell.viewpoint is viewpoint:
                return cell
        raise KeyError((group, viewpoint))

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "metadata": {
                "mode": self.mode,
                "wrist_speed_rad_s": self.wrist_speed,
                "fruit_mass_default_kg": self.fruit_mass_default,
                "staging_pose": self.staging_pose.as_list(),
            },
            "summary": {
                "trials": len(self.trial_results),
                "successes": self.successes,
                "success_rate": self.success_rate,
                "by_group": [
                    {
                        "group": str(cell.group),
                        "viewpoint": str(cell.viewpoint),
                        "successes": cell.successes,
                        "mean_elapsed_s": cell.mean_elapsed_s,
                        "mean_detach_s": cell.mean_detach_s,
                    }
                    for cell in self.cell_timings
                ],
            },
            "trials": [
                {
                    "sample_no": result.sample_no,
                    "group": str(result.group),
                    "viewpoint": str(result.viewpoint),
                    "b_mm": result.width_mm,
                    "h_mm": result.height_mm,
                    "success": result.outcome.success,
                    "closure_alpha_deg": (
                        math.degrees(result.outcome.closure_alpha)
                        if result.outcome.closure_alpha is not None
                        else None
                    ),
                    "wrist_rotation_deg": result.outcome.wrist_rotation_deg,
                    "detach_s": result.outcome.detach_seconds,
                    "elapsed_s": result.outcome.elapsed_s,
                    "applied_moment_nm": result.outcome.applied_moment,
                    "fault_reason": result.outcome.fault_reason,
                }
                for result in self.trial_results
            ],
        }


def run_campaign(
    trials: Sequence[GraspTrial],
    geom: GripperGeometry,
    motor: MotorSpec,
    wrist_speed: float = DEFAULT_WRIST_SPEED,
    fruit_mass_default: float = DEFAULT_FRUIT_MASS,
    holding_threshold: float | None = None,
    timings: HarvestTimings = HarvestTimings(),
    predictive: bool = False,
    max_workers: int | None = None,
) -> CampaignReport:
    """Simulate every trial and aggregate outcomes.

    Replay mode (default) takes each trial's recorded rotation as the
    requirement; predictive mode asks the nearest-centroid model fitted on
    the trial list itself.  Trials may run on a thread pool; results and
    aggregates are assembled in input order either way, so the report is
    independent of execution order.
    """
    if not trials:
        raise DomainError("trial list must be nonempty")
    mode = "predictive" if predictive else "replay"

    def run_one(trial: GraspTrial) -> TrialResult:
        fruit = cylinder_from_fruit(
            width=trial.width_mm / 1e3,
            height=trial.height_mm / 1e3,
            mass=fruit_mass_default,
            label=f"{trial.viewpoint}-{trial.sample_no}",
        )
        if predictive:
            model: RotationModel = lambda f, v: required_rotation(
                trials, f.width * 1e3, f.height * 1e3, v
            )
        else:
            model = lambda f, v, rot=trial.rotation_deg: rot
        outcome = simulate_harvest(
            geom,
            motor,
            fruit,
            trial.viewpoint,
            model,
            wrist_speed=wrist_speed,
            holding_threshold=holding_threshold,
            timings=timings,
        )
        return TrialResult(
            sample_no=trial.sample_no,
            group=trial.group,
            viewpoint=trial.viewpoint,
            width_mm=trial.width_mm,
            height_mm=trial.height_mm,
            outcome=outcome,
        )

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = tuple(pool.map(run_one, trials))
    else:
        results = tuple(run_one(trial) for trial in trials)

    successes = sum(1 for r in results if r.outcome.success)

    cells: list[CellTiming] = []
    for group in (SizeGroup.SMALL, SizeGroup.MEDIUM, SizeGroup.LARGE):
        for viewpoint in (Viewpoint.FV, Viewpoint.CV):
            members = [
                r for r in results if r.group is group and r.viewpoint is viewpoint
            ]
            if not members:
                continue
            ok = [r for r in members if r.outcome.success]
            cells.append(
                CellTiming(
                    group=group,
                    viewpoint=viewpoint,
                    successes=len(ok),
                    mean_elapsed_s=(
                        math.fsum(r.outcome.elapsed_s for r in ok) / len(ok)
                        if ok
                        else None
                    ),
                    mean_detach_s=(
                        math.fsum(r.outcome.detach_seconds for r in ok) / len(ok)
                        if ok
                        else None
                    ),
                )
            )

    return CampaignReport(
        trial_results=results,
        successes=successes,
        success_rate=successes / len(results),
        cell_timings=tuple(cells),
        wrist_speed=wrist_speed,
        fruit_mass_default=fruit_mass_default,
        mode=mode,
    )
