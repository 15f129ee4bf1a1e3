"""Five-finger rotary gripper analysis and harvest-simulation toolkit.

Subpackages by concern:

- :mod:`avogrip.fruit` - cylinder fruit model, size envelope, viewpoints
- :mod:`avogrip.mechanism` - gripper kinematics and force/moment analysis
- :mod:`avogrip.sizing` - torque sizing, detach budgets, timing, suction
- :mod:`avogrip.datasets` - bench/trial CSV ingestion and statistics
- :mod:`avogrip.harvest` - workflow state machine, simulation, campaigns
- :mod:`avogrip.cli` - the ``avogrip`` batch command
"""

from .datasets import (
    DetachmentRecord,
    GraspTrial,
    GroupRotationStats,
    SizeGroup,
    ViewpointStats,
    group_rotation_stats,
    load_bundled_detachment_records,
    load_bundled_grasp_trials,
    load_detachment_records,
    load_grasp_trials,
    required_rotation,
    viewpoint_stats,
)
from .errors import (
    AlphaRangeError,
    AvogripError,
    DatasetIntegrityError,
    DatasetParseError,
    DomainError,
    InvalidTransitionError,
    NonTransmittingConfigurationError,
    RotationModelError,
    UnreachableApertureError,
)
from .fruit import (
    CylinderFruit,
    InertiaAxis,
    SizeEnvelope,
    Viewpoint,
    cylinder_from_fruit,
    default_size_envelope,
    moment_of_inertia,
)
from .harvest import (
    CampaignReport,
    HarvestEvent,
    HarvestOutcome,
    HarvestState,
    HarvestTimings,
    Pose6D,
    STAGING_POSE,
    TrialResult,
    run_campaign,
    simulate_harvest,
    step,
)
from .mechanism import (
    FingerConfiguration,
    FingerLoad,
    GripperGeometry,
    alpha_for_aperture,
    aperture,
    aperture_range,
    finger_configuration,
    finger_drive_force,
    single_finger_moment,
    total_grasp_moment,
)
from .sizing import (
    DetachBudget,
    MotorSpec,
    detach_budget,
    detach_time,
    required_motor_torque,
    size_motor,
    suction_force,
    suction_report,
)

__version__ = "0.1.0"
