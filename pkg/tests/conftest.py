"""Shared fixtures: reference and grasp-capable geometries, bundled data."""

from __future__ import annotations

import json
import math

import pytest

from avogrip.datasets import (
    load_bundled_detachment_records,
    load_bundled_grasp_trials,
)
from avogrip.mechanism import GripperGeometry
from avogrip.sizing import MotorSpec


@pytest.fixture(scope="session")
def ref_geometry() -> GripperGeometry:
    """Reference geometry used by all worked numeric examples."""
    return GripperGeometry(
        ring_radius=0.05,
        pinion_radius=0.01,
        finger_offset=0.015,
        center_distance=0.04,
        finger_count=5,
        finger_diameter=0.01,
    )


@pytest.fixture(scope="session")
def adequate_geometry() -> GripperGeometry:
    """Geometry sized so every bundled trial fruit grasps with margin.

    Apertures span 40.7-98.8 mm and all closure angles for trial widths
    (41.2-65.5 mm) stay below the critical transmission angle.
    """
    return GripperGeometry(
        ring_radius=0.05,
        pinion_radius=0.01,
        finger_offset=0.02,
        center_distance=0.0495,
        finger_count=5,
        finger_diameter=0.02,
    )


@pytest.fixture(scope="session")
def adequate_motor() -> MotorSpec:
    """Rated torque with ~1.5x margin over the worst bundled-trial demand."""
    return MotorSpec(rated_torque=2.5, safety_factor=1.0)


@pytest.fixture(scope="session")
def bundled_records():
    return load_bundled_detachment_records()


@pytest.fixture(scope="session")
def bundled_trials():
    return load_bundled_grasp_trials()


@pytest.fixture()
def ref_geometry_file(ref_geometry, tmp_path):
    path = tmp_path / "ref_geom.json"
    path.write_text(json.dumps(ref_geometry.to_json_dict(), indent=2))
    return path


@pytest.fixture()
def adequate_geometry_file(adequate_geometry, tmp_path):
    path = tmp_path / "adequate_geom.json"
    path.write_text(json.dumps(adequate_geometry.to_json_dict(), indent=2))
    return path


@pytest.fixture()
def adequate_motor_file(adequate_motor, tmp_path):
    path = tmp_path / "motor.json"
    path.write_text(json.dumps(adequate_motor.to_json_dict(), indent=2))
    return path
