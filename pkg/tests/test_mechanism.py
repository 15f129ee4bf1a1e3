"""Worked examples and error paths for the gripper mechanism."""

from __future__ import annotations

import io
import json
import math

import pytest

from avogrip.errors import AlphaRangeError, DomainError, UnreachableApertureError
from avogrip.mechanism import (
    GripperGeometry,
    abo_angle_asin,
    alpha_for_aperture,
    aperture,
    aperture_range,
    finger_configuration,
    finger_drive_force,
    pivot_distance_slope,
    single_finger_moment,
    total_grasp_moment,
)

from .oracles import chain_moment_oracle, pivot_distance_oracle

A60 = math.radians(60.0)

# Frozen from the chain oracle on the reference geometry (R=0.05, r=0.01,
# l_AB=0.015, l_OA=0.04, n=5) at tau_M=1.0, alpha=60 deg:
#   F_t=20, tau_1=0.2, F=13.3333..., d=0.035 exactly,
#   angle_ABO=98.21321 deg (the asin branch would give 81.78679 deg),
#   theta=81.78679 deg, total moment=1/3.
EXPECTED_D_60 = 0.035
EXPECTED_ABO_60_DEG = 98.21321070173822
EXPECTED_THETA_60_DEG = 81.78678929826178
EXPECTED_MOMENT_60 = 1.0 / 3.0

# Frozen pivot distances from the law-of-cosines oracle at the actuation
# limits of the reference geometry.
EXPECTED_D_13 = 0.025607731689037155
EXPECTED_D_110 = 0.04728027254564849


class TestFingerDriveForce:
    def test_worked_example(self, ref_geometry):
        load = finger_drive_force(ref_geometry, 1.0)
        assert load.tangent_force == pytest.approx(20.0, rel=1e-12)
        assert load.pinion_torque == pytest.approx(0.2, rel=1e-12)
        assert load.finger_force == pytest.approx(13.3333, abs=5e-5)
        assert load.radial_force_moment_free

    def test_zero_torque_all_zero(self, ref_geometry):
        load = finger_drive_force(ref_geometry, 0.0)
        assert load.tangent_force == 0.0
        assert load.pinion_torque == 0.0
        assert load.finger_force == 0.0

    def test_linearity(self, ref_geometry):
        one = finger_drive_force(ref_geometry, 1.0)
        two = finger_drive_force(ref_geometry, 2.0)
        assert two.tangent_force == pytest.approx(2 * one.tangent_force, rel=1e-15)
        assert two.pinion_torque == pytest.approx(2 * one.pinion_torque, rel=1e-15)
        assert two.finger_force == pytest.approx(2 * one.finger_force, rel=1e-15)

    def test_internal_consistency(self, ref_geometry):
        load = finger_drive_force(ref_geometry, 1.7)
        assert load.pinion_torque == pytest.approx(
            load.tangent_force * ref_geometry.pinion_radius, rel=1e-15
        )
        assert load.finger_force == pytest.approx(
            load.pinion_torque / ref_geometry.finger_offset, rel=1e-15
        )

    def test_negative_torque_rejected(self, ref_geometry):
        with pytest.raises(DomainError):
            finger_drive_force(ref_geometry, -0.1)


class TestFingerConfiguration:
    def test_d_exact_at_60(self, ref_geometry):
        config = finger_configuration(ref_geometry, A60)
        assert config.d == pytest.approx(EXPECTED_D_60, abs=1e-15)

    def test_obtuse_branch_at_60(self, ref_geometry):
        config = finger_configuration(ref_geometry, A60)
        assert math.degrees(config.angle_abo) == pytest.approx(EXPECTED_ABO_60_DEG, abs=1e-9)
        assert math.degrees(config.theta) == pytest.approx(EXPECTED_THETA_60_DEG, abs=1e-9)

    def test_asin_branch_would_be_wrong_here(self, ref_geometry):
        # The sine-rule form lands on the acute branch at this pose: it
        # returns theta's value, not angle_ABO's.
        asin_angle = abo_angle_asin(ref_geometry, A60)
        assert math.degrees(asin_angle) == pytest.approx(EXPECTED_THETA_60_DEG, abs=1e-9)

    def test_theta_identity(self, ref_geometry):
        config = finger_configuration(ref_geometry, A60)
        assert config.theta == pytest.approx(math.pi - config.angle_abo, abs=1e-12)

    def test_gamma_chain(self, ref_geometry):
        config = finger_configuration(ref_geometry, A60)
        assert config.gamma == pytest.approx(config.angle_abo - math.pi / 2, abs=1e-15)
        assert config.theta == pytest.approx(math.pi / 2 - config.gamma, abs=1e-15)

    def test_alpha_outside_range_rejected(self, ref_geometry):
        with pytest.raises(AlphaRangeError):
            finger_configuration(ref_geometry, math.radians(12.9))
        with pytest.raises(AlphaRangeError):
            finger_configuration(ref_geometry, math.radians(110.1))

    def test_degenerate_geometry_rejected(self):
        # l_AB == l_OA would let d -> 0 at alpha -> 0; the geometry type
        # refuses to represent it.
        with pytest.raises(DomainError):
            GripperGeometry(
                ring_radius=0.05,
                pinion_radius=0.01,
                finger_offset=0.04,
                center_distance=0.04,
            )


class TestTotalGraspMoment:
    def test_worked_example_against_oracle(self, ref_geometry):
        oracle = chain_moment_oracle(0.05, 0.01, 0.015, 0.04, 5, 1.0, A60)
        moment = total_grasp_moment(ref_geometry, 1.0, A60)
        assert moment == pytest.approx(oracle["moment"], rel=1e-12)
        assert moment == pytest.approx(EXPECTED_MOMENT_60, rel=1e-12)
        assert round(moment, 5) == 0.33333

    def test_zero_torque(self, ref_geometry):
        assert total_grasp_moment(ref_geometry, 0.0, A60) == 0.0

    def test_three_x_torque(self, ref_geometry):
        assert total_grasp_moment(ref_geometry, 3.0, A60) == pytest.approx(1.0, rel=1e-12)

    def test_total_is_finger_count_times_single(self, ref_geometry):
        single = single_finger_moment(ref_geometry, 1.3, A60)
        per_finger_sum = math.fsum(
            single_finger_moment(ref_geometry, 1.3, A60)
            for _ in range(ref_geometry.finger_count)
        )
        total = total_grasp_moment(ref_geometry, 1.3, A60)
        assert total == pytest.approx(per_finger_sum, rel=1e-12)
        assert total == pytest.approx(ref_geometry.finger_count * single, rel=1e-15)

    def test_signed_negative_past_critical_angle(self, ref_geometry):
        # Critical angle acos(l_AB/l_OA) = 67.98 deg; beyond it the finger
        # force opposes closing and the moment must come back negative.
        assert total_grasp_moment(ref_geometry, 1.0, math.radians(70)) < 0.0
        assert total_grasp_moment(ref_geometry, 1.0, math.radians(110)) < 0.0


class TestAperture:
    def test_worked_example_60(self, ref_geometry):
        assert aperture(ref_geometry, A60) == pytest.approx(0.060, abs=1e-12)

    def test_at_alpha_max(self, ref_geometry):
        expected = 2 * EXPECTED_D_110 - 0.01
        assert aperture(ref_geometry, math.radians(110)) == pytest.approx(expected, abs=1e-12)
        assert pivot_distance_oracle(0.015, 0.04, math.radians(110)) == pytest.approx(
            EXPECTED_D_110, abs=1e-15
        )

    def test_at_alpha_min(self, ref_geometry):
        expected = 2 * EXPECTED_D_13 - 0.01
        assert aperture(ref_geometry, math.radians(13)) == pytest.approx(expected, abs=1e-12)
        assert pivot_distance_oracle(0.015, 0.04, math.radians(13)) == pytest.approx(
            EXPECTED_D_13, abs=1e-15
        )

    def test_range_matches_endpoints(self, ref_geometry):
        lo, hi = aperture_range(ref_geometry)
        assert lo == aperture(ref_geometry, ref_geometry.alpha_range[0])
        assert hi == aperture(ref_geometry, ref_geometry.alpha_range[1])


class TestAlphaForAperture:
    def test_inverse_of_worked_example(self, ref_geometry):
        alpha = alpha_for_aperture(ref_geometry, 0.060)
        assert math.degrees(alpha) == pytest.approx(60.0, abs=1e-6)

    def test_endpoint_identity(self, ref_geometry):
        lo = ref_geometry.alpha_range[0]
        assert alpha_for_aperture(ref_geometry, aperture(ref_geometry, lo)) == lo

    def test_unreachable_aperture(self, ref_geometry):
        with pytest.raises(UnreachableApertureError) as excinfo:
            alpha_for_aperture(ref_geometry, 0.2)
        lo, hi = excinfo.value.achievable
        assert lo == pytest.approx(2 * EXPECTED_D_13 - 0.01, abs=1e-12)
        assert hi == pytest.approx(2 * EXPECTED_D_110 - 0.01, abs=1e-12)

    def test_below_min_unreachable(self, ref_geometry):
        with pytest.raises(UnreachableApertureError):
            alpha_for_aperture(ref_geometry, 0.01)

    def test_residual_below_tolerance(self, ref_geometry):
        opening = 0.0712
        alpha = alpha_for_aperture(ref_geometry, opening)
        assert abs(aperture(ref_geometry, alpha) - opening) < 1e-9


class TestPivotDistanceSlope:
    def test_matches_finite_difference(self, ref_geometry):
        h = 1e-6
        for alpha_deg in (20.0, 45.0, 75.0, 100.0):
            alpha = math.radians(alpha_deg)
            fd = (
                pivot_distance_oracle(0.015, 0.04, alpha + h)
                - pivot_distance_oracle(0.015, 0.04, alpha - h)
            ) / (2 * h)
            assert pivot_distance_slope(ref_geometry, alpha) == pytest.approx(fd, rel=1e-6)


class TestGeometryValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"ring_radius": -0.05},
            {"pinion_radius": 0.0},
            {"finger_count": 1},
            {"pinion_radius": 0.06},  # pinion must stay inside the ring
            {"alpha_range": (0.0, 1.0)},
            {"alpha_range": (1.0, 1.0)},
            {"alpha_range": (1.0, math.pi)},
        ],
    )
    def test_invalid_geometry_rejected(self, kwargs):
        base = dict(
            ring_radius=0.05,
            pinion_radius=0.01,
            finger_offset=0.015,
            center_distance=0.04,
        )
        base.update(kwargs)
        with pytest.raises(DomainError):
            GripperGeometry(**base)


class TestGeometryJson:
    def test_round_trip(self, ref_geometry):
        doc = ref_geometry.to_json_dict()
        clone = GripperGeometry.from_json_dict(doc)
        assert clone == ref_geometry

    def test_millimetre_degree_boundary(self, ref_geometry):
        doc = ref_geometry.to_json_dict()
        assert doc["ring_radius_mm"] == pytest.approx(50.0, abs=1e-12)
        assert doc["alpha_min_deg"] == pytest.approx(13.0, abs=1e-12)
        assert doc["alpha_max_deg"] == pytest.approx(110.0, abs=1e-12)

    def test_from_stream(self, ref_geometry):
        text = json.dumps(ref_geometry.to_json_dict())
        clone = GripperGeometry.from_json(io.StringIO(text))
        assert clone == ref_geometry

    def test_missing_key_rejected(self, ref_geometry):
        doc = ref_geometry.to_json_dict()
        del doc["finger_count"]
        with pytest.raises(DomainError):
            GripperGeometry.from_json_dict(doc)
