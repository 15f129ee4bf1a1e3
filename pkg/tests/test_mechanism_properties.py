"""Property suites over random geometries and drive angles.

Each suite runs 1000 examples.  Geometries draw the finger offset, the
offset-to-centre ratio, ring/pinion radii, and finger diameter from wide
but physical ranges; the actuation range is opened to (0.01, pi-0.01) so
the whole domain of the trigonometry gets exercised.
"""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from avogrip.datasets import (
    group_rotation_stats,
    load_bundled_detachment_records,
    load_bundled_grasp_trials,
    viewpoint_stats,
)
from avogrip.mechanism import (
    GripperGeometry,
    abo_angle_asin,
    alpha_for_aperture,
    aperture,
    finger_configuration,
    pivot_distance,
    pivot_distance_slope,
    total_grasp_moment,
)

N_CASES = 1000
WIDE_RANGE = (0.01, math.pi - 0.01)

suite = settings(max_examples=N_CASES, deadline=None, derandomize=True)


@st.composite
def geometries(draw) -> GripperGeometry:
    finger_offset = draw(st.floats(0.003, 0.08))
    ratio = draw(st.floats(1.05, 6.0))
    ring = draw(st.floats(0.02, 0.2))
    return GripperGeometry(
        ring_radius=ring,
        pinion_radius=ring * draw(st.floats(0.05, 0.8)),
        finger_offset=finger_offset,
        center_distance=finger_offset * ratio,
        finger_count=draw(st.integers(2, 8)),
        finger_diameter=draw(st.floats(0.002, 0.03)),
        alpha_range=WIDE_RANGE,
    )


@st.composite
def geometry_and_alpha(draw) -> tuple[GripperGeometry, float]:
    geom = draw(geometries())
    u = draw(st.floats(0.0, 1.0))
    lo, hi = geom.alpha_range
    return geom, lo + u * (hi - lo)


@suite
@given(geometry_and_alpha())
def test_law_of_cosines_bounds(case):
    geom, alpha = case
    d = pivot_distance(geom, alpha)
    lo = geom.center_distance - geom.finger_offset
    hi = geom.center_distance + geom.finger_offset
    assert lo - 1e-12 <= d <= hi + 1e-12


@suite
@given(geometry_and_alpha())
def test_theta_is_pi_minus_abo(case):
    geom, alpha = case
    config = finger_configuration(geom, alpha)
    assert abs(config.theta - (math.pi - config.angle_abo)) <= 1e-12


@suite
@given(geometries(), st.floats(0.0, 1.0))
def test_asin_agrees_on_acute_configurations(geom, u):
    # angle_ABO is obtuse below the critical angle acos(l_AB/l_OA), so
    # draw alpha above it and keep a margin from 90 deg where asin loses
    # precision.
    critical = math.acos(geom.finger_offset / geom.center_distance)
    lo = max(geom.alpha_range[0], critical)
    hi = geom.alpha_range[1]
    assume(lo < hi)
    alpha = lo + u * (hi - lo)
    config = finger_configuration(geom, alpha)
    assume(config.angle_abo < math.pi / 2 - 0.01)
    assert abs(abo_angle_asin(geom, alpha) - config.angle_abo) <= 1e-9


@suite
@given(geometry_and_alpha())
def test_pivot_distance_slope_matches_finite_difference(case):
    geom, alpha = case
    lo, hi = geom.alpha_range
    h = 1e-6
    assume(lo + h < alpha < hi - h)
    fd = (pivot_distance(geom, alpha + h) - pivot_distance(geom, alpha - h)) / (2 * h)
    analytic = pivot_distance_slope(geom, alpha)
    assert analytic == pytest.approx(fd, rel=1e-6)


@suite
@given(geometry_and_alpha(), st.floats(1e-3, 1e3))
def test_moment_linear_in_torque(case, k):
    geom, alpha = case
    base = total_grasp_moment(geom, 1.0, alpha)
    scaled = total_grasp_moment(geom, k, alpha)
    assert scaled == pytest.approx(k * base, rel=1e-12, abs=1e-300)


@suite
@given(geometries(), st.floats(0.0, 1.0), st.floats(1e-4, 1.0))
def test_pivot_distance_strictly_increasing(geom, u, gap_frac):
    lo, hi = geom.alpha_range
    a1 = lo + u * (hi - lo - 1e-4)
    a2 = a1 + gap_frac * (hi - a1)
    assume(a2 - a1 > 1e-7)
    assert pivot_distance(geom, a1) < pivot_distance(geom, a2)
    assert aperture(geom, a1) < aperture(geom, a2)


@suite
@given(geometry_and_alpha())
def test_aperture_round_trip(case):
    geom, alpha = case
    opening = aperture(geom, alpha)
    recovered = alpha_for_aperture(geom, opening)
    assert abs(recovered - alpha) <= 1e-6


@suite
@given(st.integers(0, 2**32 - 1))
def test_statistics_permutation_invariant(seed):
    records = load_bundled_detachment_records()
    trials = load_bundled_grasp_trials()
    rng = random.Random(seed)
    shuffled_records = records[:]
    shuffled_trials = trials[:]
    rng.shuffle(shuffled_records)
    rng.shuffle(shuffled_trials)
    assert viewpoint_stats(shuffled_records) == viewpoint_stats(records)
    assert group_rotation_stats(shuffled_trials) == group_rotation_stats(trials)
