"""Independent brute-force oracles, written before the library code they check.

Everything here evaluates the raw formula chains step by step with no
imports from :mod:`avogrip`, so agreement with the library is a genuine
cross-check rather than the same code called twice.
"""

from __future__ import annotations

import math


def chain_moment_oracle(
    ring_radius: float,
    pinion_radius: float,
    finger_offset: float,
    center_distance: float,
    finger_count: int,
    motor_torque: float,
    alpha: float,
) -> dict[str, float]:
    """Evaluate the full force/moment chain at one drive angle.

    Tangent force -> pinion torque -> finger force, then triangle ABO by
    the law of cosines (both d and angle_ABO), gamma, theta, and the total
    moment n*F*cos(theta)*d.
    """
    tangent_force = motor_torque / ring_radius
    pinion_torque = tangent_force * pinion_radius
    finger_force = pinion_torque / finger_offset

    d = math.sqrt(
        finger_offset**2
        + center_distance**2
        - 2.0 * finger_offset * center_distance * math.cos(alpha)
    )
    cos_abo = (finger_offset**2 + d**2 - center_distance**2) / (2.0 * finger_offset * d)
    angle_abo = math.acos(cos_abo)
    gamma = angle_abo - math.pi / 2.0
    theta = math.pi / 2.0 - gamma
    moment = finger_count * finger_force * math.cos(theta) * d
    return {
        "tangent_force": tangent_force,
        "pinion_torque": pinion_torque,
        "finger_force": finger_force,
        "d": d,
        "angle_abo": angle_abo,
        "gamma": gamma,
        "theta": theta,
        "moment": moment,
    }


def pivot_distance_oracle(
    finger_offset: float, center_distance: float, alpha: float
) -> float:
    """Law of cosines for |OB| alone."""
    return math.sqrt(
        finger_offset**2
        + center_distance**2
        - 2.0 * finger_offset * center_distance * math.cos(alpha)
    )


def cylinder_inertia_quadrature(
    radius: float,
    height: float,
    mass: float,
    axis: str,
    n_radial: int = 400,
    n_axial: int = 400,
) -> float:
    """Midpoint-rule volume integral of the cylinder inertia.

    Uses cylindrical coordinates with the angular integral done exactly
    (mean of sin^2 is 1/2), leaving a 2-D midpoint rule in (radial, axial).
    Accuracy is O(1/n^2); the default grids give ~1e-5 relative error.
    """
    rho = mass / (math.pi * radius * radius * height)
    ds = radius / n_radial
    dz = height / n_axial
    total = 0.0
    for i in range(n_radial):
        s = (i + 0.5) * ds
        ring = 2.0 * math.pi * s * ds * dz  # volume of one (s, z) cell
        for k in range(n_axial):
            z = -height / 2.0 + (k + 0.5) * dz
            if axis == "longitudinal":
                integrand = s * s  # x^2 + y^2 averaged over the ring
            else:
                integrand = s * s * 0.5 + z * z  # y^2 + z^2 averaged
            total += integrand * ring
    return rho * total


def detach_budget_oracle(
    height: float,
    detach_force: float,
    inertia_transverse: float,
    angular_accel: float,
) -> float:
    """Holding lever at half height plus the inertial term."""
    return detach_force * (height / 2.0) + inertia_transverse * angular_accel
