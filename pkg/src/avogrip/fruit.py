"""Fruit domain types: cylinder approximation, size envelope, viewpoints.

All quantities are SI (metres, kilograms); conversion from the millimetre
figures used in datasheets and CSV fixtures happens at those boundaries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError


class Viewpoint(enum.Enum):
    """Grasp/measurement direction relative to the fruit frame.

    FV faces the peduncle, CV looks along -y (moment applied about +y),
    BV is the straight pull-off direction from below.
    """

    FV = "FV"
    CV = "CV"
    BV = "BV"

    def __str__(self) -> str:  # CSV/report boundary uses the short code
        return self.value


class InertiaAxis(enum.Enum):
    LONGITUDINAL = "longitudinal"
    TRANSVERSE = "transverse"


def _require_positive(value: float, field: str) -> float:
    if not value > 0:
        raise DomainError(f"{field} must be > 0, got {value!r}", field=field)
    return float(value)


@dataclass(frozen=True)
class CylinderFruit:
    """Solid-cylinder stand-in for a fruit: radius, height, mass.

    ``radius`` is half the measured width when built from a fruit
    measurement (see :func:`cylinder_from_fruit`).
    """

    radius: float
    height: float
    mass: float
    label: str = ""

    def __post_init__(self) -> None:
        _require_positive(self.radius, "radius")
        _require_positive(self.height, "height")
        _require_positive(self.mass, "mass")

    @property
    def width(self) -> float:
        return 2.0 * self.radius


@dataclass(frozen=True)
class SizeEnvelope:
    """Inclusive (min, max) bounds on fruit height, width, and mass."""

    height_range: tuple[float, float]
    width_range: tuple[float, float]
    mass_range: tuple[float, float]

    def __post_init__(self) -> None:
        for name, (lo, hi) in (
            ("height_range", self.height_range),
            ("width_range", self.width_range),
            ("mass_range", self.mass_range),
        ):
            _require_positive(lo, f"{name}[0]")
            _require_positive(hi, f"{name}[1]")
            if lo > hi:
                raise DomainError(f"{name} min {lo} exceeds max {hi}", field=name)

    def corners(self) -> list[tuple[float, float, float]]:
        """The 8 (width, height, mass) corner points of the envelope."""
        out = []
        for w in self.width_range:
            for h in self.height_range:
                for m in self.mass_range:
                    out.append((w, h, m))
        return out


def cylinder_from_fruit(
    width: float, height: float, mass: float, label: str = ""
) -> CylinderFruit:
    """Build the cylinder model from a fruit measurement (all SI).

    The cylinder takes the fruit's height directly and half its width as
    radius.
    """
    _require_positive(width, "width")
    _require_positive(height, "height")
    _require_positive(mass, "mass")
    return CylinderFruit(radius=width / 2.0, height=height, mass=mass, label=label)


def moment_of_inertia(fruit: CylinderFruit, axis: InertiaAxis) -> float:
    """Solid-cylinder moment of inertia about a centroidal axis [kg*m^2].

    Longitudinal: m*r^2/2.  Transverse (through the centroid, normal to the
    long axis): m*(3*r^2 + h^2)/12.  The transverse value is the worst case
    whenever h^2 >= 3*r^2, which holds for every fruit in the default
    envelope.
    """
    r, h, m = fruit.radius, fruit.height, fruit.mass
    if axis is InertiaAxis.LONGITUDINAL:
        return m * r * r / 2.0
    if axis is InertiaAxis.TRANSVERSE:
        return m * (3.0 * r * r + h * h) / 12.0
    raise DomainError(f"unknown inertia axis {axis!r}", field="axis")


def default_size_envelope() -> SizeEnvelope:
    """Cultivar size/mass envelope used for worst-case component sizing.

    Heights 64.5-129.9 mm and widths 53.8-99.8 mm cover the common
    cultivars; a mature fruit typically weighs 0.2-0.3 kg.
    """
    return SizeEnvelope(
        height_range=(0.0645, 0.1299),
        width_range=(0.0538, 0.0998),
        mass_range=(0.2, 0.3),
    )
