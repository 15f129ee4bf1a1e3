"""Ingestion and reduction of the bundled bench/trial datasets.

Two CSV schemas, both UTF-8, comma-separated, with ``#`` comment lines
skipped:

    detachment records: sample_no,viewpoint,force_n,b_mm,h_mm
    grasp trials:       sample_no,group,viewpoint,b_mm,h_mm,rotation_deg

Width/height stay in millimetres inside the record types (dataset
fidelity); conversion to SI happens where records feed the physical
models.  All statistics use ``math.fsum`` so results are independent of
row order.

The bundled fixtures live in the package's ``data/`` directory; the
AVOGRIP_DATA_DIR environment variable points the loaders somewhere else
(same file names) when set.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Sequence

from .errors import (
    DatasetIntegrityError,
    DatasetParseError,
    DomainError,
    RotationModelError,
)
from .fruit import Viewpoint

DATA_DIR_ENV = "AVOGRIP_DATA_DIR"

DETACHMENT_FIXTURE = "detachment_forces.csv"
TRIALS_FV_FIXTURE = "grasp_trials_fv.csv"
TRIALS_CV_FIXTURE = "grasp_trials_cv.csv"

_DETACHMENT_HEADER = ["sample_no", "viewpoint", "force_n", "b_mm", "h_mm"]
_TRIAL_HEADER = ["sample_no", "group", "viewpoint", "b_mm", "h_mm", "rotation_deg"]


class SizeGroup(enum.Enum):
    SMALL = "Small"
    MEDIUM = "Medium"
    LARGE = "Large"

    def __str__(self) -> str:
        return self.value

    @property
    def rank(self) -> int:
        """Ordering index, Small < Medium < Large."""
        return _GROUP_ORDER.index(self)


_GROUP_ORDER = (SizeGroup.SMALL, SizeGroup.MEDIUM, SizeGroup.LARGE)
_VIEWPOINT_ORDER = (Viewpoint.FV, Viewpoint.CV, Viewpoint.BV)


@dataclass(frozen=True)
class DetachmentRecord:
    """One bench measurement: detachment force along one viewpoint axis."""

    sample_no: int
    viewpoint: Viewpoint
    force_n: float
    width_mm: float
    height_mm: float

    def __post_init__(self) -> None:
        if not self.force_n > 0:
            raise DomainError(f"force_n must be > 0, got {self.force_n!r}", field="force_n")
        if not self.width_mm > 0:
            raise DomainError(f"b_mm must be > 0, got {self.width_mm!r}", field="b_mm")
        if not self.height_mm > 0:
            raise DomainError(f"h_mm must be > 0, got {self.height_mm!r}", field="h_mm")


@dataclass(frozen=True)
class GraspTrial:
    """One in-lab grasp-and-detach trial (FV or CV pose only)."""

    sample_no: int
    group: SizeGroup
    viewpoint: Viewpoint
    width_mm: float
    height_mm: float
    rotation_deg: float

    def __post_init__(self) -> None:
        if self.viewpoint is Viewpoint.BV:
            raise DomainError("grasp trials cannot use the BV pose", field="viewpoint")
        if not (0.0 < self.rotation_deg < 360.0):
            raise DomainError(
                f"rotation_deg must be in (0, 360), got {self.rotation_deg!r}",
                field="rotation_deg",
            )
        if not self.width_mm > 0:
            raise DomainError(f"b_mm must be > 0, got {self.width_mm!r}", field="b_mm")
        if not self.height_mm > 0:
            raise DomainError(f"h_mm must be > 0, got {self.height_mm!r}", field="h_mm")


@dataclass(frozen=True)
class ViewpointStats:
    viewpoint: Viewpoint
    count: int
    mean_force_n: float
    min_force_n: float
    max_force_n: float

    def __post_init__(self) -> None:
        if self.count < 1:
            raise DomainError("count must be >= 1", field="count")
        if not (self.min_force_n <= self.mean_force_n <= self.max_force_n):
            raise DomainError("min <= mean <= max violated")


@dataclass(frozen=True)
class RotationCell:
    """Mean required rotation for one (group, viewpoint) cell."""

    group: SizeGroup
    viewpoint: Viewpoint
    count: int
    mean_rotation_deg: float


@dataclass(frozen=True)
class RotationRatio:
    """Per-group CV/FV mean-rotation ratio; None when a side is missing."""

    group: SizeGroup
    cv_over_fv: float | None


@dataclass(frozen=True)
class GroupRotationStats:
    cells: tuple[RotationCell, ...]
    ratios: tuple[RotationRatio, ...]

    def mean(self, group: SizeGroup, viewpoint: Viewpoint) -> float:
        for cell in self.cells:
            if cell.group is group and cell.viewpoint is viewpoint:
                return cell.mean_rotation_deg
        raise KeyError((group, viewpoint))

    def ratio(self, group: SizeGroup) -> float | None:
        for entry in self.ratios:
            if entry.group is group:
                return entry.cv_over_fv
        raise KeyError(group)


# -- CSV parsing ------------------------------------------------------------


def _text_lines(source: str | Path | IO) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            yield from fh
        return
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    yield from io.StringIO(data)


def _parse_rows(source, expected_header: list[str]):
    """Yield (line_no, row) for data rows; validate the header."""
    header_seen = False
    for line_no, raw in enumerate(_text_lines(source), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = next(csv.reader([raw]))
        row = [cell.strip() for cell in row]
        if not header_seen:
            if row != expected_header:
                raise DatasetParseError(
                    f"expected header {','.join(expected_header)!r}, got "
                    f"{','.join(row)!r}",
                    line=line_no,
                )
            header_seen = True
            continue
        if len(row) != len(expected_header):
            raise DatasetParseError(
                f"expected {len(expected_header)} fields, got {len(row)}",
                line=line_no,
            )
        yield line_no, row
    if not header_seen:
        raise DatasetParseError("no header row found")


def _parse_int(value: str, field: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise DatasetParseError(f"field {field!r}: not an integer: {value!r}", line=line)


def _parse_float(value: str, field: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise DatasetParseError(f"field {field!r}: not a number: {value!r}", line=line)


def _parse_viewpoint(value: str, line: int) -> Viewpoint:
    try:
        return Viewpoint(value)
    except ValueError:
        raise DatasetParseError(
            f"field 'viewpoint': expected one of FV/CV/BV, got {value!r}", line=line
        )


def _parse_group(value: str, line: int) -> SizeGroup:
    try:
        return SizeGroup(value)
    except ValueError:
        raise DatasetParseError(
            f"field 'group': expected one of Small/Medium/Large, got {value!r}",
            line=line,
        )


def load_detachment_records(source: str | Path | IO) -> list[DetachmentRecord]:
    """Load detachment-force records, preserving row order."""
    records: list[DetachmentRecord] = []
    seen: set[int] = set()
    for line_no, row in _parse_rows(source, _DETACHMENT_HEADER):
        sample = _parse_int(row[0], "sample_no", line_no)
        viewpoint = _parse_viewpoint(row[1], line_no)
        try:
            record = DetachmentRecord(
                sample_no=sample,
                viewpoint=viewpoint,
                force_n=_parse_float(row[2], "force_n", line_no),
                width_mm=_parse_float(row[3], "b_mm", line_no),
                height_mm=_parse_float(row[4], "h_mm", line_no),
            )
        except DomainError as exc:
            raise DatasetParseError(str(exc), line=line_no)
        if sample in seen:
            raise DatasetIntegrityError(f"duplicate sample_no {sample}")
        seen.add(sample)
        records.append(record)
    return records


def load_grasp_trials(source: str | Path | IO) -> list[GraspTrial]:
    """Load grasp trials, preserving row order."""
    trials: list[GraspTrial] = []
    seen: set[int] = set()
    for line_no, row in _parse_rows(source, _TRIAL_HEADER):
        sample = _parse_int(row[0], "sample_no", line_no)
        group = _parse_group(row[1], line_no)
        viewpoint = _parse_viewpoint(row[2], line_no)
        if viewpoint is Viewpoint.BV:
            raise DatasetIntegrityError(
                f"line {line_no}: grasp trials cannot use the BV pose"
            )
        try:
            trial = GraspTrial(
                sample_no=sample,
                group=group,
                viewpoint=viewpoint,
                width_mm=_parse_float(row[3], "b_mm", line_no),
                height_mm=_parse_float(row[4], "h_mm", line_no),
                rotation_deg=_parse_float(row[5], "rotation_deg", line_no),
            )
        except DomainError as exc:
            raise DatasetParseError(str(exc), line=line_no)
        if sample in seen:
            raise DatasetIntegrityError(f"duplicate sample_no {sample}")
        seen.add(sample)
        trials.append(trial)
    return trials


def _format_number(value: float) -> str:
    # %g trims trailing zeros; data values carry at most 2 decimals.
    return f"{value:g}"


def dump_detachment_records(records: Sequence[DetachmentRecord], stream: IO[str]) -> None:
    stream.write(",".join(_DETACHMENT_HEADER) + "\n")
    for rec in records:
        stream.write(
            f"{rec.sample_no},{rec.viewpoint},{_format_number(rec.force_n)},"
            f"{rec.width_mm:.2f},{rec.height_mm:.2f}\n"
        )


def dump_grasp_trials(trials: Sequence[GraspTrial], stream: IO[str]) -> None:
    stream.write(",".join(_TRIAL_HEADER) + "\n")
    for trial in trials:
        stream.write(
            f"{trial.sample_no},{trial.group},{trial.viewpoint},"
            f"{trial.width_mm:.2f},{trial.height_mm:.2f},"
            f"{_format_number(trial.rotation_deg)}\n"
        )


# -- statistics ---------------------------------------------------------------


def viewpoint_stats(records: Sequence[DetachmentRecord]) -> list[ViewpointStats]:
    """Per-viewpoint force statistics, ordered FV, CV, BV.

    Empty input yields an empty list; viewpoints with no records are
    omitted.
    """
    out: list[ViewpointStats] = []
    for viewpoint in _VIEWPOINT_ORDER:
        forces = [r.force_n for r in records if r.viewpoint is viewpoint]
        if not forces:
            continue
        out.append(
            ViewpointStats(
                viewpoint=viewpoint,
                count=len(forces),
                mean_force_n=math.fsum(forces) / len(forces),
                min_force_n=min(forces),
                max_force_n=max(forces),
            )
        )
    return out


def group_rotation_stats(trials: Sequence[GraspTrial]) -> GroupRotationStats:
    """Mean rotation per (group, viewpoint) plus the per-group CV/FV ratio.

    Ratios are rounded to 3 decimals; a group present in only one
    viewpoint gets ratio None rather than an error.
    """
    if not trials:
        raise DomainError("trial list must be nonempty")
    cells: list[RotationCell] = []
    means: dict[tuple[SizeGroup, Viewpoint], float] = {}
    for group in _GROUP_ORDER:
        for viewpoint in (Viewpoint.FV, Viewpoint.CV):
            rotations = [
                t.rotation_deg
                for t in trials
                if t.group is group and t.viewpoint is viewpoint
            ]
            if not rotations:
                continue
            mean = math.fsum(rotations) / len(rotations)
            means[(group, viewpoint)] = mean
            cells.append(
                RotationCell(
                    group=group,
                    viewpoint=viewpoint,
                    count=len(rotations),
                    mean_rotation_deg=mean,
                )
            )
    ratios: list[RotationRatio] = []
    for group in _GROUP_ORDER:
        fv = means.get((group, Viewpoint.FV))
        cv = means.get((group, Viewpoint.CV))
        if fv is None and cv is None:
            continue
        ratio = round(cv / fv, 3) if (fv is not None and cv is not None) else None
        ratios.append(RotationRatio(group=group, cv_over_fv=ratio))
    return GroupRotationStats(cells=tuple(cells), ratios=tuple(ratios))


def required_rotation(
    trials: Sequence[GraspTrial],
    width_mm: float,
    height_mm: float,
    viewpoint: Viewpoint,
) -> float:
    """Predicted wrist rotation [deg] for a fruit of this size and pose.

    Nearest-group-centroid model: the prediction is the mean rotation of
    the size group whose (width, height) centroid lies closest to the
    query in the millimetre plane.  Distance ties go to the larger group,
    whose larger rotations are the conservative choice.
    """
    if viewpoint is Viewpoint.BV:
        raise DomainError("rotation model covers FV and CV poses only", field="viewpoint")
    candidates = []
    for group in _GROUP_ORDER:
        cell = [t for t in trials if t.group is group and t.viewpoint is viewpoint]
        if not cell:
            continue
        cb = math.fsum(t.width_mm for t in cell) / len(cell)
        ch = math.fsum(t.height_mm for t in cell) / len(cell)
        mean_rot = math.fsum(t.rotation_deg for t in cell) / len(cell)
        distance = math.hypot(width_mm - cb, height_mm - ch)
        candidates.append((distance, -group.rank, mean_rot))
    if not candidates:
        raise RotationModelError(f"no trials available for viewpoint {viewpoint}")
    candidates.sort()
    return candidates[0][2]


# -- bundled fixtures ---------------------------------------------------------


def _bundled_path(name: str) -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("avogrip").joinpath("data", name)))


def bundled_data_paths() -> dict[str, Path]:
    """Paths of the three bundled fixtures (honours AVOGRIP_DATA_DIR)."""
    return {
        "detachment": _bundled_path(DETACHMENT_FIXTURE),
        "trials_fv": _bundled_path(TRIALS_FV_FIXTURE),
        "trials_cv": _bundled_path(TRIALS_CV_FIXTURE),
    }


def load_bundled_detachment_records() -> list[DetachmentRecord]:
    return load_detachment_records(_bundled_path(DETACHMENT_FIXTURE))


def load_bundled_grasp_trials() -> list[GraspTrial]:
    """The 30 bundled trials: FV then CV."""
    trials = load_grasp_trials(_bundled_path(TRIALS_FV_FIXTURE))
    trials.extend(load_grasp_trials(_bundled_path(TRIALS_CV_FIXTURE)))
    return trials
