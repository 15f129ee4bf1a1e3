"""Batch command-line surface: avogrip {mech,sweep,stats,size-motor,simulate,suction}.

Exit codes follow the BSD sysexits convention used by the rest of our
tooling: 0 success, 2 domain error, 64 usage error, 66 missing input
file.  All numeric output is formatted to 6 significant digits with fixed
key order, so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any

from . import datasets, harvest, mechanism, sizing
from .errors import AvogripError
from .fruit import SizeEnvelope
from .mechanism import GripperGeometry
from .sizing import MotorSpec
from .svgchart import polyline_chart

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 64 (EX_USAGE) on bad flags."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse contract
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sig6(value: Any) -> Any:
    """Round floats to 6 significant digits, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.6g}")
    if isinstance(value, dict):
        return {k: _sig6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sig6(v) for v in value]
    return value


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    return p


def _load_geometry(path: str) -> GripperGeometry:
    return GripperGeometry.from_json(_require_file(path))


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(report: dict[str, Any]) -> str:
    return json.dumps(_sig6(report), indent=2) + "\n"


# -- mech ---------------------------------------------------------------------


def _mech_report(geom: GripperGeometry, torque: float, alpha: float) -> dict[str, Any]:
    load = mechanism.finger_drive_force(geom, torque)
    config = mechanism.finger_configuration(geom, alpha)
    return {
        "alpha_deg": math.degrees(alpha),
        "motor_torque_nm": torque,
        "finger_load": {
            "tangent_force_n": load.tangent_force,
            "pinion_torque_nm": load.pinion_torque,
            "finger_force_n": load.finger_force,
        },
        "configuration": {
            "d_m": config.d,
            "angle_abo_deg": math.degrees(config.angle_abo),
            "gamma_deg": math.degrees(config.gamma),
            "theta_deg": math.degrees(config.theta),
        },
        "aperture_m": mechanism.aperture(geom, alpha),
        "total_moment_nm": mechanism.total_grasp_moment(geom, torque, alpha),
    }


def _cmd_mech(args: argparse.Namespace) -> None:
    geom = _load_geometry(args.geom)
    report = _mech_report(geom, args.torque, math.radians(args.alpha_deg))
    if args.format == "csv":
        rows = [
            ["alpha_deg", report["alpha_deg"]],
            ["motor_torque_nm", report["motor_torque_nm"]],
            ["tangent_force_n", report["finger_load"]["tangent_force_n"]],
            ["pinion_torque_nm", report["finger_load"]["pinion_torque_nm"]],
            ["finger_force_n", report["finger_load"]["finger_force_n"]],
            ["d_m", report["configuration"]["d_m"]],
            ["angle_abo_deg", report["configuration"]["angle_abo_deg"]],
            ["gamma_deg", report["configuration"]["gamma_deg"]],
            ["theta_deg", report["configuration"]["theta_deg"]],
            ["aperture_m", report["aperture_m"]],
            ["total_moment_nm", report["total_moment_nm"]],
        ]
        _emit(_csv_text(["quantity", "value"], rows), args.output)
    else:
        _emit(_json_text(report), args.output)


# -- sweep --------------------------------------------------------------------


def _cmd_sweep(args: argparse.Namespace) -> None:
    geom = _load_geometry(args.geom)
    step_rad = math.radians(args.step_deg)
    lo, hi = geom.alpha_range
    rows: list[list[Any]] = []
    k = 0
    while True:
        alpha = lo + k * step_rad
        if alpha > hi + 1e-12:
            break
        alpha = min(alpha, hi)
        config = mechanism.finger_configuration(geom, alpha)
        rows.append(
            [
                math.degrees(alpha),
                config.d,
                math.degrees(config.theta),
                mechanism.aperture(geom, alpha),
                mechanism.total_grasp_moment(geom, args.torque, alpha),
            ]
        )
        k += 1
    text = _csv_text(["alpha_deg", "d_m", "theta_deg", "aperture_m", "moment_nm"], rows)
    _emit(text, args.output)
    if args.plot:
        chart = polyline_chart(
            [
                ("aperture_mm", [(r[0], r[3] * 1e3) for r in rows]),
                ("moment_nm", [(r[0], r[4]) for r in rows]),
            ],
            title="drive-angle sweep",
            x_label="alpha [deg]",
            y_label="aperture [mm] / moment [N*m]",
        )
        Path(args.plot).write_text(chart, encoding="utf-8")


# -- stats --------------------------------------------------------------------


def _cmd_stats(args: argparse.Namespace) -> None:
    bundled = datasets.bundled_data_paths()
    detachment_path = (
        bundled["detachment"] if args.detachment == "bundled" else Path(args.detachment)
    )
    if args.trials == ["bundled"]:
        trial_paths = [bundled["trials_fv"], bundled["trials_cv"]]
    else:
        trial_paths = [Path(p) for p in args.trials]

    records = datasets.load_detachment_records(_require_file(str(detachment_path)))
    trials = []
    for p in trial_paths:
        trials.extend(datasets.load_grasp_trials(_require_file(str(p))))

    force_stats = datasets.viewpoint_stats(records)
    rotation = datasets.group_rotation_stats(trials)

    report = {
        "detachment": {
            "source": str(detachment_path),
            "by_viewpoint": [
                {
                    "viewpoint": str(s.viewpoint),
                    "count": s.count,
                    "mean_force_n": s.mean_force_n,
                    "min_force_n": s.min_force_n,
                    "max_force_n": s.max_force_n,
                }
                for s in force_stats
            ],
        },
        "rotation": {
            "sources": [str(p) for p in trial_paths],
            "cells": [
                {
                    "group": str(c.group),
                    "viewpoint": str(c.viewpoint),
                    "count": c.count,
                    "mean_rotation_deg": c.mean_rotation_deg,
                }
                for c in rotation.cells
            ],
            "ratios": [
                {"group": str(r.group), "cv_over_fv": r.cv_over_fv}
                for r in rotation.ratios
            ],
        },
    }
    if args.format == "csv":
        rows: list[list[Any]] = []
        for s in force_stats:
            rows.append(
                ["force", "", str(s.viewpoint), s.count, s.mean_force_n, s.min_force_n, s.max_force_n]
            )
        for c in rotation.cells:
            rows.append(
                ["rotation", str(c.group), str(c.viewpoint), c.count, c.mean_rotation_deg, None, None]
            )
        for r in rotation.ratios:
            rows.append(["ratio", str(r.group), "", None, r.cv_over_fv, None, None])
        text = _csv_text(["kind", "group", "viewpoint", "count", "mean", "min", "max"], rows)
        _emit(text, args.output)
    else:
        _emit(_json_text(report), args.output)


# -- size-motor -----------------------------------------------------------------


def _cmd_size_motor(args: argparse.Namespace) -> None:
    geom = _load_geometry(args.geom)
    envelope = SizeEnvelope(
        height_range=(args.height_mm[0] / 1e3, args.height_mm[1] / 1e3),
        width_range=(args.width_mm[0] / 1e3, args.width_mm[1] / 1e3),
        mass_range=(args.mass_kg[0], args.mass_kg[1]),
    )
    spec = sizing.size_motor(
        geom,
        envelope,
        detach_force=args.detach_force,
        angular_accel=args.accel,
        safety_factor=args.safety,
    )
    report = {
        **spec.to_json_dict(),
        "inputs": {
            "geometry": str(args.geom),
            "detach_force_n": args.detach_force,
            "angular_accel_rad_s2": args.accel,
            "envelope": {
                "width_mm": list(args.width_mm),
                "height_mm": list(args.height_mm),
                "mass_kg": list(args.mass_kg),
            },
        },
    }
    if args.format == "csv":
        rows = [
            ["rated_torque_nm", report["rated_torque_nm"]],
            ["safety_factor", report["safety_factor"]],
            ["worst_case_alpha_deg", report.get("worst_case_alpha_deg")],
        ]
        _emit(_csv_text(["quantity", "value"], rows), args.output)
    else:
        _emit(_json_text(report), args.output)


# -- simulate -------------------------------------------------------------------


def _cmd_simulate(args: argparse.Namespace) -> None:
    geom = _load_geometry(args.geom)
    if args.motor:
        with open(_require_file(args.motor), "r", encoding="utf-8") as fh:
            motor = MotorSpec.from_json_dict(json.load(fh))
    elif args.motor_torque is not None:
        motor = MotorSpec(rated_torque=args.motor_torque, safety_factor=1.0)
    else:
        raise AvogripError("one of --motor or --motor-torque is required")

    if args.trials == ["bundled"]:
        bundled = datasets.bundled_data_paths()
        for key in ("trials_fv", "trials_cv"):
            _require_file(str(bundled[key]))
        trials = datasets.load_bundled_grasp_trials()
    else:
        trials = []
        for p in args.trials:
            trials.extend(datasets.load_grasp_trials(_require_file(p)))

    report_obj = harvest.run_campaign(
        trials,
        geom,
        motor,
        wrist_speed=args.wrist_speed,
        fruit_mass_default=args.fruit_mass,
        holding_threshold=args.holding_threshold,
        predictive=args.predictive,
    )
    if args.format == "csv":
        rows = [
            [
                t["sample_no"],
                t["group"],
                t["viewpoint"],
                t["b_mm"],
                t["h_mm"],
                t["success"],
                t["closure_alpha_deg"],
                t["wrist_rotation_deg"],
                t["detach_s"],
                t["elapsed_s"],
                t["applied_moment_nm"],
                t["fault_reason"],
            ]
            for t in report_obj.to_json_dict()["trials"]
        ]
        text = _csv_text(
            [
                "sample_no",
                "group",
                "viewpoint",
                "b_mm",
                "h_mm",
                "success",
                "closure_alpha_deg",
                "wrist_rotation_deg",
                "detach_s",
                "elapsed_s",
                "applied_moment_nm",
                "fault_reason",
            ],
            rows,
        )
        _emit(text, args.output)
    else:
        _emit(_json_text(report_obj.to_json_dict()), args.output)


# -- suction --------------------------------------------------------------------


def _cmd_suction(args: argparse.Namespace) -> None:
    report = sizing.suction_report(
        vacuum_pressure=args.vacuum_pa,
        effective_diameter=args.diameter_mm / 1e3,
        atmospheric=args.atmospheric_pa,
    )
    if args.format == "csv":
        rows = [
            ["force_n", report["force_n"]],
            ["delta_p_pa", report["delta_p_pa"]],
            ["effective_diameter_m", report["effective_diameter_m"]],
            ["quoted_figures_consistent", report["rig_reference"]["quoted_figures_consistent"]],
        ]
        _emit(_csv_text(["quantity", "value"], rows), args.output)
    else:
        _emit(_json_text(report), args.output)


# -- parser ---------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="avogrip", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p: _Parser) -> None:
        p.add_argument("--output", help="write the report to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("mech", help="finger load and configuration at one drive angle")
    p.add_argument("--geom", required=True, help="gripper geometry JSON")
    p.add_argument("--torque", type=float, default=1.0, help="motor torque [N*m]")
    p.add_argument("--alpha-deg", type=float, required=True, help="drive angle [deg]")
    add_common(p)
    p.set_defaults(handler=_cmd_mech)

    p = sub.add_parser("sweep", help="CSV sweep of d/theta/aperture/moment over the range")
    p.add_argument("--geom", required=True)
    p.add_argument("--torque", type=float, default=1.0)
    p.add_argument("--step-deg", type=float, default=0.5)
    p.add_argument("--plot", help="also write a self-contained SVG chart here")
    add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("stats", help="viewpoint force and rotation statistics")
    p.add_argument("--detachment", default="bundled", help="detachment CSV or 'bundled'")
    p.add_argument(
        "--trials",
        nargs="+",
        default=["bundled"],
        help="grasp-trial CSVs or 'bundled'",
    )
    add_common(p)
    p.set_defaults(handler=_cmd_stats)

    p = sub.add_parser("size-motor", help="worst-case motor torque over the fruit envelope")
    p.add_argument("--geom", required=True)
    p.add_argument("--detach-force", type=float, default=9.6, help="detachment force [N]")
    p.add_argument("--accel", type=float, default=0.0, help="angular acceleration [rad/s^2]")
    p.add_argument("--safety", type=float, default=1.0, help="safety factor >= 1")
    p.add_argument("--width-mm", type=float, nargs=2, default=(53.8, 99.8), metavar=("MIN", "MAX"))
    p.add_argument("--height-mm", type=float, nargs=2, default=(64.5, 129.9), metavar=("MIN", "MAX"))
    p.add_argument("--mass-kg", type=float, nargs=2, default=(0.2, 0.3), metavar=("MIN", "MAX"))
    add_common(p)
    p.set_defaults(handler=_cmd_size_motor)

    p = sub.add_parser("simulate", help="replay or predict a harvesting campaign")
    p.add_argument("--trials", nargs="+", default=["bundled"], help="trial CSVs or 'bundled'")
    p.add_argument("--geom", required=True)
    p.add_argument("--motor", help="MotorSpec JSON file")
    p.add_argument("--motor-torque", type=float, help="rated torque [N*m] instead of --motor")
    p.add_argument("--wrist-speed", type=float, default=sizing.DEFAULT_WRIST_SPEED)
    p.add_argument("--fruit-mass", type=float, default=harvest.DEFAULT_FRUIT_MASS)
    p.add_argument("--holding-threshold", type=float, default=None, help="override the holding gate [N*m]")
    p.add_argument("--predictive", action="store_true", help="use the rotation model instead of replaying")
    add_common(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("suction", help="suction holding force and rig consistency check")
    p.add_argument("--diameter-mm", type=float, required=True)
    p.add_argument("--vacuum-pa", type=float, default=sizing.VACUUM_RIG_ULTIMATE_PA)
    p.add_argument("--atmospheric-pa", type=float, default=sizing.ATMOSPHERIC_PRESSURE)
    add_common(p)
    p.set_defaults(handler=_cmd_suction)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if getattr(args, "step_deg", None) is not None and args.command == "sweep":
        if args.step_deg <= 0:
            parser.print_usage(sys.stderr)
            sys.stderr.write("avogrip sweep: error: --step-deg must be > 0\n")
            return EXIT_USAGE

    try:
        args.handler(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"avogrip: missing input: {exc}\n")
        return EXIT_NOINPUT
    except AvogripError as exc:
        sys.stderr.write(f"avogrip: error: {exc}\n")
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
