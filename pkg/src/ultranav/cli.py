"""Scenario files, trace emission, and band-table verification commands.

Scenario format: one directive per line, '#' starts a comment.

    CONFIG key value        tick_ms, debounce_ticks, n_rays, temp,
                            temp_cal, start_x, jitter, seed
    SENSOR name height sarl chest|knee|toe|arch, lengths in cm
    OBSTACLE x0 x1 z0 z1    rectangle in the forward x height plane (cm)
    GROUND x0 x1 dz         terrain elevation patch (cm; negative = hole)
    WALK speed seconds      constant-speed stretch (cm/s, s)

Trace format: CSV with header
    tick,t_ms,user_x,d_chest,d_knee,d_toe,d_down,brzC,brzK,brzT,brzP,
    upstairs,downstep,inferred,advisory
Distances have one decimal place, no-echo prints as '-'.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field, replace

from .classify import (
    classify_chest,
    classify_depth,
    classify_knee,
    classify_toe,
    detect_upstairs,
)
from .geometry import GeometryError, GroundSegment, Rect, SagittalScene
from .pipeline import SimConfig, TrajectorySegment, run_scenario
from .sensing import SensorName, load_calibration

TRACE_HEADER = (
    "tick,t_ms,user_x,d_chest,d_knee,d_toe,d_down,"
    "brzC,brzK,brzT,brzP,upstairs,downstep,inferred,advisory"
)

_CONFIG_KEYS = {
    "tick_ms": float,
    "debounce_ticks": int,
    "n_rays": int,
    "temp": float,
    "temp_cal": float,
    "start_x": float,
    "jitter": float,
    "seed": int,
}


class ScenarioError(ValueError):
    """Scenario file syntax or semantic error, with line number."""


@dataclass
class Scenario:
    """Parsed scenario file contents."""

    config: dict = field(default_factory=dict)
    sensors: dict = field(default_factory=dict)  # SensorName -> (height, sarl)
    obstacles: list = field(default_factory=list)
    ground: list = field(default_factory=list)
    walks: list = field(default_factory=list)


def _numbers(fields, n, lineno, directive):
    if len(fields) != n:
        raise ScenarioError(
            f"line {lineno}: {directive} takes {n} values, got {len(fields)}"
        )
    try:
        return [float(f) for f in fields]
    except ValueError:
        raise ScenarioError(
            f"line {lineno}: non-numeric value in {directive} directive"
        ) from None


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; raises ScenarioError with the offending line."""
    scenario = Scenario()
    ground_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        directive, *fields = body.split()
        directive = directive.upper()
        if directive == "CONFIG":
            if len(fields) != 2:
                raise ScenarioError(f"line {lineno}: CONFIG takes 'key value'")
            key, value = fields
            if key not in _CONFIG_KEYS:
                raise ScenarioError(f"line {lineno}: unknown CONFIG key {key!r}")
            try:
                scenario.config[key] = _CONFIG_KEYS[key](value)
            except ValueError:
                raise ScenarioError(
                    f"line {lineno}: bad value {value!r} for CONFIG {key}"
                ) from None
        elif directive == "SENSOR":
            if len(fields) != 3:
                raise ScenarioError(f"line {lineno}: SENSOR takes 'name height sarl'")
            try:
                name = SensorName(fields[0].lower())
            except ValueError:
                raise ScenarioError(
                    f"line {lineno}: unknown sensor name {fields[0]!r}"
                ) from None
            height, sarl = _numbers(fields[1:], 2, lineno, "SENSOR")
            scenario.sensors[name] = (height, sarl)
        elif directive == "OBSTACLE":
            x0, x1, z0, z1 = _numbers(fields, 4, lineno, "OBSTACLE")
            try:
                scenario.obstacles.append(Rect(x0, x1, z0, z1))
            except GeometryError as exc:
                raise ScenarioError(f"line {lineno}: {exc}") from None
        elif directive == "GROUND":
            x0, x1, dz = _numbers(fields, 3, lineno, "GROUND")
            try:
                scenario.ground.append(GroundSegment(x0, x1, dz))
            except GeometryError as exc:
                raise ScenarioError(f"line {lineno}: {exc}") from None
            ground_lines.append(lineno)
        elif directive == "WALK":
            speed, seconds = _numbers(fields, 2, lineno, "WALK")
            if seconds <= 0:
                raise ScenarioError(f"line {lineno}: WALK duration must be > 0")
            scenario.walks.append(TrajectorySegment(speed, seconds))
        else:
            raise ScenarioError(f"line {lineno}: unknown directive {directive!r}")

    # Surface ground overlaps with the line that introduced them.
    order = sorted(range(len(scenario.ground)), key=lambda i: scenario.ground[i].x0)
    for a, b in zip(order, order[1:]):
        if scenario.ground[b].x0 < scenario.ground[a].x1 - 1e-9:
            raise ScenarioError(
                f"line {ground_lines[b]}: ground segment overlaps an earlier one"
            )
    return scenario


def _fmt(value: float) -> str:
    return f"{value:g}"


def format_scenario(scenario: Scenario) -> str:
    """Render a scenario back to text; parse(format(s)) == s."""
    lines = []
    for key in sorted(scenario.config):
        lines.append(f"CONFIG {key} {_fmt(scenario.config[key])}")
    for name in SensorName:
        if name in scenario.sensors:
            height, sarl = scenario.sensors[name]
            lines.append(f"SENSOR {name.value} {_fmt(height)} {_fmt(sarl)}")
    for r in scenario.obstacles:
        lines.append(f"OBSTACLE {_fmt(r.x0)} {_fmt(r.x1)} {_fmt(r.z0)} {_fmt(r.z1)}")
    for g in scenario.ground:
        lines.append(f"GROUND {_fmt(g.x0)} {_fmt(g.x1)} {_fmt(g.dz)}")
    for w in scenario.walks:
        lines.append(f"WALK {_fmt(w.speed)} {_fmt(w.duration_s)}")
    return "\n".join(lines) + "\n"


def build_simulation(scenario: Scenario, args=None):
    """Merge scenario config with CLI flags into runnable pieces.

    Returns (scene, config, trajectory, start_x); CLI flags win over
    scenario CONFIG lines.
    """
    cfg = dict(scenario.config)
    if args is not None:
        if args.tick_ms is not None:
            cfg["tick_ms"] = args.tick_ms
        if args.temp is not None:
            cfg["temp"] = args.temp
        if args.temp_cal is not None:
            cfg["temp_cal"] = args.temp_cal
        if args.rays is not None:
            cfg["n_rays"] = args.rays
        if args.seed is not None:
            cfg["seed"] = args.seed

    config = SimConfig(
        tick_ms=cfg.get("tick_ms", 30.0),
        temp_actual=cfg.get("temp", 20.0),
        temp_cal=cfg.get("temp_cal", 20.0),
        debounce_ticks=cfg.get("debounce_ticks", 2),
        n_rays=cfg.get("n_rays", 31),
        jitter_cm=cfg.get("jitter", 0.0),
        seed=cfg.get("seed", 0),
    )
    if scenario.sensors:
        sensors = []
        for spec in config.sensors:
            if spec.name in scenario.sensors:
                height, sarl = scenario.sensors[spec.name]
                spec = replace(spec, mount_height=height, sarl=sarl)
            sensors.append(spec)
        config = replace(config, sensors=tuple(sensors))
    if args is not None and args.calib is not None:
        config = replace(config, calibration=load_calibration(args.calib))

    scene = SagittalScene(tuple(scenario.obstacles), tuple(scenario.ground))
    trajectory = list(scenario.walks)
    if not trajectory:
        raise ScenarioError("scenario has no WALK directive")
    return scene, config, trajectory, cfg.get("start_x", 0.0)


def _fmt_distance(d) -> str:
    return "-" if d is None else f"{d:.1f}"


def format_trace(frames) -> str:
    """Byte-stable CSV trace for a frame list."""
    lines = [TRACE_HEADER]
    for f in frames:
        r = f.readings
        inferred = "-" if f.flags.inferred is None else f.flags.inferred.value
        lines.append(
            ",".join(
                [
                    str(f.tick),
                    f"{f.t_ms:g}",
                    f"{f.user_x:.1f}",
                    _fmt_distance(r[SensorName.CHEST]),
                    _fmt_distance(r[SensorName.KNEE]),
                    _fmt_distance(r[SensorName.TOE]),
                    _fmt_distance(r[SensorName.ARCH]),
                    str(f.frame.brzC),
                    str(f.frame.brzK),
                    str(f.frame.brzT),
                    str(f.frame.brzP),
                    str(int(f.flags.upstairs)),
                    str(int(f.flags.downstep)),
                    inferred,
                    f.advisory.value,
                ]
            )
        )
    return "\n".join(lines) + "\n"


# Expected band maps, written out literally so the sweep checks the
# classifier implementations against an independent statement of the
# tables rather than against themselves.
CHEST_BANDS = ((0.0, 40.0, 4), (40.0, 60.0, 3), (60.0, 87.0, 2), (87.0, 150.0, 1), (150.0, math.inf, 0))
KNEE_BANDS = ((0.0, 10.0, 3), (10.0, 30.0, 2), (30.0, 60.0, 1), (60.0, math.inf, 0))
TOE_BANDS = ((0.0, 10.0, 3), (10.0, 20.0, 2), (20.0, 40.0, 1), (40.0, math.inf, 0))
DEPTH_BANDS = ((-math.inf, 10.0, 0), (10.0, 20.0, 1), (20.0, 40.0, 2), (40.0, math.inf, 3))

# (knee reading, toe reading) -> (upstairs, knee bit, toe bit)
STAIR_TRUTH_TABLE = (
    ((40.0, 15.0), (True, 1, 1)),   # diff 25, inside the (24, 26) window
    ((39.0, 15.0), (False, 1, 1)),  # diff 24, window is strict
    ((35.0, 15.0), (False, 1, 1)),  # two independent obstacles
    ((35.0, None), (False, 1, 0)),
    ((None, 15.0), (False, 0, 1)),
    ((None, None), (False, 0, 0)),
    ((45.0, 15.0), (False, 0, 1)),  # knee echo beyond its 40 cm gate
    ((35.0, 22.0), (False, 1, 0)),  # toe echo beyond its 20 cm gate
)


def _band_level(bands, d: float) -> int:
    for lo, hi, level in bands:
        if lo < d <= hi:
            return level
    raise AssertionError(f"no band covers {d}")


def _sweep(name, bands, classifier, out, lo=0.5, hi=300.0, step=0.5, no_echo=True) -> bool:
    ok = True
    prev = None
    d = lo
    while d <= hi + 1e-9:
        expected = _band_level(bands, d)
        got = classifier(d)
        if got != expected:
            out.write(f"{name}: MISMATCH at {d:.1f} cm: got {got}, want {expected}\n")
            ok = False
        if prev is not None and got != prev[1]:
            out.write(
                f"{name}: {prev[0]:.1f} -> level {prev[1]}, {d:.1f} -> level {got}\n"
            )
        prev = (d, got)
        d += step
    if no_echo and classifier(None) != 0:
        out.write(f"{name}: MISMATCH: no echo must be level 0\n")
        ok = False
    out.write(f"{name}: {'OK' if ok else 'FAILED'}\n")
    return ok


def verify_tables(out=None) -> bool:
    """Exhaustively sweep every channel's bands; True when all conform."""
    out = out if out is not None else sys.stdout
    ok = True
    ok &= _sweep("chest", CHEST_BANDS, classify_chest, out)
    ok &= _sweep("knee", KNEE_BANDS, classify_knee, out)
    ok &= _sweep("toe", TOE_BANDS, classify_toe, out)
    ok &= _sweep(
        "depth",
        DEPTH_BANDS,
        lambda d: classify_depth(d)[0],
        out,
        lo=0.0,
        hi=60.0,
        no_echo=False,
    )
    stairs_ok = True
    for (knee, toe), (upstairs, kbit, tbit) in STAIR_TRUTH_TABLE:
        got = detect_upstairs(knee, toe)
        if (got.upstairs, got.knee_bit, got.toe_bit) != (upstairs, kbit, tbit):
            out.write(
                f"stairs: MISMATCH for knee={knee} toe={toe}: "
                f"got {(got.upstairs, got.knee_bit, got.toe_bit)}\n"
            )
            stairs_ok = False
    out.write(f"stairs: {'OK' if stairs_ok else 'FAILED'}\n")
    ok &= stairs_ok
    out.write(f"verify-tables: {'PASS' if ok else 'FAIL'}\n")
    return bool(ok)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultranav",
        description="Deterministic simulator for a four-sensor ultrasonic navigation aid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario file and emit a trace")
    run_p.add_argument("scenario", help="path to a scenario file")
    run_p.add_argument("--tick-ms", type=float, default=None, help="tick period in ms")
    run_p.add_argument("--temp", type=float, default=None, help="ambient temperature, C")
    run_p.add_argument("--temp-cal", type=float, default=None, help="device calibration temperature, C")
    run_p.add_argument("--calib", default=None, help="calibration file (actual measured per line)")
    run_p.add_argument("--rays", type=int, default=None, help="rays per cone (odd)")
    run_p.add_argument("--out", default=None, help="trace output file (default stdout)")
    run_p.add_argument("--seed", type=int, default=None, help="seed for optional reading jitter")

    sub.add_parser("verify-tables", help="sweep all decision bands and report")
    return parser


def cmd_run(args) -> int:
    try:
        with open(args.scenario, "r", encoding="utf-8") as fh:
            scenario = parse_scenario(fh.read())
        scene, config, trajectory, start_x = build_simulation(scenario, args)
        frames = run_scenario(scene, trajectory, config, start_x=start_x)
    except (OSError, ValueError) as exc:
        print(f"ultranav: error: {exc}", file=sys.stderr)
        return 2
    trace = format_trace(frames)
    if args.out is None:
        sys.stdout.write(trace)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(trace)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "verify-tables":
        return 0 if verify_tables(sys.stdout) else 1
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
