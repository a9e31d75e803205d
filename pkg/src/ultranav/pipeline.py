"""The 30 ms tick loop: fire sensors, classify, debounce, fuse advisories."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Optional

from .classify import (
    Advisory,
    BuzzerFrame,
    UPPER_OBSTACLE_ADVISORY,
    UpperLevel,
    classify_chest,
    classify_depth,
    classify_knee,
    classify_toe,
    detect_upstairs,
    infer_upper_level,
    is_downstep,
)
from .geometry import SagittalScene
from .sensing import (
    Calibration,
    IDENTITY_CALIBRATION,
    SensorName,
    SensorSpec,
    default_sensors,
    measure,
)

MAX_USER_SPEED_CM_S = 500.0


class PipelineError(ValueError):
    """Invalid simulation configuration or trajectory."""


@dataclass(frozen=True)
class UserState:
    """Walker position and motion along the forward axis."""

    x: float = 0.0
    speed: float = 0.0  # cm/s, negative = stepping back
    height: float = 175.0

    def __post_init__(self):
        if abs(self.speed) > MAX_USER_SPEED_CM_S:
            raise PipelineError(f"|speed| must be <= {MAX_USER_SPEED_CM_S} cm/s")


@dataclass(frozen=True)
class TrajectorySegment:
    """Constant-speed stretch of the walk."""

    speed: float  # cm/s
    duration_s: float

    def __post_init__(self):
        if self.duration_s <= 0.0:
            raise PipelineError("trajectory segment duration must be > 0")
        if abs(self.speed) > MAX_USER_SPEED_CM_S:
            raise PipelineError(f"|speed| must be <= {MAX_USER_SPEED_CM_S} cm/s")


@dataclass(frozen=True)
class SimConfig:
    """Everything the tick loop needs besides the scene and trajectory."""

    tick_ms: float = 30.0
    sensors: tuple = field(default_factory=default_sensors)
    temp_actual: float = 20.0
    temp_cal: float = 20.0
    calibration: Calibration = IDENTITY_CALIBRATION
    debounce_ticks: int = 2
    n_rays: int = 31
    jitter_cm: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.tick_ms <= 0.0:
            raise PipelineError("tick_ms must be > 0")
        if self.debounce_ticks < 1:
            raise PipelineError("debounce_ticks must be >= 1")
        names = [s.name for s in self.sensors]
        if sorted(n.value for n in names) != sorted(n.value for n in SensorName):
            raise PipelineError("config needs exactly one sensor per name")

    def sensor(self, name: SensorName) -> SensorSpec:
        for s in self.sensors:
            if s.name is name:
                return s
        raise PipelineError(f"no sensor named {name}")


@dataclass(frozen=True)
class TickFlags:
    """Per-tick findings feeding advisory fusion."""

    upstairs: bool = False
    knee_bit: int = 0
    toe_bit: int = 0
    downstep: bool = False
    inferred: Optional[UpperLevel] = None


@dataclass(frozen=True)
class FrameOutput:
    """One tick's full record: readings, levels, flags, advisory."""

    tick: int
    t_ms: float
    user_x: float
    readings: dict
    frame: BuzzerFrame
    advisory: Advisory
    flags: TickFlags


@dataclass
class TickState:
    """Mutable loop state: chest disambiguation tracking and debounce."""

    prev_chest_active: bool = False
    last_active_distance: Optional[float] = None
    armed_distance: Optional[float] = None
    inferred: Optional[UpperLevel] = None
    advisory: Advisory = Advisory.MOVE_FORWARD
    pending: Optional[Advisory] = None
    pending_count: int = 0


def disambiguate(
    state: TickState,
    brzC_level: int,
    chest_reading: Optional[float],
    advancing: bool,
    moving_back: bool,
) -> None:
    """Advance the upper-obstacle disambiguation state machine in place.

    A chest-channel dropout while advancing arms the last active distance;
    reactivation while stepping back infers the obstacle's height band.
    Reactivation while advancing resets the whole check.
    """
    active = brzC_level > 0
    if active:
        if moving_back and state.armed_distance is not None:
            state.inferred = infer_upper_level(state.armed_distance)
        if advancing:
            state.armed_distance = None
            state.inferred = None
        state.last_active_distance = chest_reading
    elif state.prev_chest_active and advancing:
        state.armed_distance = state.last_active_distance
    state.prev_chest_active = active


def fuse(frame: BuzzerFrame, flags: TickFlags) -> Advisory:
    """Single verdict for the tick, most urgent finding first."""
    if frame.brzP == 3:
        return Advisory.STOP_IMMEDIATELY
    if frame.brzP == 2:
        return Advisory.ALTERNATE_PATH
    if flags.upstairs:
        return Advisory.UP_STAIRS_AHEAD
    if flags.inferred is not None:
        return UPPER_OBSTACLE_ADVISORY[flags.inferred]
    if flags.knee_bit:
        return Advisory.KNEE_OBSTACLE_AHEAD
    if flags.toe_bit:
        return Advisory.TOE_OBSTACLE_AHEAD
    if frame.any_active() or flags.downstep:
        return Advisory.MOVE_FORWARD_CAUTION
    return Advisory.MOVE_FORWARD


def _debounced_advisory(state: TickState, candidate: Advisory, debounce_ticks: int) -> Advisory:
    if candidate == state.advisory:
        state.pending = None
        state.pending_count = 0
    elif candidate == state.pending:
        state.pending_count += 1
        if state.pending_count >= debounce_ticks:
            state.advisory = candidate
            state.pending = None
            state.pending_count = 0
    else:
        state.pending = candidate
        state.pending_count = 1
        if debounce_ticks <= 1:
            state.advisory = candidate
            state.pending = None
            state.pending_count = 0
    return state.advisory


def tick(
    scene: SagittalScene,
    user: UserState,
    config: SimConfig,
    state: TickState,
    tick_index: int = 0,
    rng: Optional[random.Random] = None,
):
    """Run one sense-classify-fuse cycle.

    Sensors fire sequentially (chest, knee, toe, arch) against the same
    user position; the user then advances by speed * tick period.  Returns
    (FrameOutput, advanced UserState); `state` is updated in place.
    """
    readings = {}
    for name in (SensorName.CHEST, SensorName.KNEE, SensorName.TOE, SensorName.ARCH):
        spec = config.sensor(name)
        r = measure(
            scene,
            spec,
            user.x,
            temp_actual=config.temp_actual,
            temp_cal=config.temp_cal,
            calib=config.calibration,
            n_rays=config.n_rays,
        )
        if r is not None and rng is not None and config.jitter_cm > 0.0:
            r = r + rng.uniform(-config.jitter_cm, config.jitter_cm)
            r = min(max(r, spec.min_range), spec.max_range)
        readings[name] = r

    brzC = classify_chest(readings[SensorName.CHEST])
    brzK = classify_knee(readings[SensorName.KNEE])
    brzT = classify_toe(readings[SensorName.TOE])
    stair = detect_upstairs(readings[SensorName.KNEE], readings[SensorName.TOE])

    arch = config.sensor(SensorName.ARCH)
    down = readings[SensorName.ARCH]
    # No downward echo means the drop exceeds the sensor's reach: treat as
    # an unbounded hazard depth.
    depth = math.inf if down is None else max(down - arch.mount_height, 0.0)
    brzP, _ = classify_depth(depth)
    downstep = is_downstep(depth)

    frame = BuzzerFrame(brzC=brzC, brzK=brzK, brzT=brzT, brzP=brzP)

    disambiguate(
        state,
        brzC,
        readings[SensorName.CHEST],
        advancing=user.speed > 0,
        moving_back=user.speed < 0,
    )

    flags = TickFlags(
        upstairs=stair.upstairs,
        knee_bit=stair.knee_bit,
        toe_bit=stair.toe_bit,
        downstep=downstep,
        inferred=state.inferred,
    )
    advisory = _debounced_advisory(state, fuse(frame, flags), config.debounce_ticks)

    output = FrameOutput(
        tick=tick_index,
        t_ms=tick_index * config.tick_ms,
        user_x=user.x,
        readings=readings,
        frame=frame,
        advisory=advisory,
        flags=flags,
    )
    advanced = replace(user, x=user.x + user.speed * config.tick_ms / 1000.0)
    return output, advanced


def segment_ticks(segment: TrajectorySegment, tick_ms: float) -> int:
    """Number of whole ticks a trajectory segment occupies."""
    return int(round(segment.duration_s * 1000.0 / tick_ms))


def run_scenario(
    scene: SagittalScene,
    trajectory,
    config: SimConfig = None,
    start_x: float = 0.0,
):
    """Run the tick loop over a piecewise-constant speed schedule.

    Deterministic: identical inputs produce identical traces.  Returns the
    list of FrameOutput, one per tick.
    """
    config = config if config is not None else SimConfig()
    trajectory = list(trajectory)
    if not trajectory:
        raise PipelineError("trajectory must contain at least one segment")
    rng = random.Random(config.seed) if config.jitter_cm > 0.0 else None

    frames = []
    state = TickState()
    user = UserState(x=start_x, speed=trajectory[0].speed)
    index = 0
    for segment in trajectory:
        user = replace(user, speed=segment.speed)
        for _ in range(segment_ticks(segment, config.tick_ms)):
            frame, user = tick(scene, user, config, state, tick_index=index, rng=rng)
            frames.append(frame)
            index += 1
    if not frames:
        raise PipelineError("trajectory is shorter than one tick")
    return frames
