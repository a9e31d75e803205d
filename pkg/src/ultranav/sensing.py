"""Sensor models: range gating, temperature bias, and linear calibration."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .geometry import Aim, SagittalScene, cone_min_distance


class SensingError(ValueError):
    """Invalid sensor configuration or calibration data."""


class SensorName(Enum):
    CHEST = "chest"
    KNEE = "knee"
    TOE = "toe"
    ARCH = "arch"


def sound_speed(temp_c: float) -> float:
    """Speed of sound in air, cm/s, linear in temperature."""
    return 33130.0 + 60.6 * temp_c


@dataclass(frozen=True)
class Calibration:
    """Linear device response: measured = gain * actual + offset (cm)."""

    gain: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.gain <= 0.0:
            raise SensingError(f"calibration gain must be > 0, got {self.gain}")


IDENTITY_CALIBRATION = Calibration()


@dataclass(frozen=True)
class SensorSpec:
    """One ultrasonic module: where it sits, where it points, what it gates."""

    name: SensorName
    mount_height: float
    aim: Aim
    sarl: float
    half_angle: float = 15.0
    min_range: float = 3.0
    max_range: float = 300.0

    def __post_init__(self):
        if self.aim is Aim.FORWARD:
            if not 0.0 < self.min_range < self.sarl <= self.max_range:
                raise SensingError(
                    f"{self.name.value}: need 0 < min_range < sarl <= max_range"
                )
        else:
            if self.sarl <= 0.0:
                raise SensingError(f"{self.name.value}: sarl must be > 0")
        if not 0.0 < self.half_angle < 90.0:
            raise SensingError("half_angle must be in (0, 90) degrees")


def default_sensors() -> tuple:
    """Default four-sensor rig for a 175 cm user.

    Mount heights chest=150, knee=50, toe=5, arch=10 cm reproduce the
    187 cm chest-knee and 84 cm knee-toe cone overlap distances under a
    30 degree divergence.
    """
    return (
        SensorSpec(SensorName.CHEST, 150.0, Aim.FORWARD, sarl=150.0),
        SensorSpec(SensorName.KNEE, 50.0, Aim.FORWARD, sarl=60.0),
        SensorSpec(SensorName.TOE, 5.0, Aim.FORWARD, sarl=40.0),
        SensorSpec(SensorName.ARCH, 10.0, Aim.DOWN, sarl=10.0),
    )


def measure(
    scene: SagittalScene,
    spec: SensorSpec,
    user_x: float,
    temp_actual: float = 20.0,
    temp_cal: float = 20.0,
    calib: Calibration = IDENTITY_CALIBRATION,
    n_rays: int = 31,
) -> Optional[float]:
    """One echo reading in cm, or None when nothing echoes in range.

    The true geometric distance is scaled by the temperature bias factor
    c(temp_cal) / c(temp_actual) (the device converts time-of-flight with
    the sound speed it was calibrated at), then distorted by the device's
    linear calibration response.  True hits beyond max_range are lost;
    readings are clamped into [min_range, max_range].
    """
    true = cone_min_distance(
        scene,
        (user_x, spec.mount_height),
        spec.aim,
        half_angle=spec.half_angle,
        n_rays=n_rays,
    )
    if true is None or true > spec.max_range:
        return None
    biased = true * sound_speed(temp_cal) / sound_speed(temp_actual)
    raw = calib.gain * biased + calib.offset
    return min(max(raw, spec.min_range), spec.max_range)


def fit_calibration(pairs) -> Calibration:
    """Least-squares line measured = gain * actual + offset.

    Needs at least two pairs with distinct actual distances.
    """
    pairs = list(pairs)
    actual = np.asarray([p[0] for p in pairs], dtype=float)
    measured = np.asarray([p[1] for p in pairs], dtype=float)
    if len(pairs) < 2 or np.ptp(actual) == 0.0:
        raise SensingError(
            "calibration fit needs >= 2 pairs with distinct actual distances"
        )
    gain, offset = np.polyfit(actual, measured, 1)
    return Calibration(gain=float(gain), offset=float(offset))


def correct(calib: Calibration, measured: float) -> float:
    """Invert the calibration line: recover actual from measured."""
    return (measured - calib.offset) / calib.gain


def parse_calibration_text(text: str) -> Calibration:
    """Fit a calibration from `actual_cm measured_cm` lines; '#' comments."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        if len(fields) != 2:
            raise SensingError(
                f"calibration line {lineno}: expected 'actual measured', got {body!r}"
            )
        try:
            pairs.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise SensingError(
                f"calibration line {lineno}: non-numeric value in {body!r}"
            ) from None
    return fit_calibration(pairs)


def load_calibration(path) -> Calibration:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_calibration_text(fh.read())
