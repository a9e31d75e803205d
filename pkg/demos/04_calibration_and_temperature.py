"""Bench calibration and the effect of air temperature on readings.

The device converts time-of-flight with the sound speed at its
calibration temperature; warmer air carries sound faster, so readings
come up short by about 1.8% per 10 degrees of warming.
"""

from ultranav import (
    Rect,
    SagittalScene,
    SensorName,
    correct,
    default_sensors,
    fit_calibration,
    measure,
    sound_speed,
)

print("-- Least-squares calibration from bench pairs --")
bench = [(10, 11.8), (50, 52.1), (100, 102.3), (200, 202.0), (300, 302.4)]
calib = fit_calibration(bench)
print(f"fit: measured = {calib.gain:.4f} * actual + {calib.offset:.2f} cm")
for actual, measured in bench:
    print(f"  actual {actual:5.1f}  measured {measured:6.1f}  corrected {correct(calib, measured):6.1f}")

print()
print("-- Temperature bias on a wall 150 cm away (calibrated at 10 C) --")
scene = SagittalScene((Rect(150, 152, 0, 300),), ())
chest = next(s for s in default_sensors() if s.name is SensorName.CHEST)
for temp in (0, 10, 20, 30, 40):
    reading = measure(scene, chest, 0.0, temp_actual=temp, temp_cal=10.0)
    bias = (reading / 150.0 - 1.0) * 100.0
    print(
        f"  {temp:3d} C  sound speed {sound_speed(temp):8.0f} cm/s  "
        f"reading {reading:7.2f} cm  ({bias:+.2f}%)"
    )
