"""Approach a wall at walking pace and watch the chest channel escalate.

The walker covers 4.2 cm per 30 ms tick at 140 cm/s, so the outer band
(150 cm) buys roughly 26 ticks of warning before the wall reaches the
innermost band (40 cm).
"""

from ultranav import (
    Rect,
    SagittalScene,
    SensorName,
    SimConfig,
    TrajectorySegment,
    run_scenario,
)

scene = SagittalScene((Rect(300, 302, 0, 200),), ())
frames = run_scenario(scene, [TrajectorySegment(140.0, 2.1)], SimConfig())

print("tick   t(ms)  distance(cm)  brzC  advisory")
previous_level = None
for f in frames:
    if f.frame.brzC != previous_level:
        d = f.readings[SensorName.CHEST]
        print(
            f"{f.tick:4d}  {f.t_ms:6.0f}  {d:11.1f}  {f.frame.brzC:4d}  {f.advisory.value}"
        )
        previous_level = f.frame.brzC

first = next(f for f in frames if f.frame.brzC == 1)
last = next(f for f in frames if f.frame.brzC == 4)
print()
print(
    f"Warning time: {last.tick - first.tick} ticks "
    f"({(last.t_ms - first.t_ms) / 1000:.2f} s) between first alarm and closest band."
)
