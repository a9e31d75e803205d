"""Up-stair recognition and pothole grading, end to end.

An up-staircase announces itself as a toe-level echo and a knee-level
echo roughly one tread apart (the 24-26 cm window).  Potholes are graded
by how far the ground falls away under the front foot arch.
"""

from ultranav import (
    GroundSegment,
    Rect,
    SagittalScene,
    SensorName,
    SimConfig,
    TrajectorySegment,
    run_scenario,
)

print("-- Up-stair signature --")
stairs = SagittalScene((Rect(15, 17, 0, 10), Rect(40, 42, 40, 120)), ())
frames = run_scenario(stairs, [TrajectorySegment(0.0, 0.15)], SimConfig())
f = frames[-1]
knee, toe = f.readings[SensorName.KNEE], f.readings[SensorName.TOE]
print(f"knee echo {knee:.1f} cm, toe echo {toe:.1f} cm, difference {knee - toe:.1f} cm")
print(f"upstairs flag: {f.flags.upstairs}, advisory: {f.advisory.value}")

print()
print("-- Pothole grading --")
terrain = SagittalScene(
    (),
    (
        GroundSegment(100, 200, -5),
        GroundSegment(200, 300, -15),
        GroundSegment(300, 400, -30),
        GroundSegment(400, 500, -50),
    ),
)
frames = run_scenario(terrain, [TrajectorySegment(140.0, 3.6)], SimConfig())
print("x(cm)   depth-under-arch  brzP  downstep  advisory")
previous = None
for f in frames:
    key = (f.frame.brzP, f.advisory)
    if key != previous:
        down = f.readings[SensorName.ARCH]
        depth = max(down - 10.0, 0.0) if down is not None else float("inf")
        print(
            f"{f.user_x:6.1f}  {depth:15.1f}  {f.frame.brzP:4d}  "
            f"{str(f.flags.downstep):>8}  {f.advisory.value}"
        )
        previous = key
