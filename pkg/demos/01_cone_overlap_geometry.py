"""Where adjacent sensor cones first overlap, and why it doesn't matter.

Each of the three forward sensors carries a 30 degree divergence cone.
Stacked cones eventually intersect, which could make one sensor answer
for another's zone -- but every sensor ignores echoes beyond its gate
distance, and the gates all sit closer than the first overlap point.
"""

from ultranav import SensorName, default_sensors, overlap_distance

sensors = {s.name: s for s in default_sensors()}

print("Sensor rig (heights and gate distances, cm):")
for spec in default_sensors():
    print(f"  {spec.name.value:<6} height={spec.mount_height:>6.1f}  aim={spec.aim.value:<8} gate={spec.sarl:.0f}")

print()
print("First cone-overlap distance between adjacent forward sensors:")
pairs = [
    ("chest-knee", sensors[SensorName.CHEST], sensors[SensorName.KNEE]),
    ("knee-toe", sensors[SensorName.KNEE], sensors[SensorName.TOE]),
]
for label, upper, lower in pairs:
    d = overlap_distance(upper.mount_height, lower.mount_height, 30.0)
    print(
        f"  {label:<11} overlap at {d:6.1f} cm  vs  {upper.name.value} gate "
        f"{upper.sarl:.0f} cm  -> {'safe' if d > upper.sarl else 'CONFLICT'}"
    )

print()
print("Overlap distance shrinks as the cones widen:")
for divergence in (15.0, 30.0, 45.0, 60.0):
    d = overlap_distance(150.0, 50.0, divergence)
    print(f"  divergence {divergence:4.0f} deg -> chest-knee overlap {d:6.1f} cm")
