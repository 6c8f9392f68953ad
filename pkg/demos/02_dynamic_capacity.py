"""Capacity schedules: warm-up, change frequency tau, magnitude r, clamping.

The capacity is a seeded random walk: constant through the warm-up, then a
uniform step in [-r, r] every tau iterations, clamped to stay positive and
below the total expected weight.
"""

from dcckp import build_schedule, generate_instance
from dcckp.dynamics import default_clamp_bounds, default_initial_capacity

inst = generate_instance("uncorrelated", 100, delta=25, seed=7)
c0 = default_initial_capacity(inst)          # half the total expected weight
c_min, c_max = default_clamp_bounds(inst)

sched = build_schedule(c0, tau=1000, r=500, warmup=10_000, total_iters=60_000,
                       c_min=c_min, c_max=c_max, seed=3)
print(f"c0={c0}, clamp=[{c_min}, {c_max}]")
print(f"changes: {sched.change_count}, first at iteration {sched.change_iters[0]}")
print(f"clamp events: {sched.clamp_count}")

print("\ncapacity trajectory (sampled):")
for i in range(0, 60_000, 5_000):
    print(f"  iteration {i:>6}: {sched.capacity_at(i)}")

# a fast/large-change schedule for comparison
wild = build_schedule(c0, tau=100, r=2000, warmup=10_000, total_iters=60_000,
                      c_min=c_min, c_max=c_max, seed=3)
caps = wild.capacities()
print(f"\ntau=100, r=2000: {wild.change_count} changes, capacity spans "
      f"[{caps.min()}, {caps.max()}], clamped {wild.clamp_count} times")
print("same seed, same schedule:",
      (build_schedule(c0, 100, 2000, 10_000, 60_000, c_min, c_max, 3)
       .capacities() == caps).all())
