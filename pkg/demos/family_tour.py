"""Cut-off times and certified bounds across all ten families.

First table: the cut-off time t0 = alpha * log(param) and the certified
series upper bound shortly after it, for every family at desk-scale rank.
Second table: at larger rank the second-moment lower bound is informative
too, and the two bounds bracket the transition from both sides.
"""

from __future__ import annotations

from cutofflab import describe, lower_bound, t_zero, tv_upper_bound

CASES = [("SO", 16, None), ("SU", 8, None), ("USp", 6, None),
         ("GrR", 16, 5), ("GrC", 8, 3), ("GrH", 6, 2),
         ("SO2n_Un", 12, None), ("SUn_SOn", 8, None),
         ("SU2n_USpn", 6, None), ("USpn_Un", 6, None)]

print(f"{'space':>14} {'t0':>7} {'upper(1.2 t0)':>14} {'upper(1.8 t0)':>14}")
for family, n, q in CASES:
    desc = describe(family, n, q)
    t0 = t_zero(desc)
    print(f"{str(desc):>14} {t0:>7.3f} "
          f"{tv_upper_bound(desc, 1.2 * t0):>14.4f} "
          f"{tv_upper_bound(desc, 1.8 * t0):>14.4f}")

print("\nAt larger rank both bounds bite (the lower-bound constants are")
print("asymptotic, so small ranks above report a vacuous zero):")
print(f"{'space':>14} {'lower(0.5 t0)':>14} {'upper(1.5 t0)':>14}")
for family, n in (("SO", 80), ("SU", 60), ("USp", 40)):
    desc = describe(family, n)
    t0 = t_zero(desc)
    print(f"{str(desc):>14} {lower_bound(desc, 0.5 * t0):>14.4f} "
          f"{tv_upper_bound(desc, 1.5 * t0):>14.4f}")
