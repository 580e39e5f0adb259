"""The abrupt mixing transition, seen through both bounds.

For SO(n) the heat flow stays far from uniform until t ~ 2 log n and is
essentially mixed right after: the certified lower bound stays near one
before the transition while the series upper bound collapses after it.
The lower bound's constants are asymptotic in n, so at rank 15 it is
still vacuous; by rank 40 it certifies the early regime.  Printed
columns are relative time t / (2 log n) and the two bounds.
"""

from __future__ import annotations

import math

import numpy as np

from cutofflab import describe, profile

for n in (15, 40):
    desc = describe("SO", n)
    t_ref = 2.0 * math.log(n)
    print(f"\n{desc}: cut-off expected near t = 2 log n = {t_ref:.3f}")
    print(f"{'t/2log(n)':>10} {'lower':>8} {'upper':>8}")
    grid = np.linspace(0.3 * t_ref, 1.6 * t_ref, 14)
    for point in profile(desc, grid):
        print(f"{point.t / t_ref:>10.3f} {point.lower:>8.4f} "
              f"{point.upper:>8.4f}")
