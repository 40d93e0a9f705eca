"""
The upper half-plane
====================

Line data are given through their pullback to the circle, t = tan(theta / 2).
"""

import numpy as np

from biharm import (
    BPoint,
    CircleData,
    LineData,
    biharmonic_schwartz_halfplane,
    boundary_value_halfplane,
    components,
    limit_at_infinity,
    norm,
    solve_13_halfplane,
)

# u(t) = 1 / (1 + t^2) pulls back to (1 + cos theta) / 2
u = LineData(CircleData(0.5, [0.5]))
print("S[u](e2)       =", biharmonic_schwartz_halfplane(u, BPoint(0.0, 1.0)))
print("boundary at 1  =", boundary_value_halfplane(u, 1.0))
print("at infinity    =", limit_at_infinity(u))

# approaching the real axis the field tends to its boundary value
xi = np.array([-2.0, 0.0, 1.5])
for y in (1e-2, 1e-3, 1e-4):
    gap = norm(biharmonic_schwartz_halfplane(u, BPoint(xi, np.full(3, y))) - boundary_value_halfplane(u, xi))
    print(f"y = {y:.0e}: max gap {np.max(gap):.2e}")

# the (1-3)-problem is always solvable here; a1, a2 pick a member of the family
u3 = LineData(CircleData(0.0, [0.0, 0.3], [0.2]))
sol = solve_13_halfplane(u, u3, a1=1.0)
U1, U2, U3, U4 = components(sol(BPoint(xi, np.zeros(3))))
print("U1 on the axis:", U1, " data:", u(xi))
print("U3 on the axis:", U3, " data:", u3(xi))
