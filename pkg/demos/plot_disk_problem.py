"""
Boundary value problems on the unit disk
========================================

Solve for a monogenic field from two boundary components, then recover a
biharmonic function from its boundary gradient.
"""

import numpy as np

from biharm import BNumber, BPoint, CircleData, Unsolvable, components, norm, solve_13_disk, solve_main_biharmonic

# boundary data are trigonometric polynomials: a0 + sum a_n cos n + b_n sin n
u1 = CircleData(0.0, [1.0])          # cos(theta)
u3 = CircleData(0.0, [0.0], [1.0])   # sin(theta)

# the data are compatible, and the field is zeta itself
sol = solve_13_disk(u1, u3)
g = np.linspace(-0.6, 0.6, 5)
X, Y = np.meshgrid(g, g)
print("max |Phi - zeta| on a grid:", np.max(norm(sol(BPoint(X, Y)) - BNumber(X, Y))))
print("moments:", sol.moments)

# random compatible data of degree 3
rng = np.random.default_rng(0)
a1, b1 = rng.normal(size=3), rng.normal(size=3)
a3, b3 = rng.normal(size=3), rng.normal(size=3)
a3[0] = b1[0]   # this coupling makes the contour integral vanish
u1, u3 = CircleData(0.2, a1, b1), CircleData(-0.4, a3, b3)
sol = solve_13_disk(u1, u3, a=0.5)

# U1 and U3 reproduce the data on the circle
theta = np.linspace(0, 2 * np.pi, 9)
U1, U2, U3, U4 = components(sol.boundary(theta))
print("boundary error U1:", np.max(np.abs(U1 - u1(theta))), " U3:", np.max(np.abs(U3 - u3(theta))))

# incompatible data are rejected with the offending integral
try:
    solve_13_disk(CircleData(), CircleData(0.0, [1.0]))
except Unsolvable as exc:
    print(exc)

# a biharmonic V with grad V = (cos, sin) on the circle: V = (x^2 + y^2) / 2
V = solve_main_biharmonic(CircleData(0.0, [1.0]), CircleData(0.0, [0.0], [1.0]))
print("V(0.3, 0.4) =", V.V(0.3, 0.4))
