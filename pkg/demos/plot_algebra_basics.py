"""
Arithmetic in the biharmonic algebra
====================================

Products, inverses and the nilpotent radical.
"""

import numpy as np

from biharm import E1, E2, RHO, BNumber, BPoint, embed, inv, is_zero_divisor, mul, norm, to_canonical

# e2 squared is e1 + 2i e2, and (e1^2 + e2^2)^2 vanishes
print("e2^2           =", mul(E2, E2))
s = mul(E1, E1) + mul(E2, E2)
print("(e1^2+e2^2)^2  =", mul(s, s))

# rho = 2 e1 + 2i e2 squares to zero and has no inverse
print("rho^2          =", mul(RHO, RHO), " zero divisor:", is_zero_divisor(RHO))

# points of the plane x e1 + y e2 are invertible away from the origin
z = embed(BPoint(0.3, -1.2))
print("zeta * zeta^-1 =", mul(z, inv(z)))

# canonical coordinates (alpha, beta) with a = alpha + beta rho
print("canonical(e2)  =", to_canonical(E2))

# everything vectorises over numpy arrays
x = np.linspace(0.1, 1.0, 5)
w = BNumber(x, 0.5j * x)
print("max |w w^-1 - e1| over a batch:", np.max(norm(mul(w, inv(w)) - E1)))

# x e1 + i x e2 is a multiple of rho, so the whole batch is singular
print("zero divisors:", is_zero_divisor(BNumber(x, 1j * x)))
