"""Arithmetic in the commutative biharmonic algebra B.

Elements are stored by their complex coordinates with respect to the
biharmonic basis ``{e1, e2}``, with multiplication table

    e1 = 1,    e2 * e2 = e1 + 2i e2.

The radical ``rho = 2 e1 + 2i e2`` squares to zero, and ``{1, rho}`` is the
canonical basis used for inversion: ``(alpha + beta rho)^-1 = 1/alpha -
beta/alpha**2 rho``.

Coordinates may be complex scalars or numpy arrays of matching shape, in
which case every operation acts elementwise.  This is how the solvers
evaluate fields on whole grids at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ZeroDivisor

#: Relative threshold below which ``|alpha|`` marks a zero divisor.
EPS_DIV = 1e-12

Scalar = Union[complex, float, int, np.ndarray]


def _coerce(value):
    arr = np.asarray(value, dtype=complex)
    if arr.ndim == 0:
        return complex(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BNumber:
    """Element ``z1 e1 + z2 e2`` of B (possibly array-valued)."""

    z1: Scalar = 0j
    z2: Scalar = 0j

    # ndarray * BNumber must dispatch to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        z1, z2 = _coerce(self.z1), _coerce(self.z2)
        if np.shape(z1) != np.shape(z2):
            z1, z2 = (_coerce(v) for v in np.broadcast_arrays(z1, z2))
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_bnumber(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return BNumber(-self.z1, -self.z2)

    def __sub__(self, other):
        other = _as_bnumber(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = _as_bnumber(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, BNumber):
            return mul(self, other)
        if np.isscalar(other) or isinstance(other, np.ndarray):
            return BNumber(self.z1 * other, self.z2 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BNumber):
            return mul(self, inv(other))
        if np.isscalar(other) or isinstance(other, np.ndarray):
            return BNumber(self.z1 / other, self.z2 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = _as_bnumber(other)
        if other is NotImplemented:
            return other
        return mul(other, inv(self))

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = BNumber(np.ones_like(self.z1), np.zeros_like(self.z2))
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    # -- views ------------------------------------------------------------
    @property
    def shape(self):
        return np.shape(self.z1)

    @property
    def alpha(self):
        """Coefficient of 1 in the canonical basis ``{1, rho}``."""
        return self.z1 + 1j * self.z2

    @property
    def beta(self):
        """Coefficient of rho in the canonical basis ``{1, rho}``."""
        return -0.5j * self.z2

    def components(self):
        return components(self)

    def norm(self):
        return norm(self)

    def __getitem__(self, index):
        return BNumber(np.asarray(self.z1)[index], np.asarray(self.z2)[index])

    def isclose(self, other, atol=1e-12):
        """Elementwise ``||self - other|| <= atol``."""
        return norm(self - _as_bnumber(other)) <= atol

    def __repr__(self):
        if self.shape == ():
            return f"BNumber({self.z1!r}, {self.z2!r})"
        return f"BNumber(shape={self.shape})"


def _as_bnumber(value):
    if isinstance(value, BNumber):
        return value
    if np.isscalar(value) or isinstance(value, np.ndarray):
        return BNumber(value, np.zeros_like(value, dtype=complex))
    return NotImplemented


@dataclass(frozen=True)
class BPoint:
    """Point ``x e1 + y e2`` of the biharmonic plane (x, y real)."""

    x: float | np.ndarray
    y: float | np.ndarray

    def embed(self) -> BNumber:
        return BNumber(self.x, self.y)

    @property
    def z(self):
        """The associated complex number ``x + iy``."""
        return np.asarray(self.x) + 1j * np.asarray(self.y)

    def norm(self):
        return np.hypot(self.x, self.y)


E1 = BNumber(1, 0)
E2 = BNumber(0, 1)
ZERO = BNumber(0, 0)
RHO = BNumber(2, 2j)
I = 1j  # complex unit, for readability of formulas such as I * E1


def embed(point: BPoint) -> BNumber:
    return point.embed()


def add(a: BNumber, b: BNumber) -> BNumber:
    return BNumber(a.z1 + b.z1, a.z2 + b.z2)


def mul(a: BNumber, b: BNumber) -> BNumber:
    """Product from the table ``e1 e1 = e1, e1 e2 = e2, e2 e2 = e1 + 2i e2``."""
    return BNumber(
        a.z1 * b.z1 + a.z2 * b.z2,
        a.z1 * b.z2 + a.z2 * b.z1 + 2j * a.z2 * b.z2,
    )


def to_canonical(a: BNumber):
    """Return ``(alpha, beta)`` with ``a = alpha + beta rho``."""
    return a.alpha, a.beta


def from_canonical(alpha, beta) -> BNumber:
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    return BNumber(alpha + 2 * beta, 2j * beta)


def norm(a: BNumber):
    """Euclidean norm ``sqrt(|z1|^2 + |z2|^2)``."""
    return np.sqrt(np.abs(a.z1) ** 2 + np.abs(a.z2) ** 2)


def is_zero_divisor(a: BNumber):
    """True where ``a`` is a nonzero multiple of rho (zero itself is excluded)."""
    n = norm(a)
    return (np.abs(a.alpha) <= EPS_DIV * n) & (n > 0)


def inv(a: BNumber) -> BNumber:
    alpha, beta = to_canonical(a)
    bad = np.abs(alpha) <= EPS_DIV * norm(a)
    if np.any(bad):
        raise ZeroDivisor("element is zero or a zero divisor and has no inverse")
    ainv = 1.0 / alpha
    return from_canonical(ainv, -beta * ainv * ainv)


def components(a: BNumber):
    """Real components ``(U1, U2, U3, U4)`` of ``U1 e1 + U2 ie1 + U3 e2 + U4 ie2``."""
    z1 = np.asarray(a.z1)
    z2 = np.asarray(a.z2)
    return z1.real, z1.imag, z2.real, z2.imag


def from_components(u1, u2, u3, u4) -> BNumber:
    return BNumber(np.asarray(u1) + 1j * np.asarray(u2), np.asarray(u3) + 1j * np.asarray(u4))
