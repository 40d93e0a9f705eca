"""Schwartz-type integral for the unit disk and the disk (1-3)-problem.

Two routes evaluate the disk integral ``S_D[u](zeta)``:

``quadrature``
    the trapezoid rule applied to the B-valued kernel
    ``u(tau) (tau + zeta)(tau - zeta)^-1 tau^-1 dtau / (2 pi i)``;
``spectral``
    the closed form used by the solvers.  In the canonical basis the
    integral is ``F(z) + (-(i y / 2) F'(z) + F0(z)) rho``, where ``F`` is the
    complex Schwartz integral of ``u`` and ``F0`` is the polynomial with
    coefficients ``g_0 = -f_2/4``, ``g_n = (n f_n - (n+2) f_{n+2})/4``.

The spectral form is valid on the closed disk; on the circle it coincides with
``u e1`` plus the singular integral assembled in :func:`singular_boundary_disk`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .algebra import E1, E2, BNumber, BPoint, from_canonical, inv, mul
from .errors import DomainError, Unsolvable
from .kernels import (
    CircleData,
    circle_moment,
    circle_nodes,
    conjugate_boundary,
    eval_circle,
    gauss_legendre,
)

#: Relative tolerance of the solvability test.
EPS_SOLV = 1e-10
#: Points with ``| ||zeta|| - 1 | <= BOUNDARY_TOL`` count as boundary points.
BOUNDARY_TOL = 1e-12

_BLOCK = 256


def _coords(zeta: BPoint):
    x, y = np.broadcast_arrays(np.asarray(zeta.x, dtype=float), np.asarray(zeta.y, dtype=float))
    return x, y


def _f0_coefficients(f):
    """Coefficients of the holomorphic rho-part companion of ``F``."""
    n = len(f)
    fp = np.concatenate([f, np.zeros(2, dtype=complex)])
    k = np.arange(n)
    g = (k * fp[:n] - (k + 2) * fp[2 : n + 2]) / 4
    g[0] = -fp[2] / 4
    return g


def _spectral(u: CircleData, x, y) -> BNumber:
    f = u.coefficients()
    z = x + 1j * y
    F = P.polyval(z, f)
    dF = P.polyval(z, P.polyder(f))
    F0 = P.polyval(z, _f0_coefficients(f))
    return from_canonical(F, -0.5j * y * dF + F0)


def _trapezoid(u: CircleData, x, y, nodes) -> BNumber:
    m = circle_nodes(nodes)
    theta = 2 * np.pi * np.arange(m) / m
    c, s = np.cos(theta), np.sin(theta)
    tau = BNumber(c, s)
    factor = mul(inv(tau), BNumber(-s, c)) * (eval_circle(u, theta) / (2j * np.pi) * (2 * np.pi / m))
    xs, ys = x.ravel(), y.ravel()
    z1 = np.empty(xs.size, dtype=complex)
    z2 = np.empty(xs.size, dtype=complex)
    for start in range(0, xs.size, _BLOCK):
        sl = slice(start, start + _BLOCK)
        zeta = BNumber(xs[sl, None], ys[sl, None])
        k = mul(mul(tau + zeta, inv(tau - zeta)), factor)
        z1[sl] = k.z1.sum(axis=-1)
        z2[sl] = k.z2.sum(axis=-1)
    return BNumber(z1.reshape(x.shape), z2.reshape(x.shape))


def biharmonic_schwartz_disk(u: CircleData, zeta: BPoint, method="quadrature", nodes=None) -> BNumber:
    """Disk Schwartz-type integral at interior points ``||zeta|| < 1``.

    ``method="quadrature"`` (default) applies the trapezoid rule with
    ``nodes`` points (default 1024 or ``BIHARM_NODES``);
    ``method="spectral"`` evaluates the closed form.
    """
    x, y = _coords(zeta)
    if np.any(np.hypot(x, y) >= 1):
        raise DomainError("biharmonic_schwartz_disk requires ||zeta|| < 1")
    if method == "quadrature":
        return _trapezoid(u, x, y, nodes)
    if method == "spectral":
        return _spectral(u, x, y)
    raise ValueError(f"unknown method {method!r}")


def singular_boundary_disk(u: CircleData, theta) -> BNumber:
    """Principal-value singular integral at ``zeta = cos(theta) e1 + sin(theta) e2``."""
    theta = np.asarray(theta, dtype=float)
    x, y = np.cos(theta), np.sin(theta)
    m2 = circle_moment(u, 2)
    m3 = circle_moment(u, 3)
    head = 1j * conjugate_boundary(u, theta)
    return (
        head * E1
        - (y * m2 / (2 * np.pi)) * (E1 + 1j * E2)
        + ((x * m2 + m3) / (2 * np.pi)) * (E2 - 1j * E1)
    )


def boundary_value_disk(u: CircleData, theta) -> BNumber:
    """Limit of the disk integral at the boundary point of angle ``theta``."""
    return eval_circle(u, theta) * E1 + singular_boundary_disk(u, theta)


def solvability_integral(u1: CircleData, u3: CircleData) -> float:
    """Contour integral of ``u1 dx + u3 dy`` over the unit circle."""
    return float(np.pi * (u3.harmonic(1)[0] - u1.harmonic(1)[1]))


@dataclass(frozen=True)
class MomentSet:
    A1: float
    B1: float
    C1: float
    D1: float
    A3: float
    B3: float
    C3: float
    D3: float
    b: float
    b1: float
    b2: float

    @property
    def indicator(self) -> float:
        """``A1 - B3``; zero exactly when the disk problem is solvable."""
        return self.A1 - self.B3


def moment_coefficients(u1: CircleData, u3: CircleData) -> MomentSet:
    m = {}
    for k, u in ((1, u1), (3, u3)):
        m2 = circle_moment(u, 2) / (2 * np.pi)
        m3 = circle_moment(u, 3) / (2 * np.pi)
        m[f"A{k}"], m[f"B{k}"] = m2.real, m2.imag
        m[f"C{k}"], m[f"D{k}"] = m3.real, m3.imag
    m = {key: float(val) for key, val in m.items()}
    return MomentSet(
        **m,
        b=-m["A3"] - m["B1"],
        b1=-m["C3"] - m["D1"],
        b2=m["D3"] - m["C1"],
    )


def _solvability_tolerance(u1: CircleData, u3: CircleData) -> float:
    return EPS_SOLV * (1 + u1.norm() + u3.norm())


@dataclass(frozen=True)
class DiskSolution:
    """General solution of the disk (1-3)-problem in the class of Schwartz-type integrals.

    ``Phi = S_D[u1] e1 + S_D[u3] e2 + b zeta + b1 e1 + b2 e2 + i (a zeta + a1 e1 + a2 e2)``
    """

    u1: CircleData
    u3: CircleData
    a: float
    a1: float
    a2: float
    moments: MomentSet
    diagnostics: dict = field(default_factory=dict, compare=False)

    def _affine(self, x, y) -> BNumber:
        m = self.moments
        zeta = BNumber(x, y)
        return (m.b + 1j * self.a) * zeta + (m.b1 + 1j * self.a1) * E1 + (m.b2 + 1j * self.a2) * E2

    def __call__(self, zeta: BPoint) -> BNumber:
        x, y = _coords(zeta)
        r = np.hypot(x, y)
        if np.any(r > 1 + BOUNDARY_TOL):
            raise DomainError("DiskSolution is defined on the closed unit disk")
        on_edge = np.abs(r - 1) <= BOUNDARY_TOL
        s1 = _spectral(self.u1, x, y)
        s3 = _spectral(self.u3, x, y)
        if np.any(on_edge):
            theta = np.arctan2(y[on_edge], x[on_edge])
            e1 = boundary_value_disk(self.u1, theta)
            e3 = boundary_value_disk(self.u3, theta)
            s1 = _replace(s1, on_edge, e1)
            s3 = _replace(s3, on_edge, e3)
        return s1 + mul(s3, E2) + self._affine(x, y)

    def boundary(self, theta) -> BNumber:
        """Boundary values at angle ``theta`` via the singular-integral formula."""
        theta = np.asarray(theta, dtype=float)
        x, y = np.cos(theta), np.sin(theta)
        s1 = boundary_value_disk(self.u1, theta)
        s3 = boundary_value_disk(self.u3, theta)
        return s1 + mul(s3, E2) + self._affine(x, y)


def _replace(value: BNumber, mask, new: BNumber) -> BNumber:
    z1 = np.array(value.z1, dtype=complex)
    z2 = np.array(value.z2, dtype=complex)
    z1[mask], z2[mask] = new.z1, new.z2
    return BNumber(z1, z2)


def solve_13_disk(u1: CircleData, u3: CircleData, a=0.0, a1=0.0, a2=0.0, tol=None) -> DiskSolution:
    """Solve the (1-3)-problem for the unit disk.

    Raises
    ------
    Unsolvable
        If the contour integral of ``u1 dx + u3 dy`` exceeds the tolerance
        ``1e-10 * (1 + |u1| + |u3|)`` (coefficient norms).
    """
    value = solvability_integral(u1, u3)
    tol = _solvability_tolerance(u1, u3) if tol is None else tol
    if abs(value) > tol:
        raise Unsolvable(value, tol)
    moments = moment_coefficients(u1, u3)
    diagnostics = {"solvability_integral": value, "solvability_tolerance": tol}
    return DiskSolution(u1, u3, float(a), float(a1), float(a2), moments, diagnostics)


@dataclass(frozen=True)
class MainBiharmonicSolution:
    """Biharmonic ``V`` with prescribed boundary gradient, ``V(0, 0) = 0``.

    ``V = U1[Psi]`` where ``Psi`` is the monogenic primitive of ``field`` with
    ``Psi(0) = 0``.
    """

    field: DiskSolution
    nodes: int = 64

    def primitive(self, zeta: BPoint, path="radial") -> BNumber:
        x, y = _coords(zeta)
        t, w = gauss_legendre(self.nodes)
        s, w = 0.5 * (t + 1), 0.5 * w
        if path == "radial":
            phi = self.field(BPoint(x[..., None] * s, y[..., None] * s))
            total = BNumber(phi.z1 @ w, phi.z2 @ w)
            return mul(total, BNumber(x, y))
        if path == "staircase":
            leg1 = self.field(BPoint(x[..., None] * s, np.zeros_like(s)))
            leg2 = self.field(BPoint(np.broadcast_to(x[..., None], x.shape + s.shape), y[..., None] * s))
            first = BNumber(leg1.z1 @ w, leg1.z2 @ w) * x
            second = mul(BNumber(leg2.z1 @ w, leg2.z2 @ w) * y, E2)
            return first + second
        raise ValueError(f"unknown path {path!r}")

    def __call__(self, zeta: BPoint):
        return np.asarray(self.primitive(zeta).z1).real

    def V(self, x, y):
        return self(BPoint(x, y))


def solve_main_biharmonic(u1: CircleData, u3: CircleData, nodes=64) -> MainBiharmonicSolution:
    """Biharmonic function on the disk with ``(dV/dx, dV/dy) -> (u1, u3)`` on the circle."""
    return MainBiharmonicSolution(solve_13_disk(u1, u3), nodes=int(nodes))
