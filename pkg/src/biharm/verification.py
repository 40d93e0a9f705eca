"""Independent checkers and generators for monogenic fields.

Everything here works from first principles (finite differences,
least squares, explicit holomorphic pairs) and never calls into the solver
internals it is used to check, except :func:`roundtrip_check`, which drives a
solver end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from .algebra import E2, BNumber, BPoint, components, from_canonical, mul, norm
from .errors import DomainError, RegionError
from .kernels import CircleData, LineData

Evaluator = Callable[[BPoint], BNumber]


@dataclass(frozen=True)
class FieldProbe:
    """A field together with its finite-difference step and region.

    ``region`` is ``"disk"`` (radius ``radius``) or ``"halfplane"``.  When
    ``h`` is None the step ``1e-4 * (1 + ||zeta||)`` is used.
    """

    evaluator: Evaluator
    h: float | None = None
    region: str = "disk"
    radius: float = 1.0

    def step(self, zeta: BPoint):
        if self.h is not None:
            return self.h
        return 1e-4 * (1 + zeta.norm())

    def check(self, zeta: BPoint, margin):
        if np.any(np.asarray(margin) <= 0):
            raise RegionError("finite-difference step must be positive")
        if self.region == "disk":
            inside = zeta.norm() <= self.radius - margin
        elif self.region == "halfplane":
            inside = np.asarray(zeta.y) >= margin
        else:
            raise ValueError(f"unknown region {self.region!r}")
        if not np.all(inside):
            raise RegionError(f"stencil leaves the {self.region} (margin {margin})")


def cr_residual(probe: FieldProbe, zeta: BPoint):
    """``|| dPhi/dy - (dPhi/dx) e2 ||`` by centred differences."""
    h = probe.step(zeta)
    probe.check(zeta, 2 * h)
    x, y = np.asarray(zeta.x, dtype=float), np.asarray(zeta.y, dtype=float)
    f = probe.evaluator
    dx = (f(BPoint(x + h, y)) - f(BPoint(x - h, y))) / (2 * h)
    dy = (f(BPoint(x, y + h)) - f(BPoint(x, y - h))) / (2 * h)
    return norm(dy - mul(dx, E2))


# 13-point stencil of the squared Laplacian, offsets in units of h
_BIHARMONIC_STENCIL = (
    ((0, 0), 20.0),
    ((1, 0), -8.0), ((-1, 0), -8.0), ((0, 1), -8.0), ((0, -1), -8.0),
    ((1, 1), 2.0), ((1, -1), 2.0), ((-1, 1), 2.0), ((-1, -1), 2.0),
    ((2, 0), 1.0), ((-2, 0), 1.0), ((0, 2), 1.0), ((0, -2), 1.0),
)


def _samples(U, x, y, h):
    try:
        return {off: np.asarray(U(x + off[0] * h, y + off[1] * h), dtype=float) for off, _ in _BIHARMONIC_STENCIL}
    except DomainError as exc:
        raise RegionError(str(exc)) from exc


def biharmonic_residual(U, x, y, h=1e-2):
    """13-point approximation of ``(d4/dx4 + 2 d4/dx2dy2 + d4/dy4) U`` at ``(x, y)``.

    Exact for polynomials of degree at most 5.  ``U`` is called as ``U(x, y)``.
    """
    s = _samples(U, x, y, h)
    return sum(w * s[off] for off, w in _BIHARMONIC_STENCIL) / h**4


def biharmonic_scale(U, x, y, h=1e-2):
    """Largest of ``|U_xxxx|``, ``|2 U_xxyy|``, ``|U_yyyy|`` (and 1), from the same points."""
    f = _samples(U, x, y, h)
    dx4 = f[2, 0] - 4 * f[1, 0] + 6 * f[0, 0] - 4 * f[-1, 0] + f[-2, 0]
    dy4 = f[0, 2] - 4 * f[0, 1] + 6 * f[0, 0] - 4 * f[0, -1] + f[0, -2]
    dxy = 2 * (f[1, 1] + f[1, -1] + f[-1, 1] + f[-1, -1] - 2 * (f[1, 0] + f[-1, 0] + f[0, 1] + f[0, -1]) + 4 * f[0, 0])
    return np.maximum.reduce([np.ones_like(dx4), np.abs(dx4) / h**4, np.abs(dy4) / h**4, np.abs(dxy) / h**4])


def biharmonic_check(U, x, y, h=1e-2, richardson=False):
    """Return ``(residual, scale)`` for the stencil test ``residual <= 1e-4 * scale``.

    With ``richardson=True`` the stencil is applied at ``h`` and ``2h`` and the
    ``O(h^2)`` truncation term is cancelled, making the test exact on
    polynomials of degree at most 7.
    """
    r = biharmonic_residual(U, x, y, h)
    if richardson:
        r = (4 * r - biharmonic_residual(U, x, y, 2 * h)) / 3
    return np.abs(r), biharmonic_scale(U, x, y, h)


def component_fields(evaluator: Evaluator):
    """The four real component functions ``U_k(x, y)`` of a B-valued field."""
    return [
        (lambda x, y, k=k: components(evaluator(BPoint(x, y)))[k])
        for k in range(4)
    ]


# -- generators -----------------------------------------------------------


@dataclass(frozen=True)
class HolomorphicPair:
    """Polynomials ``F`` and ``F0`` (coefficients in increasing degree).

    With ``cayley=True`` they are polynomials in ``w = (z - i)/(z + i)``,
    hence rational in ``z`` and bounded at infinity.
    """

    F: tuple = (0j,)
    F0: tuple = (0j,)
    cayley: bool = False

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(complex(c) for c in np.atleast_1d(self.F)))
        object.__setattr__(self, "F0", tuple(complex(c) for c in np.atleast_1d(self.F0)))

    @property
    def degree(self) -> int:
        return max(len(self.F), len(self.F0)) - 1

    def evaluate(self, z):
        """Return ``(F(z), F'(z), F0(z))``."""
        z = np.asarray(z, dtype=complex)
        if self.cayley:
            w = (z - 1j) / (z + 1j)
            dw = 2j / (z + 1j) ** 2
            return P.polyval(w, self.F), P.polyval(w, P.polyder(self.F)) * dw, P.polyval(w, self.F0)
        return P.polyval(z, self.F), P.polyval(z, P.polyder(self.F)), P.polyval(z, self.F0)


def monogenic_from_holomorphic(pair: HolomorphicPair) -> Evaluator:
    """``Phi(zeta) = F(z) e1 - ((i y / 2) F'(z) - F0(z)) rho``."""

    def phi(zeta: BPoint) -> BNumber:
        y = np.asarray(zeta.y, dtype=float)
        F, dF, F0 = pair.evaluate(zeta.z)
        return from_canonical(F, -0.5j * y * dF + F0)

    return phi


def boundary_traces(pair: HolomorphicPair, domain: str):
    """Boundary data ``(u1, u3)`` of the field generated by ``pair``.

    Disk traces are projected exactly onto CircleData.  Half-plane traces are
    taken in the pullback angle, where ``z = tan(theta/2)`` corresponds to
    ``w = -exp(i theta)``.
    """
    deg = pair.degree + 1
    if domain == "disk":
        phi = monogenic_from_holomorphic(pair)

        def trace(k):
            return lambda th: components(phi(BPoint(np.cos(th), np.sin(th))))[k]

        return CircleData.fit(trace(0), deg), CircleData.fit(trace(2), deg)
    if domain == "halfplane":
        if not pair.cayley:
            raise ValueError("half-plane traces need a Cayley-pullback pair")

        def values(th):
            w = -np.exp(1j * th)
            # on the real axis y = 0, so Phi = F e1 + F0 rho
            return from_canonical(P.polyval(w, pair.F), P.polyval(w, pair.F0))

        u1 = CircleData.fit(lambda th: components(values(th))[0], deg)
        u3 = CircleData.fit(lambda th: components(values(th))[2], deg)
        return LineData(u1), LineData(u3)
    raise ValueError(f"unknown domain {domain!r}")


# -- homogeneous family ---------------------------------------------------


def default_probe_points(domain: str) -> BPoint:
    if domain == "disk":
        r = np.repeat([0.2, 0.5, 0.8], 6)
        t = np.tile(np.linspace(0, 2 * np.pi, 6, endpoint=False), 3) + r
        return BPoint(r * np.cos(t), r * np.sin(t))
    if domain == "halfplane":
        x = np.tile([-3.0, -1.0, 0.0, 0.5, 2.0, 4.0], 3)
        y = np.repeat([0.1, 1.0, 3.0], 6)
        return BPoint(x, y)
    raise ValueError(f"unknown domain {domain!r}")


def match_up_to_homogeneous(phi_a: Evaluator, phi_b: Evaluator, domain: str, points: BPoint | None = None):
    """Fit ``phi_b - phi_a`` by ``i a zeta + i a1 e1 + i a2 e2``.

    Returns ``(a, a1, a2, residual)`` with the post-fit sup-norm residual; on
    the half-plane ``a`` is fixed at zero.
    """
    pts = default_probe_points(domain) if points is None else points
    x = np.ravel(pts.x).astype(float)
    y = np.ravel(pts.y).astype(float)
    d = phi_b(BPoint(x, y)) - phi_a(BPoint(x, y))
    rhs = np.concatenate(components(d))
    zero, one = np.zeros_like(x), np.ones_like(x)
    # components of i zeta, i e1, i e2 stacked as (U1, U2, U3, U4)
    cols = [
        np.concatenate([zero, one, zero, zero]),
        np.concatenate([zero, zero, zero, one]),
    ]
    if domain == "disk":
        cols.insert(0, np.concatenate([zero, x, zero, y]))
    A = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    resid = (rhs - A @ coef).reshape(4, -1)
    residual = float(np.max(np.sqrt(np.sum(resid**2, axis=0)))) if x.size else 0.0
    if domain == "disk":
        a, a1, a2 = coef
    else:
        a, (a1, a2) = 0.0, coef
    return float(a), float(a1), float(a2), residual


@dataclass
class RoundtripReport:
    domain: str
    a: float
    a1: float
    a2: float
    residual: float
    solvability_integral: float | None = None
    threshold: float = 1e-3
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold


def roundtrip_check(pair: HolomorphicPair, domain: str, threshold=1e-3) -> RoundtripReport:
    """Trace a generated field, re-solve from its traces and compare."""
    from .disk import solvability_integral, solve_13_disk
    from .halfplane import solve_13_halfplane

    phi_true = monogenic_from_holomorphic(pair)
    u1, u3 = boundary_traces(pair, domain)
    if domain == "disk":
        value = solvability_integral(u1, u3)
        sol = solve_13_disk(u1, u3)
    else:
        value = None
        sol = solve_13_halfplane(u1, u3)
    a, a1, a2, residual = match_up_to_homogeneous(sol, phi_true, domain)
    return RoundtripReport(domain, a, a1, a2, residual, value, threshold)


# -- principal-value oracles ----------------------------------------------


def _graded_panels(lo, hi, first, nodes=16):
    """Gauss-Legendre nodes on [lo, hi], panels doubling in width away from ``lo``."""
    edges = [lo]
    width = first
    while edges[-1] + width < hi:
        edges.append(edges[-1] + width)
        width *= 2
    edges.append(hi)
    t, w = np.polynomial.legendre.leggauss(nodes)
    a = np.asarray(edges[:-1])[:, None]
    b = np.asarray(edges[1:])[:, None]
    x = 0.5 * (b - a) * t + 0.5 * (a + b)
    return x.ravel(), (0.5 * (b - a) * w).ravel()


def _two_sided(lo, hi, cut_lo, cut_hi, first):
    """Nodes on ``[lo, cut_lo] U [cut_hi, hi]``, graded towards the cut."""
    x1, w1 = _graded_panels(0.0, cut_lo - lo, first)
    x2, w2 = _graded_panels(0.0, hi - cut_hi, first)
    return np.concatenate([cut_lo - x1, cut_hi + x2]), np.concatenate([w1, w2])


def _extrapolate(eps, values):
    (e1, e2), (v1, v2) = eps, values
    return (e1 * v2 - e2 * v1) / (e1 - e2)


def disk_pv_excluded(u: CircleData, theta0: float, eps: float) -> BNumber:
    """Singular disk integral with the arc ``||tau - zeta|| < eps`` removed."""
    from .algebra import inv

    delta = 2 * np.arcsin(eps / 2)
    th, w = _two_sided(theta0 - np.pi, theta0 + np.pi, theta0 - delta, theta0 + delta, delta)
    c, s = np.cos(th), np.sin(th)
    tau = BNumber(c, s)
    zeta = BNumber(np.cos(theta0), np.sin(theta0))
    k = mul(mul(mul(tau + zeta, inv(tau - zeta)), inv(tau)), BNumber(-s, c))
    weights = w * u(th) / (2j * np.pi)
    return BNumber(k.z1 @ weights, k.z2 @ weights)


def disk_pv_oracle(u: CircleData, theta0: float, eps=(1e-2, 1e-3)) -> BNumber:
    """Linear extrapolation in ``eps`` of :func:`disk_pv_excluded`."""
    v1, v2 = (disk_pv_excluded(u, theta0, e) for e in eps)
    return BNumber(_extrapolate(eps, (v1.z1, v2.z1)), _extrapolate(eps, (v1.z2, v2.z2)))


def conjugate_pv_excluded(u: CircleData, theta0: float, eps: float) -> complex:
    """``S0[u]`` (complex singular Schwartz integral) with an ``eps``-arc removed."""
    delta = 2 * np.arcsin(eps / 2)
    th, w = _two_sided(theta0 - np.pi, theta0 + np.pi, theta0 - delta, theta0 + delta, delta)
    t, z = np.exp(1j * th), np.exp(1j * theta0)
    # dt / t = i dtheta
    return complex(np.sum(w * u(th) * (t + z) / (t - z)) / (2 * np.pi))


def conjugate_pv_oracle(u: CircleData, theta0: float, eps=(1e-2, 1e-3)) -> complex:
    return _extrapolate(eps, [conjugate_pv_excluded(u, theta0, e) for e in eps])


def line_pv_excluded(u: LineData, xi: float, eps: float) -> complex:
    """``(1/pi i) int u(t)/(t^2+1) (1 + t xi)/(t - xi) dt`` over ``|t - xi| >= eps``.

    In ``phi = arctan t`` the measure is ``dphi`` and the integral over the
    whole line is proper at infinity.
    """
    lo, hi = np.arctan(xi - eps), np.arctan(xi + eps)
    phi, w = _two_sided(-np.pi / 2, np.pi / 2, lo, hi, hi - lo)
    t = np.tan(phi)
    return complex(np.sum(w * u(t) * (1 + t * xi) / (t - xi)) / (np.pi * 1j))


def line_pv_oracle(u: LineData, xi: float, eps=(1e-2, 1e-3)) -> complex:
    return _extrapolate(eps, [line_pv_excluded(u, xi, e) for e in eps])
