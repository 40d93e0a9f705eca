"""Biharmonic Schwartz integral and the (1-3)-problem for the upper half-plane.

The production path assembles the B-valued integral from two complex ones,

    S_Pi[u](zeta) = S[u](z) e1 - (y / 2 pi) rho * int u(t) / (t - z)**2 dt,

with ``z = x + iy``.  The direct B-valued quadrature of the defining kernel is
kept as an independent route (``method="quadrature"``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import E1, E2, RHO, BNumber, BPoint, inv, mul
from .errors import DomainError
from .kernels import (
    DEFAULT_LINE_NODES,
    LineData,
    _half_line_rule,
    eval_circle,
    hp_second_kernel,
    line_pv_boundary,
    line_pv_infinity,
    schwartz_halfplane,
)

#: Below this height the field is evaluated by its boundary limit.
NEAR_BOUNDARY = 1e-6


def _upper(zeta: BPoint, allow_boundary=False):
    x = np.asarray(zeta.x, dtype=float)
    y = np.asarray(zeta.y, dtype=float)
    bad = y < 0 if allow_boundary else y <= 0
    if np.any(bad):
        raise DomainError("point must lie in the upper half-plane (y > 0)")
    return x, y


def _direct_quadrature(u: LineData, x, y, nodes):
    """B-valued quadrature of ``(1/pi i) int u(t)(1 + t zeta)/(t^2+1) (t - zeta)^-1 dt``.

    With ``t = tan phi`` the measure ``dt/(t^2+1)`` becomes ``dphi`` and the
    kernel ``(cos phi + zeta sin phi)(sin phi - zeta cos phi)^-1``.
    """
    phi, w = _half_line_rule(nodes)
    s, c = np.sin(phi), np.cos(phi)
    zeta = BNumber(np.asarray(x, dtype=float)[..., None], np.asarray(y, dtype=float)[..., None])
    num = E1 * c + zeta * s
    den = E1 * s - zeta * c
    k = mul(num, inv(den))
    weights = w * eval_circle(u.pullback, 2 * phi)
    return BNumber(k.z1 @ weights, k.z2 @ weights) * (1 / (np.pi * 1j))


def biharmonic_schwartz_halfplane(u: LineData, zeta: BPoint, method="spectral", nodes=DEFAULT_LINE_NODES):
    """Biharmonic Schwartz integral for the half-plane at ``zeta`` (``y > 0``)."""
    x, y = _upper(zeta)
    if method == "quadrature":
        return _direct_quadrature(u, x, y, nodes)
    z = x + 1j * y
    s = schwartz_halfplane(u, z, method=method, nodes=nodes)
    second = hp_second_kernel(u, z, method=method, nodes=nodes)
    return s * E1 - RHO * (y / (2 * np.pi) * second)


def boundary_value_halfplane(u: LineData, xi, nodes=DEFAULT_LINE_NODES) -> BNumber:
    """Limit of the biharmonic Schwartz integral at the real point ``xi``."""
    xi = np.asarray(xi, dtype=float)
    return (u(xi) + line_pv_boundary(u, xi, nodes=nodes)) * E1


def limit_at_infinity(u: LineData, nodes=DEFAULT_LINE_NODES) -> BNumber:
    """Limit of the biharmonic Schwartz integral as ``||zeta|| -> inf``."""
    return (u.at_infinity - line_pv_infinity(u, nodes=nodes)) * E1


def _evaluate(u: LineData, x, y, nodes):
    """Closed half-plane evaluation with the near-boundary switch."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    near = y < NEAR_BOUNDARY
    if not np.any(near):
        return biharmonic_schwartz_halfplane(u, BPoint(x, y), nodes=nodes)
    z1 = np.empty(x.shape, dtype=complex)
    z2 = np.empty(x.shape, dtype=complex)
    if np.any(~near):
        inner = biharmonic_schwartz_halfplane(u, BPoint(x[~near], y[~near]), nodes=nodes)
        z1[~near], z2[~near] = inner.z1, inner.z2
    edge = boundary_value_halfplane(u, x[near], nodes=nodes)
    z1[near], z2[near] = edge.z1, edge.z2
    return BNumber(z1, z2)


@dataclass(frozen=True)
class HalfplaneSolution:
    """``Phi = S[u1] e1 + S[u3] e2 + a1 i e1 + a2 i e2`` on the closed half-plane."""

    u1: LineData
    u3: LineData
    a1: float = 0.0
    a2: float = 0.0
    nodes: int = DEFAULT_LINE_NODES
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def homogeneous(self) -> BNumber:
        return 1j * self.a1 * E1 + 1j * self.a2 * E2

    def __call__(self, zeta: BPoint) -> BNumber:
        x, y = _upper(zeta, allow_boundary=True)
        s1 = _evaluate(self.u1, x, y, self.nodes)
        s3 = _evaluate(self.u3, x, y, self.nodes)
        return s1 + mul(s3, E2) + self.homogeneous

    def at_infinity(self) -> BNumber:
        s1 = limit_at_infinity(self.u1, self.nodes)
        s3 = limit_at_infinity(self.u3, self.nodes)
        return s1 + mul(s3, E2) + self.homogeneous


def solve_13_halfplane(u1: LineData, u3: LineData, a1=0.0, a2=0.0, nodes=DEFAULT_LINE_NODES) -> HalfplaneSolution:
    """General solution of the (1-3)-problem for the upper half-plane.

    The problem is solvable for every pair of data; ``a1`` and ``a2`` select a
    member of the homogeneous family ``a1 i e1 + a2 i e2``.
    """
    diagnostics = {
        "line_nodes": int(nodes),
        "u1_infinity": u1.at_infinity,
        "u3_infinity": u3.at_infinity,
    }
    return HalfplaneSolution(u1, u3, float(a1), float(a2), int(nodes), diagnostics)
