"""Complex-plane building blocks.

Boundary data on the unit circle are real trigonometric polynomials
(:class:`CircleData`); data on the real line are trigonometric polynomials
in the pullback angle ``theta = 2 arctan t`` (:class:`LineData`).  For these
classes the classical Schwartz integrals have closed forms as power series,
which is what the production paths below evaluate:

* disk:        F(z) = a0 + sum_n (a_n - i b_n) z**n
* half-plane:  S[u](z) = F(-w),  w = (z - i) / (z + i)

Principal-value integrals along the real line are evaluated through their
subtraction-regularized forms with Gauss-Legendre quadrature in the angle
``phi = arctan t``, which maps the whole line onto ``(-pi/2, pi/2)``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError

DEFAULT_CIRCLE_NODES = 1024
DEFAULT_LINE_NODES = 512


def circle_nodes(nodes=None) -> int:
    """Trapezoid node count: explicit argument, then ``BIHARM_NODES``, then 1024."""
    if nodes is not None:
        return int(nodes)
    env = os.environ.get("BIHARM_NODES")
    if env:
        return int(env)
    return DEFAULT_CIRCLE_NODES


@lru_cache(maxsize=16)
def gauss_legendre(n: int):
    """Nodes and weights on [-1, 1] (cached, read-only)."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _half_line_rule(n: int):
    """Gauss-Legendre rule in ``phi`` over ``(-pi/2, pi/2)``."""
    x, w = gauss_legendre(n)
    return 0.5 * np.pi * x, 0.5 * np.pi * w


def _as_float_tuple(values):
    return tuple(float(v) for v in np.asarray(values, dtype=float).ravel())


@dataclass(frozen=True)
class CircleData:
    """Real trigonometric polynomial ``a0 + sum a_n cos n t + b_n sin n t``."""

    a0: float = 0.0
    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        a, b = _as_float_tuple(self.a), _as_float_tuple(self.b)
        n = max(len(a), len(b))
        a = a + (0.0,) * (n - len(a))
        b = b + (0.0,) * (n - len(b))
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degree(self) -> int:
        return len(self.a)

    N = degree

    def coefficients(self) -> np.ndarray:
        """Power-series coefficients ``[a0, a1 - i b1, a2 - i b2, ...]``."""
        c = np.empty(self.degree + 1, dtype=complex)
        c[0] = self.a0
        c[1:] = np.asarray(self.a) - 1j * np.asarray(self.b)
        return c

    def harmonic(self, n: int):
        """Return ``(a_n, b_n)``, zero beyond the degree."""
        if n == 0:
            return self.a0, 0.0
        if 1 <= n <= self.degree:
            return self.a[n - 1], self.b[n - 1]
        return 0.0, 0.0

    def __call__(self, theta):
        return eval_circle(self, theta)

    def __add__(self, other):
        n = max(self.degree, other.degree)
        pad = lambda v: np.pad(np.asarray(v, float), (0, n - len(v)))  # noqa: E731
        return CircleData(self.a0 + other.a0, pad(self.a) + pad(other.a), pad(self.b) + pad(other.b))

    def __mul__(self, k):
        return CircleData(k * self.a0, np.multiply(k, self.a), np.multiply(k, self.b))

    __rmul__ = __mul__

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.sqrt(self.a0**2 + np.sum(np.square(self.a)) + np.sum(np.square(self.b))))

    @classmethod
    def from_samples(cls, values, degree=None, tol=0.0):
        """Fit from ``M`` equispaced samples ``theta_j = 2 pi j / M``.

        Exact for trigonometric polynomials of degree ``< M/2``.  Coefficients
        smaller than ``tol`` are dropped.
        """
        values = np.asarray(values, dtype=float)
        m = values.size
        c = np.fft.rfft(values) / m
        nmax = (m - 1) // 2 if degree is None else int(degree)
        a0 = c[0].real
        a = 2 * c[1 : nmax + 1].real
        b = -2 * c[1 : nmax + 1].imag
        if tol:
            a = np.where(np.abs(a) > tol, a, 0.0)
            b = np.where(np.abs(b) > tol, b, 0.0)
            a0 = a0 if abs(a0) > tol else 0.0
            keep = np.flatnonzero((a != 0) | (b != 0))
            n = keep[-1] + 1 if keep.size else 0
            a, b = a[:n], b[:n]
        return cls(a0, a, b)

    @classmethod
    def fit(cls, func, degree: int, tol=1e-14):
        """Project a callable of ``theta`` onto degree ``<= degree``."""
        m = 4 * (degree + 2)
        theta = 2 * np.pi * np.arange(m) / m
        return cls.from_samples(func(theta), degree=degree, tol=tol)

    def to_dict(self) -> dict:
        return {"a0": self.a0, "cos": list(self.a), "sin": list(self.b)}

    @classmethod
    def from_dict(cls, obj) -> "CircleData":
        if not isinstance(obj, dict) or "pullback" in obj:
            raise ValueError("circle data must be an object with keys a0, cos, sin")
        if set(obj) != {"a0", "cos", "sin"}:
            raise ValueError(f"circle data needs exactly the keys a0, cos, sin; got {sorted(obj)}")
        if not _is_number(obj["a0"]):
            raise ValueError("a0 must be a number")
        for key in ("cos", "sin"):
            if not isinstance(obj[key], list) or not all(_is_number(v) for v in obj[key]):
                raise ValueError(f"{key} must be a list of numbers")
        return cls(obj["a0"], obj["cos"], obj["sin"])


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


@dataclass(frozen=True)
class LineData:
    """Datum on the extended real line: ``u(t) = pullback(2 arctan t)``."""

    pullback: CircleData = field(default_factory=CircleData)

    def __call__(self, t):
        return eval_circle(self.pullback, 2 * np.arctan(t))

    @property
    def at_infinity(self) -> float:
        return float(eval_circle(self.pullback, np.pi))

    def to_dict(self) -> dict:
        return {"pullback": self.pullback.to_dict()}

    @classmethod
    def from_dict(cls, obj) -> "LineData":
        if not isinstance(obj, dict) or set(obj) != {"pullback"}:
            raise ValueError("line data must be an object with the single key 'pullback'")
        return cls(CircleData.from_dict(obj["pullback"]))


def dumps(data) -> str:
    """Canonical JSON text of CircleData or LineData."""
    return json.dumps(data.to_dict(), sort_keys=True)


def loads(text: str):
    obj = json.loads(text)
    if isinstance(obj, dict) and "pullback" in obj:
        return LineData.from_dict(obj)
    return CircleData.from_dict(obj)


# -- circle ---------------------------------------------------------------


def eval_circle(u: CircleData, theta):
    theta = np.asarray(theta, dtype=float)
    n = np.arange(1, u.degree + 1)
    nt = np.multiply.outer(theta, n)
    return u.a0 + np.cos(nt) @ np.asarray(u.a) + np.sin(nt) @ np.asarray(u.b)


def eval_circle_derivative(u: CircleData, theta):
    """Derivative of the trigonometric polynomial with respect to the angle."""
    theta = np.asarray(theta, dtype=float)
    n = np.arange(1, u.degree + 1)
    nt = np.multiply.outer(theta, n)
    return np.cos(nt) @ (n * np.asarray(u.b)) - np.sin(nt) @ (n * np.asarray(u.a))


def conjugate_boundary(u: CircleData, theta):
    """Conjugate function ``sum a_n sin n t - b_n cos n t``."""
    theta = np.asarray(theta, dtype=float)
    n = np.arange(1, u.degree + 1)
    nt = np.multiply.outer(theta, n)
    return np.sin(nt) @ np.asarray(u.a) - np.cos(nt) @ np.asarray(u.b)


def schwartz_series(u: CircleData, z):
    """Holomorphic extension ``F`` of ``u + i u~``; valid on the closed disk."""
    return P.polyval(np.asarray(z, dtype=complex), u.coefficients())


def schwartz_series_derivative(u: CircleData, z, order: int = 1):
    return P.polyval(np.asarray(z, dtype=complex), P.polyder(u.coefficients(), order))


def schwartz_disk(u: CircleData, z):
    """Complex Schwartz integral for the unit disk (``Im F(0) = 0``)."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("schwartz_disk requires |z| < 1")
    return schwartz_series(u, z)


def schwartz_disk_quadrature(u: CircleData, z, nodes=None):
    """Trapezoid rule for ``(1/2 pi i) int u(t) (t+z)/(t-z) dt/t``."""
    m = circle_nodes(nodes)
    theta = 2 * np.pi * np.arange(m) / m
    t = np.exp(1j * theta)
    z = np.asarray(z, dtype=complex)
    kern = (t + z[..., None]) / (t - z[..., None])
    return (kern @ eval_circle(u, theta)) / m


def circle_moment(u: CircleData, k: int):
    """Contour integral of ``u(t) / t**k`` over the unit circle."""
    # t = exp(i theta) turns the integral into 2 pi i times a Fourier coefficient
    if k == 1:
        return 2j * np.pi * u.a0
    if k < 1:
        a, b = u.harmonic(1 - k)
        return 1j * np.pi * (a + 1j * b)
    a, b = u.harmonic(k - 1)
    return 1j * np.pi * (a - 1j * b)


# -- half-plane -----------------------------------------------------------


def cayley(z):
    """``w = (z - i)/(z + i)``; boundary point ``t`` maps to ``-exp(i 2 arctan t)``."""
    z = np.asarray(z, dtype=complex)
    return (z - 1j) / (z + 1j)


def _check_upper(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("point must lie in the open upper half-plane")
    return z


def _schwartz_halfplane_spectral(u: LineData, z):
    return schwartz_series(u.pullback, -cayley(z))


def _schwartz_halfplane_derivative(u: LineData, z):
    # d/dz F(-w(z)) = -F'(-w) * 2i/(z+i)^2
    z = np.asarray(z, dtype=complex)
    return -schwartz_series_derivative(u.pullback, -cayley(z)) * 2j / (z + 1j) ** 2


def schwartz_halfplane(u: LineData, z, method="spectral", nodes=DEFAULT_LINE_NODES):
    """Complex Schwartz integral ``S[u](z)`` for the upper half-plane.

    ``method="quadrature"`` integrates the kernel directly after ``t = tan phi``;
    it degrades as ``Im z -> 0`` and is meant as a cross-check.
    """
    z = _check_upper(z)
    if method == "spectral":
        return _schwartz_halfplane_spectral(u, z)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    phi, w = _half_line_rule(nodes)
    s, c = np.sin(phi), np.cos(phi)
    zz = z[..., None]
    kern = (c + zz * s) / (s - zz * c)
    return (kern @ (w * eval_circle(u.pullback, 2 * phi))) / (np.pi * 1j)


def hp_second_kernel(u: LineData, z, method="spectral", nodes=DEFAULT_LINE_NODES):
    """The integral of ``u(t) / (t - z)**2`` over the real line.

    It equals ``pi i S'[u](z)``; the quadrature route uses ``t = tan phi``.
    """
    z = _check_upper(z)
    if method == "spectral":
        return np.pi * 1j * _schwartz_halfplane_derivative(u, z)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    phi, w = _half_line_rule(nodes)
    s, c = np.sin(phi), np.cos(phi)
    kern = 1.0 / (s - z[..., None] * c) ** 2
    return kern @ (w * eval_circle(u.pullback, 2 * phi))


def line_pv_boundary(u: LineData, xi, nodes=DEFAULT_LINE_NODES):
    """Principal-value term of the boundary value of ``S[u]`` at real ``xi``.

    Evaluates ``(1/pi i) int (u(t) - u(xi)) [1/(t - xi) - t/(t^2 + 1)] dt``.
    With ``t = tan phi`` the kernel times ``dt`` becomes ``cot(phi - phi0) dphi``,
    so the integrand is smooth on the whole period.
    """
    xi = np.asarray(xi, dtype=float)
    phi, w = _half_line_rule(nodes)
    phi0 = np.arctan(xi)[..., None]
    p = u.pullback
    delta = phi - phi0
    diff = eval_circle(p, 2 * phi) - eval_circle(p, 2 * phi0)
    near = np.abs(delta) < 1e-9
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = np.where(near, 2 * eval_circle_derivative(p, 2 * phi0), diff / np.tan(delta))
    return (integrand @ w) / (np.pi * 1j)


def line_pv_infinity(u: LineData, nodes=DEFAULT_LINE_NODES):
    """``(1/pi i) PV int u(t) t/(t^2+1) dt``, regularized by subtracting ``u(inf)``."""
    phi, w = _half_line_rule(nodes)
    diff = eval_circle(u.pullback, 2 * phi) - u.at_infinity
    return complex(np.sum(w * diff * np.tan(phi)) / (np.pi * 1j))
