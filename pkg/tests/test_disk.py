import numpy as np
import pytest

from biharm import (
    E1,
    E2,
    BNumber,
    BPoint,
    CircleData,
    DomainError,
    Unsolvable,
    biharmonic_schwartz_disk,
    boundary_value_disk,
    components,
    moment_coefficients,
    mul,
    norm,
    singular_boundary_disk,
    solvability_integral,
    solve_13_disk,
    solve_main_biharmonic,
)
from biharm.verification import disk_pv_oracle

from conftest import random_circle

ONE = CircleData(1.0)
COS = CircleData(0.0, [1.0])
SIN = CircleData(0.0, [0.0], [1.0])
ZERO_C = CircleData()


def interior_points(rng, n, rmax=0.95):
    r = rmax * np.sqrt(rng.uniform(size=n))
    t = rng.uniform(0, 2 * np.pi, n)
    return r * np.cos(t), r * np.sin(t)


def solvable_pair(rng, degree, decay=0.0, amplitude=None):
    """Random (u1, u3) with the first-harmonic coupling that makes them solvable.

    Harmonics are normal draws, or uniform in [-amplitude, amplitude] when given,
    divided by n**decay.
    """
    n = np.arange(1, degree + 1)
    if amplitude is None:
        draw = lambda: rng.normal(size=degree)
    else:
        draw = lambda: rng.uniform(-amplitude, amplitude, degree)
    u1 = CircleData(rng.normal(), draw() / n**decay, draw() / n**decay)
    a3 = draw() / n**decay
    a3[0] = u1.b[0]
    return u1, CircleData(rng.normal(), a3, draw() / n**decay)


# -- closed forms of the disk integral ---------------------------------------


@pytest.mark.parametrize("method", ["quadrature", "spectral"])
def test_closed_forms(rng, method):
    x, y = interior_points(rng, 16)
    zeta = BNumber(x, y)
    got = lambda u: biharmonic_schwartz_disk(u, BPoint(x, y), method=method)
    assert np.max(norm(got(ONE) - E1)) < 1e-13
    assert np.max(norm(got(COS) - 0.5 * mul(3 * E1 + 1j * E2, zeta))) < 1e-13
    assert np.max(norm(got(SIN) - 0.5 * mul(-3j * E1 + E2, zeta))) < 1e-13


def test_quadrature_matches_spectral(rng):
    for _ in range(4):
        u = random_circle(rng, 6)
        x, y = interior_points(rng, 20, 0.9)
        a = biharmonic_schwartz_disk(u, BPoint(x, y))
        b = biharmonic_schwartz_disk(u, BPoint(x, y), method="spectral")
        assert np.max(norm(a - b)) < 1e-10


def test_disk_integral_domain():
    with pytest.raises(DomainError):
        biharmonic_schwartz_disk(COS, BPoint(0.6, 0.8))
    with pytest.raises(ValueError):
        biharmonic_schwartz_disk(COS, BPoint(0.1, 0.1), method="nope")


def test_few_nodes_are_exact_only_at_the_centre():
    # an 8-node rule is exact at zeta = 0 but the kernel is not band-limited elsewhere
    zero = biharmonic_schwartz_disk(COS, BPoint(0.0, 0.0), nodes=8)
    assert norm(zero) < 1e-15
    errs = []
    for r in (0.05, 0.2, 0.5):
        z = BNumber(r * 0.6, r * 0.8)
        errs.append(float(norm(biharmonic_schwartz_disk(COS, BPoint(r * 0.6, r * 0.8), nodes=8) - 0.5 * mul(3 * E1 + 1j * E2, z))))
    assert errs[0] < errs[1] < errs[2]
    assert errs[2] > 1e-2
    # geometric decay in the node count at fixed zeta
    e16 = norm(biharmonic_schwartz_disk(COS, BPoint(0.3, 0.4), nodes=16) - 0.5 * mul(3 * E1 + 1j * E2, BNumber(0.3, 0.4)))
    e32 = norm(biharmonic_schwartz_disk(COS, BPoint(0.3, 0.4), nodes=32) - 0.5 * mul(3 * E1 + 1j * E2, BNumber(0.3, 0.4)))
    assert e32 < e16**1.5


# -- boundary values -------------------------------------------------------


def test_singular_boundary_examples():
    theta = np.linspace(0, 2 * np.pi, 9)
    assert np.max(norm(singular_boundary_disk(ONE, theta))) < 1e-15
    c, s = np.cos(theta), np.sin(theta)
    expected = 0.5 * (c + 1j * s) * E1 + 0.5 * (s + 1j * c) * E2
    assert np.max(norm(singular_boundary_disk(COS, theta) - expected)) < 1e-15
    # second route: boundary value of the closed form minus the data term
    closed = 0.5 * mul(3 * E1 + 1j * E2, BNumber(c, s))
    assert np.max(norm(closed - c * E1 - singular_boundary_disk(COS, theta))) < 1e-15


def test_singular_boundary_against_excluded_pv(rng):
    u = random_circle(rng, 4)
    for th in np.linspace(0.1, 6.0, 5):
        assert norm(disk_pv_oracle(u, th) - singular_boundary_disk(u, th)) < 1e-4


def test_boundary_limit_law(rng):
    u = random_circle(rng, 5)
    theta = np.linspace(0, 2 * np.pi, 16, endpoint=False)
    target = boundary_value_disk(u, theta)
    errs = []
    for r in (1 - 1e-2, 1 - 1e-3, 1 - 1e-4):
        inner = biharmonic_schwartz_disk(u, BPoint(r * np.cos(theta), r * np.sin(theta)), method="spectral")
        errs.append(np.max(norm(inner - target)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-2


# -- solvability and moments -------------------------------------------------


def test_solvability_examples():
    assert solvability_integral(ZERO_C, ZERO_C) == 0
    assert solvability_integral(ZERO_C, COS) == pytest.approx(np.pi, abs=1e-15)
    assert solvability_integral(COS, SIN) == 0


def test_solvability_against_quadrature(rng):
    theta = 2 * np.pi * np.arange(256) / 256
    for _ in range(5):
        u1, u3 = random_circle(rng, 5), random_circle(rng, 5)
        direct = np.mean(-u1(theta) * np.sin(theta) + u3(theta) * np.cos(theta)) * 2 * np.pi
        assert solvability_integral(u1, u3) == pytest.approx(direct, abs=1e-12)


def test_solvability_equals_moment_indicator(rng):
    for _ in range(20):
        u1, u3 = random_circle(rng, 6), random_circle(rng, 6)
        m = moment_coefficients(u1, u3)
        assert abs(solvability_integral(u1, u3) + 2 * np.pi * m.indicator) < 1e-12


def test_moment_examples():
    m = moment_coefficients(ZERO_C, ZERO_C)
    assert all(v == 0 for v in vars(m).values())
    m = moment_coefficients(COS, SIN)
    assert (m.A1, m.B1, m.A3, m.B3) == pytest.approx((0, 0.5, 0.5, 0), abs=1e-16)
    assert (m.C1, m.D1, m.C3, m.D3) == (0, 0, 0, 0)
    assert (m.b, m.b1, m.b2) == pytest.approx((-1, 0, 0), abs=1e-16)
    m = moment_coefficients(CircleData(0, [0, 1]), ZERO_C)
    assert (m.C1, m.D1, m.b1, m.b, m.b2) == pytest.approx((0, 0.5, -0.5, 0, 0), abs=1e-16)


# -- the (1-3)-problem -----------------------------------------------------


def test_unsolvable_reports_integral():
    with pytest.raises(Unsolvable) as info:
        solve_13_disk(ZERO_C, COS)
    assert info.value.value == pytest.approx(np.pi, abs=1e-12)
    assert str(info.value).startswith("unsolvable: contour integral = 3.14159")


def test_homogeneous_solution(rng):
    x, y = interior_points(rng, 10)
    sol = solve_13_disk(ZERO_C, ZERO_C, a=0.5, a1=-1.0, a2=2.0)
    expected = 0.5j * BNumber(x, y) - 1j * E1 + 2j * E2
    got = sol(BPoint(x, y))
    assert np.max(norm(got - expected)) == 0
    U1, _, U3, _ = components(got)
    assert np.all(U1 == 0) and np.all(U3 == 0)


def test_identity_field(rng):
    x, y = interior_points(rng, 30, 1.0)
    sol = solve_13_disk(COS, SIN)
    assert np.max(norm(sol(BPoint(x, y)) - BNumber(x, y))) < 1e-14
    theta = np.linspace(0, 2 * np.pi, 7)
    assert np.max(norm(sol(BPoint(np.cos(theta), np.sin(theta))) - BNumber(np.cos(theta), np.sin(theta)))) < 1e-14


def test_free_constants_shift(rng):
    u1, u3 = solvable_pair(rng, 4)
    x, y = interior_points(rng, 12)
    diff = solve_13_disk(u1, u3, 1.5, -0.5, 0.25)(BPoint(x, y)) - solve_13_disk(u1, u3)(BPoint(x, y))
    expected = 1.5j * BNumber(x, y) - 0.5j * E1 + 0.25j * E2
    assert np.max(norm(diff - expected)) < 1e-15
    U1, _, U3, _ = components(diff)
    assert np.max(np.abs(U1)) < 1e-15 and np.max(np.abs(U3)) < 1e-15


def test_exact_boundary_values(rng):
    theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    for _ in range(5):
        u1, u3 = solvable_pair(rng, 6)
        sol = solve_13_disk(u1, u3)
        U1, _, U3, _ = components(sol(BPoint(np.cos(theta), np.sin(theta))))
        assert np.max(np.abs(U1 - u1(theta))) < 1e-13
        assert np.max(np.abs(U3 - u3(theta))) < 1e-13


def test_boundary_recovery_smooth_data(rng):
    # the gap at r = 0.999 is 1e-3 times the radial derivative, so the data
    # class keeps that derivative below one
    theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    for _ in range(5):
        u1, u3 = solvable_pair(rng, 6, decay=2, amplitude=0.25)
        sol = solve_13_disk(u1, u3)
        errs = []
        for r in (0.99, 0.999):
            U1, _, U3, _ = components(sol(BPoint(r * np.cos(theta), r * np.sin(theta))))
            errs.append(max(np.max(np.abs(U1 - u1(theta))), np.max(np.abs(U3 - u3(theta)))))
        assert errs[1] < errs[0]
        assert errs[1] <= 1e-3


def test_boundary_recovery_is_first_order(rng):
    # for unit-size coefficients the gap at radius r is (1 - r) times the radial derivative
    theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    u1, u3 = solvable_pair(rng, 6)
    sol = solve_13_disk(u1, u3)
    errs = []
    for r in (1 - 1e-3, 1 - 1e-4, 1 - 1e-5):
        U1, _, _, _ = components(sol(BPoint(r * np.cos(theta), r * np.sin(theta))))
        errs.append(np.max(np.abs(U1 - u1(theta))))
    assert errs[0] / errs[1] == pytest.approx(10, rel=0.02)
    assert errs[1] / errs[2] == pytest.approx(10, rel=0.02)


def test_outside_disk_rejected():
    with pytest.raises(DomainError):
        solve_13_disk(COS, SIN)(BPoint(0.8, 0.8))


# -- main biharmonic problem ---------------------------------------------------


def test_main_biharmonic_paraboloid(rng):
    x, y = interior_points(rng, 20, 1.0)
    V = solve_main_biharmonic(COS, SIN)
    assert np.max(np.abs(V.V(x, y) - (x**2 + y**2) / 2)) < 1e-14
    assert V.V(0.0, 0.0) == 0


def test_main_biharmonic_zero_and_constant():
    V = solve_main_biharmonic(ZERO_C, ZERO_C)
    assert V.V(0.3, -0.2) == 0
    V = solve_main_biharmonic(ONE, ZERO_C)
    assert V.V(0.3, -0.2) == pytest.approx(0.3, abs=1e-15)


def test_primitive_path_independence(rng):
    u1, u3 = solvable_pair(rng, 5)
    V = solve_main_biharmonic(u1, u3)
    x, y = interior_points(rng, 16, 0.9)
    radial = V.primitive(BPoint(x, y))
    stair = V.primitive(BPoint(x, y), path="staircase")
    assert np.max(norm(radial - stair)) < 1e-8


def test_main_biharmonic_unsolvable():
    with pytest.raises(Unsolvable):
        solve_main_biharmonic(ZERO_C, COS)
