import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from biharm import (
    E1,
    E2,
    RHO,
    ZERO,
    BNumber,
    BPoint,
    ZeroDivisor,
    add,
    components,
    embed,
    from_canonical,
    from_components,
    inv,
    is_zero_divisor,
    mul,
    norm,
    to_canonical,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
bnums = st.builds(BNumber, cplx, cplx)


def close(a, b, tol=1e-12):
    return float(np.max(norm(a - b))) <= tol * max(1.0, float(np.max(norm(a))), float(np.max(norm(b))))


# -- multiplication table ---------------------------------------------------


def test_table():
    assert close(mul(E1, E1), E1, 0)
    assert close(mul(E1, E2), E2, 0)
    assert close(mul(E2, E2), E1 + 2j * E2, 0)


def test_biharmonic_basis_relation():
    s = mul(E1, E1) + mul(E2, E2)
    assert norm(mul(s, s)) == 0
    assert norm(s) > 0


def test_radical_is_nilpotent():
    assert norm(mul(RHO, RHO)) == 0
    assert close(RHO, 2 * E1 + 2j * E2, 0)


def test_product_against_structure_constants():
    # independent oracle: 2x2 complex matrices of the regular representation
    def mat(a):
        return np.array([[a.z1, a.z2], [a.z2, a.z1 + 2j * a.z2]])

    rng = np.random.default_rng(1)
    for _ in range(20):
        a = BNumber(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
        b = BNumber(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
        got = mat(mul(a, b))
        assert np.allclose(got, mat(a) @ mat(b), atol=1e-13)


def test_operator_forms_match_functions():
    a, b = BNumber(1 + 2j, -0.5j), BNumber(0.3, 2 - 1j)
    assert close(a + b, add(a, b), 0)
    assert close(a * b, mul(a, b), 0)
    assert close(a / b, mul(a, inv(b)))
    assert close(a**3, mul(a, mul(a, a)))


# -- canonical form and inverse ---------------------------------------------


def test_canonical_coordinates():
    alpha, beta = to_canonical(E2)
    assert alpha == 1j and beta == -0.5j
    assert close(from_canonical(alpha, beta), E2, 0)
    assert to_canonical(RHO) == (0, 1)


def test_inverse_examples():
    assert close(inv(E1), E1, 0)
    # e2 (e2 - 2i e1) = e1
    assert close(inv(E2), E2 - 2j * E1)
    assert close(mul(2 * E1 + E2, inv(2 * E1 + E2)), E1)


def test_inverse_of_zero_divisor_raises():
    with pytest.raises(ZeroDivisor):
        inv(RHO)
    with pytest.raises(ZeroDivisor):
        inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        inv(3j * RHO)


def test_zero_divisor_classification():
    assert is_zero_divisor(RHO)
    assert is_zero_divisor((1 - 2j) * RHO)
    assert not is_zero_divisor(ZERO)
    assert not is_zero_divisor(E1)
    assert not is_zero_divisor(RHO + 1e-6 * E1)


def test_plane_has_no_zero_divisors():
    rng = np.random.default_rng(3)
    x, y = rng.normal(size=(2, 500))
    assert not np.any(is_zero_divisor(embed(BPoint(x, y))))


@given(bnums, bnums, bnums)
def test_ring_axioms(a, b, c):
    assert close(mul(a, b), mul(b, a), 1e-13)
    assert close(mul(mul(a, b), c), mul(a, mul(b, c)), 1e-11)
    assert close(mul(a, b + c), mul(a, b) + mul(a, c), 1e-11)


@given(bnums)
def test_inverse_roundtrip(a):
    alpha, _ = to_canonical(a)
    if abs(alpha) < 1e-3 * max(1.0, float(norm(a))):
        return
    assert close(mul(a, inv(a)), E1, 1e-9)


@given(cplx, cplx)
def test_canonical_roundtrip(z1, z2):
    a = BNumber(z1, z2)
    assert close(from_canonical(*to_canonical(a)), a, 1e-15)


@given(finite, finite)
def test_plane_element_invertible(x, y):
    if x == 0 and y == 0:
        return
    z = embed(BPoint(x, y))
    assert not is_zero_divisor(z)
    assert close(mul(z, inv(z)), E1, 1e-9)


def test_components_roundtrip():
    a = BNumber(1.5 - 2j, 0.25 + 3j)
    u = components(a)
    assert u == (1.5, -2.0, 0.25, 3.0)
    assert close(from_components(*u), a, 0)


def test_vectorised_values():
    x = np.linspace(0.1, 1, 5)
    z = BNumber(x, x)
    assert z.shape == (5,)
    w = mul(z, inv(z))
    assert np.allclose(w.z1, 1) and np.allclose(w.z2, 0, atol=1e-15)
    assert close(z[2], BNumber(x[2], x[2]), 0)
    # ndarray on the left must defer to BNumber
    assert (x * E2).shape == (5,)


def test_bnumber_is_immutable():
    z = BNumber(np.arange(3.0), np.zeros(3))
    with pytest.raises((AttributeError, TypeError)):
        z.z1 = 0
    with pytest.raises(ValueError):
        z.z1[0] = 5
