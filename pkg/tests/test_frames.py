import numpy as np
import pytest

from algebra.algebra import ad_of, bracket
from frames.frames import (Chart, GroupPoint, adjoint_at, frame_first, frame_second, omega_first, omega_second,
                           xi_second)
from numerics.errors import ChartExitError, InvalidInputError
from numerics.numerics import mat_exp
from tests import oracles

STEP = 1e-5


def _derivative(f, x, j):
    e = np.zeros_like(x)
    e[j] = STEP
    return (f(x + e) - f(x - e)) / (2 * STEP)


def _fields(alg, kind):
    if kind == "xi":
        return lambda x: xi_second(alg, GroupPoint.second(x))
    return lambda x: frame_second(alg, GroupPoint.second(x)).eta


def _commutator(F, G, x, i, j):
    """[X, Y]^a = X^b ∂_b Y^a − Y^b ∂_b X^a for X = column i of F, Y = column j of G."""
    X, Y = F(x)[:, i], G(x)[:, j]
    dY = np.column_stack([_derivative(lambda p: G(p)[:, j], x, b) for b in range(len(x))])
    dX = np.column_stack([_derivative(lambda p: F(p)[:, i], x, b) for b in range(len(x))])
    return dY @ X - dX @ Y


def test_six_dimensional_frames_match_closed_forms(nil6, rng):
    for _ in range(200):
        x = rng.uniform(-0.5, 0.5, 6)
        frame = frame_second(nil6, GroupPoint.second(x))
        assert np.allclose(frame.omega, oracles.nil6_omega(x), atol=1e-9, rtol=0)
        assert np.allclose(frame.xi, oracles.nil6_xi(x), atol=1e-9, rtol=0)
        assert np.allclose(frame.eta, oracles.nil6_eta(x), atol=1e-9, rtol=0)


def test_six_dimensional_spot_value(nil6):
    x = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 0.0])
    assert np.isclose(omega_second(nil6, GroupPoint.second(x))[4, 4], np.exp(2.0), rtol=1e-14)


def test_frames_at_origin(catalog_alg):
    frame = frame_second(catalog_alg, GroupPoint.second(np.zeros(catalog_alg.dim)))
    n = catalog_alg.dim
    assert np.allclose(frame.omega, np.eye(n))
    assert np.allclose(frame.xi, np.eye(n))
    assert np.allclose(frame.sigma, -np.eye(n))
    assert np.allclose(frame.eta, -np.eye(n))


def test_frame_identities(catalog_alg, rng):
    n = catalog_alg.dim
    for _ in range(20):
        x = rng.uniform(-0.5, 0.5, n)
        frame = frame_second(catalog_alg, GroupPoint.second(x))
        assert np.allclose(frame.xi @ frame.omega, np.eye(n), atol=1e-12)
        assert np.allclose(frame.eta @ frame.sigma, np.eye(n), atol=1e-12)
        assert np.allclose(-frame.sigma @ frame.xi, frame.ad_point, atol=1e-12)
        # ξ_1 = ∂/∂x¹ for the rightmost exponential factor
        assert np.allclose(frame.xi[:, 0], np.eye(n)[0], atol=1e-14)


def test_frames_do_not_depend_on_central_or_last_coordinate(nil6, rng):
    x = rng.uniform(-0.5, 0.5, 6)
    base = frame_second(nil6, GroupPoint.second(x))
    moved = x.copy()
    moved[5] += 0.7
    other = frame_second(nil6, GroupPoint.second(moved))
    assert np.allclose(base.omega, other.omega, atol=1e-14)
    assert np.allclose(base.xi, other.xi, atol=1e-14)


def test_adjoint_preserves_brackets(catalog_alg, rng):
    x = rng.uniform(-0.5, 0.5, catalog_alg.dim)
    u, v = rng.standard_normal((2, catalog_alg.dim))
    Ad = adjoint_at(catalog_alg, GroupPoint.second(x))
    assert np.allclose(Ad @ bracket(catalog_alg, u, v), bracket(catalog_alg, Ad @ u, Ad @ v), atol=1e-11)


def test_heisenberg_first_chart_forms_are_affine(heisenberg, rng):
    # ad_x squares to zero, so Ω(ad_x) stops at the linear term
    for _ in range(5):
        x = rng.uniform(-2, 2, 3)
        expected = np.eye(3) - 0.5 * ad_of(heisenberg, x)
        assert np.allclose(omega_first(heisenberg, GroupPoint.first(x)), expected, atol=1e-13)


def test_heisenberg_frame(heisenberg):
    x = np.array([0.4, -0.3, 0.2])
    frame = frame_second(heisenberg, GroupPoint.second(x))
    assert np.allclose(frame.omega[:, 1], [0.0, 1.0, -0.4])
    assert np.allclose(frame.xi[:, 1], [0.0, 1.0, 0.4])
    assert np.allclose(frame.eta, -np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-0.3, 0.0, 1.0]]))


def test_adjoint_ordering(so3):
    x = np.array([0.2, -0.4, 0.3])
    expected = np.eye(3)
    for k in range(3):
        expected = mat_exp(x[k] * so3.ad_basis[k]) @ expected
    assert np.allclose(adjoint_at(so3, GroupPoint.second(x)), expected)


@pytest.mark.parametrize("key_fixture", ["so3", "nil6", "poincare", "heisenberg"])
def test_maurer_cartan(key_fixture, request, rng):
    alg = request.getfixturevalue(key_fixture)
    n = alg.dim
    omega = lambda p: omega_second(alg, GroupPoint.second(p))
    for _ in range(3):
        x = rng.uniform(-0.4, 0.4, n)
        w = omega(x)
        d = [_derivative(omega, x, j) for j in range(n)]
        for j in range(n):
            for k in range(j + 1, n):
                lhs = d[j][:, k] - d[k][:, j]
                rhs = -np.einsum("ilm,l,m->i", alg.tensor, w[:, j], w[:, k])
                assert np.allclose(lhs, rhs, atol=1e-6)


@pytest.mark.parametrize("key_fixture", ["so3", "nil6", "poincare"])
def test_field_commutators(key_fixture, request, rng):
    alg = request.getfixturevalue(key_fixture)
    n = alg.dim
    xi, eta = _fields(alg, "xi"), _fields(alg, "eta")
    x = rng.uniform(-0.3, 0.3, n)
    XI, ETA = xi(x), eta(x)
    for i in range(n):
        for j in range(i + 1, n):
            assert np.allclose(_commutator(xi, xi, x, i, j), XI @ alg.tensor[:, i, j], atol=1e-6)
            assert np.allclose(_commutator(eta, eta, x, i, j), ETA @ alg.tensor[:, i, j], atol=1e-6)
        for j in range(n):
            assert np.allclose(_commutator(xi, eta, x, i, j), 0.0, atol=1e-6)


def test_first_chart_frame(so3, nil6, rng):
    for alg in (so3, nil6):
        y = rng.uniform(-0.4, 0.4, alg.dim)
        frame = frame_first(alg, GroupPoint.first(y))
        assert np.allclose(frame.ad_point, mat_exp(ad_of(alg, y)))
        assert np.allclose(frame.omega, omega_first(alg, GroupPoint.first(y)))
        # ω(y)·y = y in first canonical coordinates
        assert np.allclose(frame.omega @ y, y, atol=1e-13)
        assert np.allclose(-frame.sigma @ frame.xi, frame.ad_point, atol=1e-12)


def test_degenerate_frame_is_chart_exit(nil6):
    x = np.array([0.0, 0.0, 0.0, -20.0, 0.0, 0.0])
    with pytest.raises(ChartExitError):
        frame_second(nil6, GroupPoint.second(x))


def test_point_chart_and_dimension_checks(so3):
    with pytest.raises(InvalidInputError):
        frame_second(so3, GroupPoint.first(np.zeros(3)))
    with pytest.raises(InvalidInputError):
        adjoint_at(so3, GroupPoint.second(np.zeros(4)))
    p = GroupPoint.second([1.0, 2.0, 3.0])
    assert p.chart is Chart.SECOND
    assert not p.coords.flags.writeable
