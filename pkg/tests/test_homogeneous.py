import numpy as np
import pytest

from algebra.models import LieAlgebra
from cli.loader import load_algebra
from composition.composition import compose
from frames.frames import GroupPoint, xi_second
from homogeneous.homogeneous import action, adapted_basis, generators, lift_point, subalgebra
from numerics.errors import InvalidInputError, InvalidSubalgebraError
from tests import oracles

E6 = np.eye(6)
ADAPTED_ORDER = [0, 1, 2, 5, 3, 4]


@pytest.fixture(scope="module")
def nil6_model(nil6):
    return adapted_basis(nil6, subalgebra(nil6, [E6[3], E6[4]]))


@pytest.fixture(scope="module")
def poincare_model():
    alg = load_algebra("poincare-sub", {"alpha": 1.0})
    return adapted_basis(alg, subalgebra(alg, [[0.0, 0.0, 1.0, 2.0]]))


def _adapted(z):
    return GroupPoint.second(np.asarray(z, dtype=float)[ADAPTED_ORDER])


def test_subalgebra_checks(nil6, so3):
    h = subalgebra(nil6, [E6[3], E6[4]])
    assert h.dim == 2
    assert h.closure_residual <= 1e-12
    with pytest.raises(InvalidSubalgebraError):
        subalgebra(nil6, [E6[3], 2.0 * E6[3]])
    with pytest.raises(InvalidSubalgebraError):
        subalgebra(nil6, [E6[2], E6[4]])
    with pytest.raises(InvalidSubalgebraError):
        subalgebra(so3, list(np.eye(3)))
    with pytest.raises(InvalidInputError):
        subalgebra(so3, [[1.0, 0.0]])


def test_trivial_subalgebra_is_the_group(heisenberg, rng, cfg):
    model = adapted_basis(heisenberg, subalgebra(heisenberg, []))
    assert model.m == 3
    assert model.adapted is heisenberg
    q, z = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
    psi = action(model, q, GroupPoint.second(z), cfg).psi
    assert np.allclose(psi, oracles.heisenberg_compose(q, z), atol=1e-10)
    assert np.array_equal(lift_point(model, GroupPoint.second(z), cfg).coords, z)


def test_six_dimensional_adapted_basis(nil6_model):
    assert nil6_model.m == 4
    assert np.array_equal(nil6_model.transform, E6[:, ADAPTED_ORDER])
    assert isinstance(nil6_model.adapted, LieAlgebra)
    assert nil6_model.adapted.center_indices == (3,)


def test_six_dimensional_generators(nil6_model, rng, cfg):
    for _ in range(20):
        q = rng.uniform(-1, 1, 4)
        assert np.allclose(generators(nil6_model, q, cfg), oracles.nil6_generators(q), atol=1e-12)


def test_poincare_generators(poincare_model, rng, cfg):
    assert poincare_model.m == 3
    assert np.allclose(poincare_model.transform[:, 3], [0.0, 0.0, 1.0, 2.0])
    for _ in range(20):
        q = rng.uniform(-1, 1, 3)
        assert np.allclose(generators(poincare_model, q, cfg), oracles.poincare_generators(q, 1.0, 2.0),
                           atol=1e-12)


def test_poincare_fields(poincare_model, rng):
    q1, q2, q3, y = rng.uniform(-1, 1, 4)
    xi = xi_second(poincare_model.adapted, GroupPoint.second([q1, q2, q3, y]))
    expected = oracles.poincare_xi(q1, q2, q3, y, 1.0, 2.0)
    assert np.allclose(xi @ np.linalg.inv(poincare_model.transform), expected, atol=1e-12)


@pytest.mark.parametrize("count", [10, pytest.param(100, marks=pytest.mark.slow)])
def test_six_dimensional_action(nil6_model, rng, cfg, count):
    for _ in range(count):
        q, z = rng.uniform(-0.3, 0.3, 4), rng.uniform(-0.3, 0.3, 6)
        result = action(nil6_model, q, _adapted(z), cfg)
        assert np.allclose(result.psi, oracles.nil6_action(q, z), atol=1e-8, rtol=0)
        assert result.factor.shape == (2,)


def test_action_spot_value_and_identity(nil6_model, cfg):
    psi = action(nil6_model, [0.0, 0.0, 1.0, 0.0], _adapted(E6[3]), cfg).psi
    assert abs(psi[2] - np.exp(-2.0)) <= 1e-10
    q = np.array([0.3, -0.2, 0.5, 1.0])
    assert np.array_equal(action(nil6_model, q, GroupPoint.second(np.zeros(6)), cfg).psi, q)


def test_action_law(nil6_model, rng, cfg):
    q = rng.uniform(-0.3, 0.3, 4)
    z1, z2 = _adapted(rng.uniform(-0.2, 0.2, 6)), _adapted(rng.uniform(-0.2, 0.2, 6))
    stepwise = action(nil6_model, action(nil6_model, q, z1, cfg).psi, z2, cfg).psi
    product = compose(nil6_model.adapted, z1, z2, cfg).z
    assert np.allclose(stepwise, action(nil6_model, q, product, cfg).psi, atol=1e-8, rtol=0)


def test_action_is_transitive(nil6_model, poincare_model, rng, cfg):
    for model in (nil6_model, poincare_model):
        X = generators(model, rng.uniform(-1, 1, model.m), cfg)
        assert np.linalg.matrix_rank(X) == model.m


@pytest.mark.parametrize("which", ["nil6_model", "poincare_model"])
def test_generator_commutators(which, request, rng, cfg):
    model = request.getfixturevalue(which)
    h = 1e-5
    q = rng.uniform(-0.5, 0.5, model.m)

    def derivative(i):
        cols = []
        for b in range(model.m):
            e = np.zeros(model.m)
            e[b] = h
            cols.append((generators(model, q + e, cfg)[:, i] - generators(model, q - e, cfg)[:, i]) / (2 * h))
        return np.column_stack(cols)

    X = generators(model, q, cfg)
    n = model.source.dim
    dX = [derivative(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            commutator = dX[j] @ X[:, i] - dX[i] @ X[:, j]
            assert np.allclose(commutator, X @ model.source.tensor[:, i, j], atol=1e-6)


def test_coset_rows_ignore_isotropy_coordinates(nil6_model, rng):
    q = rng.uniform(-1, 1, 4)
    base = xi_second(nil6_model.adapted, GroupPoint.second(np.concatenate([q, [0.0, 0.0]])))
    moved = xi_second(nil6_model.adapted, GroupPoint.second(np.concatenate([q, rng.uniform(-1, 1, 2)])))
    assert np.allclose(base[:4], moved[:4], atol=1e-12)


def test_lift_point(nil6_model, poincare_model, rng, cfg):
    z = rng.uniform(-0.3, 0.3, 6)
    lifted = lift_point(nil6_model, GroupPoint.second(z), cfg)
    assert np.allclose(lifted.coords, z[ADAPTED_ORDER], atol=1e-9)

    z = rng.uniform(-0.3, 0.3, 4)
    lifted = lift_point(poincare_model, GroupPoint.second(z), cfg)
    psi = action(poincare_model, np.zeros(3), lifted, cfg).psi
    assert np.allclose(psi[:2], z[:2], atol=1e-9)
