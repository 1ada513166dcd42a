import numpy as np
import pytest

from grassmann_kit import grassmann as g
from grassmann_kit.charts import ChartBall, normal_coords, phi, psi
from grassmann_kit.exceptions import InvalidInputError, OutOfChartError
from grassmann_kit.projector import check_projector, from_onb
from grassmann_kit.stiefel import orthogonal_complement, random_stiefel


def test_phi_at_zero_is_center():
    np.testing.assert_array_equal(phi(np.zeros((3, 2))), np.diag([1.0, 1, 0, 0, 0]))


def test_phi_gr21():
    np.testing.assert_allclose(phi(np.array([[1.0]])), [[0.5, 0.5], [0.5, 0.5]], atol=1e-16)


def test_phi_projector_invariants(rng):
    P = phi(rng.standard_normal((4, 3)))
    assert np.linalg.norm(P @ P - P) <= 1e-12
    assert np.trace(P) == pytest.approx(3.0, abs=1e-12)
    check_projector(P)


def test_psi_of_center_is_zero():
    np.testing.assert_array_equal(psi(np.diag([1.0, 0.0, 0.0])), np.zeros((2, 1)))


@pytest.mark.parametrize("seed", range(10))
def test_round_trips(seed):
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((5, 2))
    B /= np.linalg.norm(B, 2)
    assert np.linalg.norm(psi(phi(B)) - B) <= 1e-10
    P = from_onb(random_stiefel(7, 2, rng))
    assert np.linalg.norm(phi(psi(P)) - P) <= 1e-10


def test_out_of_chart():
    with pytest.raises(OutOfChartError):
        psi(np.diag([0.0, 1.0]))


def test_chart_radius():
    chart = ChartBall(radius=1.0)
    with pytest.raises(InvalidInputError):
        phi(np.array([[2.0]]), chart)
    with pytest.raises(OutOfChartError):
        psi(phi(np.array([[2.0]])), chart)
    with pytest.raises(InvalidInputError):
        ChartBall(radius=0.0)


def test_moved_chart(rng):
    Q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    chart = ChartBall(Q=Q)
    B = rng.standard_normal((3, 2))
    np.testing.assert_allclose(phi(B, chart), Q @ phi(B) @ Q.T, atol=1e-12)
    np.testing.assert_allclose(phi(np.zeros((3, 2)), chart), chart.center(5, 2), atol=1e-14)
    np.testing.assert_allclose(psi(phi(B, chart), chart), B, atol=1e-10)
    with pytest.raises(InvalidInputError):
        ChartBall(Q=2 * np.eye(3))


def test_normal_coords(rng):
    U = random_stiefel(6, 2, rng)
    Up = orthogonal_complement(U)
    np.testing.assert_allclose(normal_coords(U, np.zeros((4, 2)), Up), from_onb(U), atol=1e-15)
    B = rng.standard_normal((4, 2))
    B *= 1.2 / np.linalg.norm(B, 2)
    Y = g.exp(U, Up @ B)
    np.testing.assert_allclose(normal_coords(U, B, Up), Y @ Y.T, atol=1e-12)
    np.testing.assert_allclose(Up.T @ g.log(U, Y), B, atol=1e-9)


def test_normal_coords_shape():
    with pytest.raises(InvalidInputError):
        normal_coords(np.eye(3)[:, :1], np.zeros((1, 1)))
