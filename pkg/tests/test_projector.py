import numpy as np
import pytest

from grassmann_kit import grassmann as g
from grassmann_kit import projector as pj
from grassmann_kit.exceptions import DomainError, InvalidInputError
from grassmann_kit.stiefel import orthogonal_complement, random_stiefel

from conftest import make_pair, proj


def test_from_onb_standard_point():
    P = pj.from_onb(np.eye(4)[:, :2])
    np.testing.assert_array_equal(P, np.diag([1.0, 1.0, 0.0, 0.0]))


@pytest.mark.parametrize("seed", range(5))
def test_onb_round_trip(seed):
    U = random_stiefel(7, 3, seed=seed)
    P = pj.from_onb(U)
    assert np.trace(P) == pytest.approx(3.0)
    Y = pj.to_onb(P)
    assert Y.shape == (7, 3)
    assert np.linalg.norm(pj.from_onb(Y) - P) <= 1e-10


def test_to_onb_rejects_non_projector():
    with pytest.raises(InvalidInputError):
        pj.to_onb(np.diag([1.0, 0.5, 0.0]))
    with pytest.raises(InvalidInputError):
        pj.check_projector(np.diag([1.0, 1.0 + 1e-6]))


def test_tangent_project_examples(rng):
    U = random_stiefel(6, 2, rng)
    P = pj.from_onb(U)
    np.testing.assert_allclose(pj.tangent_project(P, P), 0.0, atol=1e-15)
    S = rng.standard_normal((6, 6))
    S = S + S.T
    D = pj.tangent_project(P, S)
    np.testing.assert_allclose(D @ P + P @ D, D, atol=1e-12)
    np.testing.assert_allclose(pj.tangent_project(P, D), D, atol=1e-12)
    with pytest.raises(InvalidInputError):
        pj.tangent_project(P, rng.standard_normal((6, 6)))


def test_omega_block_form():
    # Delta = [[0, B^T], [B, 0]] at P0 gives Omega = [[0, -B^T], [B, 0]]
    B = np.array([[1.0, 2.0]])
    P = np.diag([1.0, 1.0, 0.0])
    Delta = np.block([[np.zeros((2, 2)), B.T], [B, np.zeros((1, 1))]])
    Omega = pj.omega_of(P, Delta)
    np.testing.assert_array_equal(Omega, np.block([[np.zeros((2, 2)), -B.T], [B, np.zeros((1, 1))]]))
    np.testing.assert_array_equal(pj.delta_of(P, Omega), Delta)


def test_omega_round_trip_random(rng):
    U, D = make_pair(3, 7, 3)
    P = pj.from_onb(U)
    Delta = g.ambient(U, D)
    Omega = pj.omega_of(P, Delta)
    np.testing.assert_allclose(Omega, -Omega.T, atol=0)
    np.testing.assert_allclose(Omega @ P + P @ Omega, Omega, atol=1e-12)
    np.testing.assert_allclose(pj.delta_of(P, Omega), Delta, atol=1e-12)


def test_exp_projector_gr21():
    P = np.diag([1.0, 0.0])
    Delta = np.array([[0.0, np.pi / 2], [np.pi / 2, 0.0]])
    np.testing.assert_allclose(pj.exp_projector(P, Delta), np.diag([0.0, 1.0]), atol=1e-15)
    np.testing.assert_array_equal(pj.exp_projector(P, Delta, 0.0), P)


@pytest.mark.parametrize("seed", range(10))
def test_exp_projector_matches_onb(seed):
    U, D = make_pair(seed, 8, 3, sigma1=1.4)
    P = pj.from_onb(U)
    F = pj.exp_projector(P, g.ambient(U, D), 0.9)
    assert np.linalg.norm(F - proj(g.exp(U, D, 0.9))) <= 1e-12
    pj.check_projector(F)


def test_log_projector_identity():
    P = pj.from_onb(random_stiefel(5, 2, seed=1))
    np.testing.assert_allclose(pj.log_projector(P, P), 0.0, atol=1e-14)


def test_log_projector_cut_pair():
    with pytest.raises(DomainError):
        pj.log_projector(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))


@pytest.mark.parametrize("seed", range(10))
def test_log_projector_matches_log_extended(seed):
    U, D = make_pair(seed, 8, 3, sigma1=1.3)
    P, F = pj.from_onb(U), proj(g.exp(U, D))
    Delta = pj.log_projector(P, F)
    np.testing.assert_allclose(Delta @ U, g.log(U, g.exp(U, D)), atol=1e-10)
    assert np.linalg.norm(pj.exp_projector(P, Delta) - F) <= 1e-10
    Omega = pj.omega_of(P, Delta)
    assert np.linalg.norm(Omega @ P + P @ Omega - Omega) <= 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_transport_projector_matches_onb(seed):
    U, G = make_pair(seed, 7, 2, sigma1=1.1)
    D = g.random_horizontal(U, np.random.default_rng(seed + 50))
    P = pj.from_onb(U)
    T = pj.parallel_transport_projector(P, g.ambient(U, D), g.ambient(U, G), 0.5)
    Y = g.exp(U, G, 0.5)
    np.testing.assert_allclose(T @ Y, g.parallel_transport(U, G, D, 0.5), atol=1e-12)
    F = proj(Y)
    np.testing.assert_allclose(T @ F + F @ T, T, atol=1e-12)


def test_transport_projector_self_parallel():
    U, G = make_pair(4, 6, 2, sigma1=1.0)
    P = pj.from_onb(U)
    A = g.ambient(U, G)
    t, h = 0.4, 1e-5
    fd = (pj.exp_projector(P, A, t + h) - pj.exp_projector(P, A, t - h)) / (2 * h)
    np.testing.assert_allclose(pj.parallel_transport_projector(P, A, A, t), fd, atol=1e-9)


def test_symmetry_at_standard_point():
    P0 = np.diag([1.0, 1.0, 0.0, 0.0])
    sigma = pj.symmetry_at(P0)
    np.testing.assert_array_equal(sigma(P0), P0)
    # the reflection S0 = diag(I, -I) flips the off-diagonal block of a tangent
    B = np.array([[1.0, 2.0], [3.0, 4.0]])
    Delta = np.block([[np.zeros((2, 2)), B.T], [B, np.zeros((2, 2))]])
    S0 = np.diag([1.0, 1.0, -1.0, -1.0])
    np.testing.assert_array_equal(S0 @ Delta @ S0, -Delta)


@pytest.mark.parametrize("seed", range(5))
def test_symmetry_properties(seed):
    U, D = make_pair(seed, 7, 3, sigma1=0.8)
    P = pj.from_onb(U)
    sigma = pj.symmetry_at(P)
    np.testing.assert_allclose(sigma(P), P, atol=1e-14)
    rng = np.random.default_rng(seed)
    F1, F2 = (pj.from_onb(random_stiefel(7, 3, rng)) for _ in range(2))
    np.testing.assert_allclose(sigma(sigma(F1)), F1, atol=1e-14)
    d = g.distance(pj.to_onb(F1), pj.to_onb(F2))
    ds = g.distance(pj.to_onb(sigma(F1)), pj.to_onb(sigma(F2)))
    assert abs(d - ds) <= 1e-10
    # differential: sigma(exp(t Delta)) = exp(-t Delta)
    A = g.ambient(U, D)
    h = 1e-5
    dsig = (sigma(pj.exp_projector(P, A, h)) - sigma(pj.exp_projector(P, A, -h))) / (2 * h)
    np.testing.assert_allclose(dsig, -A, atol=1e-9)


def test_exp_oracle_trivial_cases():
    U = np.eye(4)[:, :2]
    Up = np.eye(4)[:, 2:]
    B = np.array([[0.3, 0.0], [0.0, 0.2]])
    np.testing.assert_allclose(pj.exp_oracle_On(U, Up, B, 0.0), U, atol=0)
    np.testing.assert_allclose(pj.exp_oracle_On(U, Up, np.zeros((2, 2)), 5.0), U, atol=0)
    Y = pj.exp_oracle_On(U, Up, B)
    np.testing.assert_allclose(g.principal_angles(U, Y), [0.2, 0.3], atol=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_exp_oracle_matches_thin_svd(seed):
    U, D = make_pair(seed, 6, 2, sigma1=2.5)
    Up = orthogonal_complement(U)
    assert g.distance(pj.exp_oracle_On(U, Up, Up.T @ D), g.exp(U, D)) <= 1e-10


def test_curvature_projector_fixture(curvature_fixture):
    U, D1, D2 = curvature_fixture
    P = pj.from_onb(U)
    K = pj.sectional_curvature_projector(P, g.ambient(U, D1), g.ambient(U, D2))
    assert K == pytest.approx(2.0, abs=1e-14)


def test_curvature_projector_gr31(rng):
    U = random_stiefel(3, 1, rng)
    D1, D2 = g.random_horizontal(U, rng), g.random_horizontal(U, rng)
    K = pj.sectional_curvature_projector(pj.from_onb(U), g.ambient(U, D1), g.ambient(U, D2))
    assert K == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("seed", range(10))
def test_curvature_projector_matches_onb(seed):
    U, D1 = make_pair(seed, 7, 3)
    D2 = g.random_horizontal(U, np.random.default_rng(seed + 9))
    K = g.sectional_curvature(U, D1, D2)
    Kp = pj.sectional_curvature_projector(pj.from_onb(U), g.ambient(U, D1), g.ambient(U, D2))
    assert abs(K - Kp) <= 1e-10


def test_curvature_projector_degenerate():
    U, D = make_pair(1, 5, 2)
    A = g.ambient(U, D)
    with pytest.raises(InvalidInputError):
        pj.sectional_curvature_projector(pj.from_onb(U), A, -2 * A)
