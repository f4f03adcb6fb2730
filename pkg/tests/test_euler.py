import numpy as np
import pytest

from aweno.errors import ConfigurationError, DecompositionError, PhysicalStateError
from aweno.euler import (
    GasParams,
    cons_to_prim,
    eigenvalues_x,
    eigenvalues_y,
    flux_jacobian_x,
    lcd_basis,
    physical_flux_x,
    physical_flux_y,
    prim_to_cons,
)

GAS = GasParams(1.4)


def random_states(rng, n, d):
    w = np.empty((n, d))
    w[:, 0] = rng.uniform(0.1, 5.0, n)  # rho
    w[:, 1] = rng.uniform(-3.0, 3.0, n)  # u
    if d == 4:
        w[:, 2] = rng.uniform(-3.0, 3.0, n)  # v
    w[:, -1] = rng.uniform(0.05, 10.0, n)  # p
    return prim_to_cons(w, GAS)


def test_gamma_must_exceed_one():
    with pytest.raises(ConfigurationError):
        GasParams(1.0)


@pytest.mark.parametrize(
    "prim,cons",
    [
        ((1.0, 0.0, 1.0), (1.0, 0.0, 2.5)),
        ((0.125, 0.0, 0.1), (0.125, 0.0, 0.25)),
        ((1.5, 0.0, 0.0, 1.5), (1.5, 0.0, 0.0, 3.75)),
    ],
)
def test_prim_to_cons_known_values(prim, cons):
    assert np.allclose(prim_to_cons(np.array(prim), GAS), cons, rtol=0, atol=1e-15)


@pytest.mark.parametrize("d", [3, 4])
def test_round_trip_identity(d):
    rng = np.random.default_rng(42)
    u = random_states(rng, 500, d)
    w = cons_to_prim(u, GAS)
    back = prim_to_cons(w, GAS)
    assert np.allclose(back, u, rtol=1e-14, atol=1e-14)


def test_cons_to_prim_rejects_bad_states():
    with pytest.raises(PhysicalStateError):
        cons_to_prim(np.array([-1.0, 0.0, 2.5]), GAS)
    with pytest.raises(PhysicalStateError):
        cons_to_prim(np.array([1.0, 10.0, 2.5]), GAS)  # negative internal energy


def test_flux_rest_state():
    f = physical_flux_x(np.array([1.0, 0.0, 2.5]), GAS)
    assert np.allclose(f, [0.0, 1.0, 0.0])


def test_flux_hand_value():
    f = physical_flux_x(np.array([1.0, 1.0, 3.0]), GAS)
    assert np.allclose(f, [1.0, 2.0, 4.0])


def test_flux_2d_rest_state():
    u = np.array([1.0, 0.0, 0.0, 2.5])
    assert np.allclose(physical_flux_x(u, GAS), [0.0, 1.0, 0.0, 0.0])
    assert np.allclose(physical_flux_y(u, GAS), [0.0, 0.0, 1.0, 0.0])


def test_eigenvalues_rest_state():
    lam = eigenvalues_x(np.array([1.0, 0.0, 2.5]), GAS)
    c = np.sqrt(1.4)
    assert np.allclose(lam, [-c, 0.0, c])
    assert lam[0] == pytest.approx(-lam[2])


def test_eigenvalues_shift_with_velocity():
    u = prim_to_cons(np.array([1.0, 2.0, 1.0 / 1.4]), GAS)  # c = 1
    lam = eigenvalues_x(u, GAS)
    assert np.allclose(lam, [1.0, 2.0, 3.0], rtol=1e-12)


@pytest.mark.parametrize("d", [3, 4])
def test_eigenvalues_sorted_ascending(d):
    rng = np.random.default_rng(1)
    u = random_states(rng, 200, d)
    lam = eigenvalues_x(u, GAS)
    assert np.all(np.diff(lam, axis=-1) >= 0)


def test_eigenvalues_y_uses_v():
    u = prim_to_cons(np.array([1.0, 0.5, 2.0, 1.0 / 1.4]), GAS)
    lam = eigenvalues_y(u, GAS)
    assert np.allclose(lam, [1.0, 2.0, 2.0, 3.0], rtol=1e-12)


@pytest.mark.parametrize("d", [3, 4])
def test_jacobian_matches_finite_differences(d):
    rng = np.random.default_rng(9)
    u = random_states(rng, 50, d)
    a = flux_jacobian_x(u, GAS)
    eps = 1e-6
    for i in range(d):
        du = np.zeros(d)
        du[i] = eps
        fd = (physical_flux_x(u + du, GAS) - physical_flux_x(u - du, GAS)) / (2 * eps)
        assert np.allclose(a[..., :, i], fd, rtol=5e-8, atol=5e-8)


@pytest.mark.parametrize("d", [3, 4])
def test_lcd_basis_invariants_random_pairs(d):
    rng = np.random.default_rng(123)
    ul = random_states(rng, 1000, d)
    ur = random_states(rng, 1000, d)
    basis = lcd_basis(ul, ur, GAS)
    eye = np.eye(d)
    prod = basis.eigvecs @ basis.eigvecs_inv
    assert np.max(np.abs(prod - eye)) < 1e-12
    a = flux_jacobian_x(basis.avg_state, GAS)
    sim = basis.eigvecs_inv @ a @ basis.eigvecs
    lam = eigenvalues_x(basis.avg_state, GAS)
    anorm = np.abs(a).max(axis=(-2, -1))
    offdiag = sim - lam[..., None] * np.eye(d)
    assert np.max(np.abs(offdiag) / anorm[..., None, None]) < 1e-10


def test_lcd_basis_identical_states_diagonalizes_exactly():
    u = prim_to_cons(np.array([1.0, 0.7, 1.3]), GAS)
    basis = lcd_basis(u, u, GAS)
    assert np.allclose(basis.avg_state, u, rtol=0, atol=0)
    a = flux_jacobian_x(u, GAS)
    sim = basis.eigvecs_inv @ a @ basis.eigvecs
    lam = eigenvalues_x(u, GAS)
    assert np.allclose(sim, np.diag(lam), atol=1e-13)


def test_lcd_basis_sod_interface_diagonal_entries():
    ul = np.array([1.0, 0.0, 2.5])
    ur = np.array([0.125, 0.0, 0.25])
    basis = lcd_basis(ul, ur, GAS)
    a = flux_jacobian_x(basis.avg_state, GAS)
    sim = basis.eigvecs_inv @ a @ basis.eigvecs
    lam = eigenvalues_x(basis.avg_state, GAS)
    # independent oracle: numerical eigendecomposition of the averaged Jacobian
    lam_oracle = np.sort(np.linalg.eigvals(a).real)
    assert np.allclose(lam, lam_oracle, rtol=1e-12, atol=1e-12)
    assert np.allclose(np.diagonal(sim), lam, rtol=1e-10, atol=1e-10)


def test_lcd_basis_rejects_inadmissible_average():
    ul = np.array([1.0, 4.0, 2.5])  # huge kinetic energy
    ur = np.array([1.0, 4.0, 2.5])
    with pytest.raises(DecompositionError):
        lcd_basis(ul, ur, GAS)
