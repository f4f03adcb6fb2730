"""Euler-equation physics: state conversions, fluxes, and eigenstructure.

All functions are vectorized over arbitrary leading axes with the component
axis last: 3 components ``(rho, rho*u, E)`` in 1-D and 4 components
``(rho, rho*u, rho*v, E)`` in 2-D.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DecompositionError, PhysicalStateError


@dataclass(frozen=True)
class GasParams:
    """Ideal-gas parameters; ``gamma`` is the specific heat ratio."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ConfigurationError(f"gamma={self.gamma} must exceed 1")


def _bad_locations(mask: np.ndarray):
    idx = np.argwhere(mask)
    head = [tuple(int(i) for i in row) for row in idx[:3]]
    return f"{head}{'...' if len(idx) > 3 else ''}"


def prim_to_cons(w: np.ndarray, gas: GasParams) -> np.ndarray:
    """Map primitive ``(rho, u[, v], p)`` to conserved variables."""
    w = np.asarray(w, dtype=float)
    u = np.empty_like(w)
    rho = w[..., 0]
    p = w[..., -1]
    u[..., 0] = rho
    if w.shape[-1] == 3:
        u[..., 1] = rho * w[..., 1]
        u[..., 2] = p / (gas.gamma - 1.0) + 0.5 * rho * w[..., 1] ** 2
    else:
        u[..., 1] = rho * w[..., 1]
        u[..., 2] = rho * w[..., 2]
        u[..., 3] = p / (gas.gamma - 1.0) + 0.5 * rho * (
            w[..., 1] ** 2 + w[..., 2] ** 2
        )
    return u


def pressure(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Pressure from conserved variables (no positivity check)."""
    u = np.asarray(u)
    rho = u[..., 0]
    if u.shape[-1] == 3:
        kinetic = 0.5 * u[..., 1] ** 2 / rho
    else:
        kinetic = 0.5 * (u[..., 1] ** 2 + u[..., 2] ** 2) / rho
    return (gas.gamma - 1.0) * (u[..., -1] - kinetic)


def validate_states(u: np.ndarray, gas: GasParams, context: str = "state") -> None:
    """Raise :class:`PhysicalStateError` if any state has rho<=0 or p<=0."""
    rho = u[..., 0]
    if not np.all(rho > 0.0):
        raise PhysicalStateError(
            f"nonpositive density in {context}", _bad_locations(~(rho > 0.0))
        )
    p = pressure(u, gas)
    if not np.all(p > 0.0):
        raise PhysicalStateError(
            f"nonpositive pressure in {context}", _bad_locations(~(p > 0.0))
        )


def cons_to_prim(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Map conserved variables to primitive ``(rho, u[, v], p)``.

    Raises :class:`PhysicalStateError` for nonpositive density or pressure.
    """
    u = np.asarray(u, dtype=float)
    validate_states(u, gas)
    w = np.empty_like(u)
    rho = u[..., 0]
    w[..., 0] = rho
    w[..., 1] = u[..., 1] / rho
    if u.shape[-1] == 4:
        w[..., 2] = u[..., 2] / rho
    w[..., -1] = pressure(u, gas)
    return w


def sound_speed(u: np.ndarray, gas: GasParams) -> np.ndarray:
    return np.sqrt(gas.gamma * pressure(u, gas) / u[..., 0])


def physical_flux_x(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """x-direction flux of the conserved variables."""
    u = np.asarray(u, dtype=float)
    f = np.empty_like(u)
    rho = u[..., 0]
    m = u[..., 1]
    vel = m / rho
    p = pressure(u, gas)
    f[..., 0] = m
    f[..., 1] = m * vel + p
    if u.shape[-1] == 4:
        f[..., 2] = u[..., 2] * vel
    f[..., -1] = vel * (u[..., -1] + p)
    return f


def physical_flux_y(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """y-direction flux; defined for 4-component states only."""
    u = np.asarray(u, dtype=float)
    f = np.empty_like(u)
    rho = u[..., 0]
    n = u[..., 2]
    vel = n / rho
    p = pressure(u, gas)
    f[..., 0] = n
    f[..., 1] = u[..., 1] * vel
    f[..., 2] = n * vel + p
    f[..., 3] = vel * (u[..., 3] + p)
    return f


def eigenvalues_x(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Eigenvalues of the x-flux Jacobian, ascending.

    ``(u-c, u, u+c)`` in 1-D; the middle eigenvalue has multiplicity two in
    2-D: ``(u-c, u, u, u+c)``.
    """
    u = np.asarray(u)
    rho = u[..., 0]
    p = pressure(u, gas)
    if not (np.all(rho > 0.0) and np.all(p > 0.0)):
        raise PhysicalStateError("eigenvalues of an inadmissible state")
    vel = u[..., 1] / rho
    c = np.sqrt(gas.gamma * p / rho)
    lam = np.empty(u.shape)
    lam[..., 0] = vel - c
    lam[..., 1] = vel
    if u.shape[-1] == 4:
        lam[..., 2] = vel
    lam[..., -1] = vel + c
    return lam


def eigenvalues_y(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Eigenvalues of the y-flux Jacobian, ascending (4 components)."""
    return eigenvalues_x(swap_velocity_components(u), gas)


def swap_velocity_components(u: np.ndarray) -> np.ndarray:
    """Exchange the two momentum components of a 4-component state.

    The y-direction physics of ``(rho, m, n, E)`` equals the x-direction
    physics of ``(rho, n, m, E)`` with the momentum slots of the result
    swapped back, which lets every kernel be written for the x-direction.
    """
    return np.ascontiguousarray(u[..., (0, 2, 1, 3)])


def flux_jacobian_x(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Analytic Jacobian of :func:`physical_flux_x` (components-last layout)."""
    u = np.asarray(u, dtype=float)
    d = u.shape[-1]
    g = gas.gamma
    rho = u[..., 0]
    vel = u[..., 1] / rho
    a = np.zeros(u.shape + (d,))
    if d == 3:
        e = u[..., 2]
        h = (e + pressure(u, gas)) / rho
        a[..., 0, 1] = 1.0
        a[..., 1, 0] = 0.5 * (g - 3.0) * vel**2
        a[..., 1, 1] = (3.0 - g) * vel
        a[..., 1, 2] = g - 1.0
        a[..., 2, 0] = (g - 1.0) * vel**3 - g * vel * e / rho
        a[..., 2, 1] = h - (g - 1.0) * vel**2
        a[..., 2, 2] = g * vel
        return a
    w = u[..., 2] / rho
    e = u[..., 3]
    h = (e + pressure(u, gas)) / rho
    q2 = vel**2 + w**2
    a[..., 0, 1] = 1.0
    a[..., 1, 0] = 0.5 * (g - 1.0) * q2 - vel**2
    a[..., 1, 1] = (3.0 - g) * vel
    a[..., 1, 2] = -(g - 1.0) * w
    a[..., 1, 3] = g - 1.0
    a[..., 2, 0] = -vel * w
    a[..., 2, 1] = w
    a[..., 2, 2] = vel
    a[..., 3, 0] = 0.5 * (g - 1.0) * vel * q2 - vel * h
    a[..., 3, 1] = h - (g - 1.0) * vel**2
    a[..., 3, 2] = -(g - 1.0) * vel * w
    a[..., 3, 3] = g * vel
    return a


def lcd_matrices(u_avg: np.ndarray, gas: GasParams):
    """Right-eigenvector matrix of the x-flux Jacobian and its inverse.

    Columns of the first matrix are right eigenvectors in ascending
    eigenvalue order.  Normalization: the acoustic and entropy eigenvectors
    carry a leading 1; the 2-D shear eigenvector (paired with the repeated
    middle eigenvalue, ordered before the entropy one) is ``(0, 0, 1, v)``.
    """
    u_avg = np.asarray(u_avg, dtype=float)
    d = u_avg.shape[-1]
    rho = u_avg[..., 0]
    p = pressure(u_avg, gas)
    if not (np.all(rho > 0.0) and np.all(p > 0.0)):
        raise DecompositionError(
            "inadmissible interface-averaged state",
            _bad_locations(~((rho > 0.0) & (p > 0.0))),
        )
    vel = u_avg[..., 1] / rho
    c = np.sqrt(gas.gamma * p / rho)
    h = (u_avg[..., -1] + p) / rho
    b1 = (gas.gamma - 1.0) / c**2
    r = np.empty(u_avg.shape + (d,))
    li = np.empty_like(r)
    if d == 3:
        ke = 0.5 * vel**2
        b2 = ke * b1
        r[..., 0, :] = 1.0
        r[..., 1, 0] = vel - c
        r[..., 1, 1] = vel
        r[..., 1, 2] = vel + c
        r[..., 2, 0] = h - vel * c
        r[..., 2, 1] = ke
        r[..., 2, 2] = h + vel * c
        li[..., 0, 0] = 0.5 * (b2 + vel / c)
        li[..., 0, 1] = -0.5 * (b1 * vel + 1.0 / c)
        li[..., 0, 2] = 0.5 * b1
        li[..., 1, 0] = 1.0 - b2
        li[..., 1, 1] = b1 * vel
        li[..., 1, 2] = -b1
        li[..., 2, 0] = 0.5 * (b2 - vel / c)
        li[..., 2, 1] = -0.5 * (b1 * vel - 1.0 / c)
        li[..., 2, 2] = 0.5 * b1
        return r, li
    w = u_avg[..., 2] / rho
    ke = 0.5 * (vel**2 + w**2)
    b2 = ke * b1
    r[..., 0, 0] = 1.0
    r[..., 0, 1] = 0.0
    r[..., 0, 2] = 1.0
    r[..., 0, 3] = 1.0
    r[..., 1, 0] = vel - c
    r[..., 1, 1] = 0.0
    r[..., 1, 2] = vel
    r[..., 1, 3] = vel + c
    r[..., 2, 0] = w
    r[..., 2, 1] = 1.0
    r[..., 2, 2] = w
    r[..., 2, 3] = w
    r[..., 3, 0] = h - vel * c
    r[..., 3, 1] = w
    r[..., 3, 2] = ke
    r[..., 3, 3] = h + vel * c
    li[..., 0, 0] = 0.5 * (b2 + vel / c)
    li[..., 0, 1] = -0.5 * (b1 * vel + 1.0 / c)
    li[..., 0, 2] = -0.5 * b1 * w
    li[..., 0, 3] = 0.5 * b1
    li[..., 1, 0] = -w
    li[..., 1, 1] = 0.0
    li[..., 1, 2] = 1.0
    li[..., 1, 3] = 0.0
    li[..., 2, 0] = 1.0 - b2
    li[..., 2, 1] = b1 * vel
    li[..., 2, 2] = b1 * w
    li[..., 2, 3] = -b1
    li[..., 3, 0] = 0.5 * (b2 - vel / c)
    li[..., 3, 1] = -0.5 * (b1 * vel - 1.0 / c)
    li[..., 3, 2] = -0.5 * b1 * w
    li[..., 3, 3] = 0.5 * b1
    return r, li


@dataclass(frozen=True)
class CharacteristicBasis:
    """Interface-local similarity pair diagonalizing the averaged Jacobian.

    ``eigvecs`` holds right eigenvectors as columns (ascending eigenvalue
    order), ``eigvecs_inv`` its inverse; ``avg_state`` is the simple mean of
    the two neighbouring conserved states the pair was built from.
    """

    avg_state: np.ndarray
    eigvecs: np.ndarray
    eigvecs_inv: np.ndarray


def lcd_basis(u_left: np.ndarray, u_right: np.ndarray, gas: GasParams) -> CharacteristicBasis:
    """Characteristic basis at the interface between two neighbouring states."""
    avg = 0.5 * (np.asarray(u_left, dtype=float) + np.asarray(u_right, dtype=float))
    r, li = lcd_matrices(avg, gas)
    return CharacteristicBasis(avg_state=avg, eigvecs=r, eigvecs_inv=li)
