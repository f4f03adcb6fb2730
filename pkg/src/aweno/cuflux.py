"""Central-upwind interface fluxes, high-order corrections, and the
semi-discrete right-hand side.

Two implementations coexist on purpose.  The reference layer below is built
from small single-interface operations (readable, model-agnostic, used by the
unit tests and as a cross-check); :func:`semi_discrete_rhs` is the production
path that drives the compiled sweep kernel.  Tests pin the two together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import euler, kernels
from .errors import DecompositionError, PhysicalStateError
from .grid import GHOST, BoundarySet, Field, fill_ghosts
from .weno import DEFAULT_PARAMS, WenoParams, interpolate_left, interpolate_right

#: desingularization of the one-sided speed gap
DEFAULT_SPEED_EPS = 1.0e-10


@dataclass(frozen=True)
class SchemeParams:
    """Knobs of the spatial discretization."""

    weno: WenoParams = DEFAULT_PARAMS
    speed_eps: float = DEFAULT_SPEED_EPS


DEFAULT_SCHEME = SchemeParams()


# --- reference layer ---------------------------------------------------------


@dataclass(frozen=True)
class FluxModel:
    """Physics callbacks the central-upwind flux needs.

    ``flux(U)`` and ``eigenvalues(U)`` map a state vector to its physical
    flux / ascending Jacobian eigenvalues; ``lcd(U_l, U_r)`` returns the
    interface :class:`~aweno.euler.CharacteristicBasis`.
    """

    flux: Callable
    eigenvalues: Callable
    lcd: Callable


def euler_model_x(gas: euler.GasParams) -> FluxModel:
    return FluxModel(
        flux=lambda u: euler.physical_flux_x(u, gas),
        eigenvalues=lambda u: euler.eigenvalues_x(u, gas),
        lcd=lambda ul, ur: euler.lcd_basis(ul, ur, gas),
    )


@dataclass(frozen=True)
class InterfaceSpeeds:
    """One-sided characteristic speeds per field: plus >= 0 >= minus."""

    plus: np.ndarray
    minus: np.ndarray


@dataclass(frozen=True)
class DiffusionCoeffs:
    """Diagonal entries of the three diffusion matrices per field."""

    p: np.ndarray
    m: np.ndarray
    q: np.ndarray


def one_sided_speeds(u_minus, u_plus, model: FluxModel) -> InterfaceSpeeds:
    """Per-field extremes of the two one-sided eigenvalue sets against zero."""
    lam_m = np.asarray(model.eigenvalues(u_minus))
    lam_p = np.asarray(model.eigenvalues(u_plus))
    plus = np.maximum(np.maximum(lam_m, lam_p), 0.0)
    minus = np.minimum(np.minimum(lam_m, lam_p), 0.0)
    return InterfaceSpeeds(plus=plus, minus=minus)


def pmq_coeffs(speeds: InterfaceSpeeds, eps: float = DEFAULT_SPEED_EPS) -> DiffusionCoeffs:
    """Upwinding fractions and the jump coefficient, zeroed for tiny gaps."""
    gap = speeds.plus - speeds.minus
    active = gap > eps
    safe = np.where(active, gap, 1.0)
    p = np.where(active, speeds.plus / safe, 0.0)
    m = np.where(active, -speeds.minus / safe, 0.0)
    q = np.where(active, speeds.plus * speeds.minus / safe, 0.0)
    return DiffusionCoeffs(p=p, m=m, q=q)


def cu_flux(
    u_minus,
    u_plus,
    u_j,
    u_jp1,
    model: FluxModel,
    eps: float = DEFAULT_SPEED_EPS,
):
    """Second-order finite-volume interface flux.

    Central average of the node fluxes plus a characteristic-wise diffusion
    term built from the interpolated one-sided interface values.
    """
    basis = model.lcd(np.asarray(u_j, float), np.asarray(u_jp1, float))
    r, li = basis.eigvecs, basis.eigvecs_inv
    speeds = one_sided_speeds(u_minus, u_plus, model)
    coeff = pmq_coeffs(speeds, eps)
    fbar = 0.5 * (np.asarray(model.flux(u_j)) + np.asarray(model.flux(u_jp1)))
    a = li @ (np.asarray(model.flux(u_minus)) - fbar)
    b = li @ (np.asarray(model.flux(u_plus)) - fbar)
    c = li @ (np.asarray(u_plus, float) - np.asarray(u_minus, float))
    return fbar + r @ (coeff.p * a + coeff.m * b + coeff.q * c)


def flux_corrections(f_nodes, dx: float):
    """Central-difference estimates of the second and fourth flux derivatives
    at the interface midpoint, from the six node fluxes ``j-2 .. j+3``."""
    f = np.asarray(f_nodes, dtype=float)
    fxx = (
        -5.0 * f[0] + 39.0 * f[1] - 34.0 * f[2] - 34.0 * f[3] + 39.0 * f[4] - 5.0 * f[5]
    ) / (48.0 * dx * dx)
    fxxxx = (f[0] - 3.0 * f[1] + 2.0 * f[2] + 2.0 * f[3] - 3.0 * f[4] + f[5]) / (
        2.0 * dx**4
    )
    return fxx, fxxxx


def aweno_interface_flux(fv_flux, fxx, fxxxx, dx: float):
    """Fifth-order flux: finite-volume flux plus Taylor correction terms."""
    return fv_flux - (dx * dx / 24.0) * fxx + (7.0 * dx**4 / 5760.0) * fxxxx


def _admissible(u_state, gas: euler.GasParams) -> bool:
    return u_state[0] > 0.0 and euler.pressure(u_state, gas) > 0.0


def interface_flux_reference(
    u_nodes,
    rough: bool,
    model: FluxModel,
    dx: float,
    params: SchemeParams = DEFAULT_SCHEME,
    gas: euler.GasParams | None = None,
):
    """Full single-interface pipeline on the six surrounding node states.

    When ``gas`` is given, interpolated one-sided values outside the physical
    state space fall back to the neighbouring node values, matching the
    production kernel.
    """
    u_nodes = np.asarray(u_nodes, dtype=float)
    basis = model.lcd(u_nodes[2], u_nodes[3])
    gam = u_nodes @ basis.eigvecs_inv.T  # characteristic stencils, slots first
    d = u_nodes.shape[1]
    wm = np.empty(d)
    wp = np.empty(d)
    for comp in range(d):
        wm[comp] = interpolate_left(gam[:, comp], limited=rough, params=params.weno)
        wp[comp] = interpolate_right(gam[:, comp], limited=rough, params=params.weno)
    u_minus = basis.eigvecs @ wm
    u_plus = basis.eigvecs @ wp
    if gas is not None and not (_admissible(u_minus, gas) and _admissible(u_plus, gas)):
        u_minus = u_nodes[2].copy()
        u_plus = u_nodes[3].copy()
    fv = cu_flux(u_minus, u_plus, u_nodes[2], u_nodes[3], model, params.speed_eps)
    fxx, fxxxx = flux_corrections([model.flux(u_nodes[s]) for s in range(6)], dx)
    return aweno_interface_flux(fv, fxx, fxxxx, dx)


# --- production path ----------------------------------------------------------


def _sweep(lines: np.ndarray, rough: np.ndarray, gas: euler.GasParams,
           params: SchemeParams):
    """Run the compiled kernel over a batch of padded lines.

    Returns the interface fluxes and the number of interfaces that fell back
    to first-order node data because an interpolated one-sided value left
    the physical state space.
    """
    b, m, d = lines.shape
    flux = np.empty((b, m - 5, d))
    err = np.zeros(4, dtype=np.int64)
    d0, d1, d2 = params.weno.linear_weights
    kernels.sweep_kernel(
        lines, gas.gamma, rough, d0, d1, d2,
        params.weno.eps, params.weno.power, params.speed_eps, flux, err,
    )
    code = int(err[0])
    if code == kernels.OK:
        return flux, int(err[3])
    where = f"line {int(err[1])}, position {int(err[2])}"
    if code == kernels.BAD_NODE:
        raise PhysicalStateError("inadmissible node state", where)
    raise DecompositionError("inadmissible interface-averaged state", where)


def _line_view(data: np.ndarray, g: int, n_interior: int) -> np.ndarray:
    """Trim extra ghost layers so exactly three remain per side."""
    if g == GHOST:
        return data
    return data[..., g - GHOST : g + n_interior + GHOST, :]


def semi_discrete_rhs(
    field: Field,
    mask,
    bcs: BoundarySet,
    gas: euler.GasParams,
    params: SchemeParams = DEFAULT_SCHEME,
    source: Callable | None = None,
    stats: dict | None = None,
) -> np.ndarray:
    """Flux-difference tendency of the interior cells.

    Ghost cells of ``field`` are refreshed in place first.  ``mask`` provides
    the per-interface limited/nonlimited switch (``mask.x`` and, in 2-D,
    ``mask.y``); ``source`` adds a pointwise contribution evaluated on the
    interior states.  ``stats`` (optional dict) accumulates the count of
    first-order interface fallbacks under ``"fallback_interfaces"``.
    """
    grid = field.grid
    g = grid.ghost
    fill_ghosts(field, bcs, gas)
    if grid.dim == 1:
        lines = _line_view(field.data[None, :, :], g, grid.nx)
        flux, nfb = _sweep(
            np.ascontiguousarray(lines), np.ascontiguousarray(mask.x[None, :]),
            gas, params,
        )
        rhs = -(flux[0, 1:] - flux[0, :-1]) / grid.dx
    else:
        nx, ny = grid.nx, grid.ny
        rows = _line_view(field.data[g : g + ny], g, nx)
        flux_x, nfb = _sweep(np.ascontiguousarray(rows), mask.x, gas, params)
        rhs = -(flux_x[:, 1:, :] - flux_x[:, :-1, :]) / grid.dx
        cols = np.ascontiguousarray(field.data.transpose(1, 0, 2)[g : g + nx])
        cols = _line_view(cols, g, ny)[:, :, (0, 2, 1, 3)]
        flux_y, nfb_y = _sweep(np.ascontiguousarray(cols), mask.y, gas, params)
        nfb += nfb_y
        tend_y = -(flux_y[:, 1:, :] - flux_y[:, :-1, :]) / grid.dy
        rhs = rhs + tend_y[:, :, (0, 2, 1, 3)].transpose(1, 0, 2)
    if stats is not None:
        stats["fallback_interfaces"] = stats.get("fallback_interfaces", 0) + nfb
    if source is not None:
        rhs = rhs + source(field.interior)
    return rhs


def semi_discrete_rhs_reference(
    field: Field,
    mask,
    bcs: BoundarySet,
    gas: euler.GasParams,
    params: SchemeParams = DEFAULT_SCHEME,
    source: Callable | None = None,
) -> np.ndarray:
    """Loop-built tendency from the single-interface reference pipeline.

    Intended for small grids in tests; semantics match
    :func:`semi_discrete_rhs`.
    """
    grid = field.grid
    g = grid.ghost
    fill_ghosts(field, bcs, gas)
    euler.validate_states(field.data, gas, "node state")
    model = euler_model_x(gas)
    if grid.dim == 1:
        u = field.data
        nflux = np.empty((grid.nx + 1, field.ncomp))
        for i in range(grid.nx + 1):
            jl = g - 1 + i
            nflux[i] = interface_flux_reference(
                u[jl - 2 : jl + 4], bool(mask.x[i]), model, grid.dx, params, gas
            )
        rhs = -(nflux[1:] - nflux[:-1]) / grid.dx
    else:
        nx, ny = grid.nx, grid.ny
        rhs = np.zeros((ny, nx, 4))
        u = field.data
        for k in range(ny):
            row = u[g + k]
            nflux = np.empty((nx + 1, 4))
            for i in range(nx + 1):
                jl = g - 1 + i
                nflux[i] = interface_flux_reference(
                    row[jl - 2 : jl + 4], bool(mask.x[k, i]), model, grid.dx,
                    params, gas,
                )
            rhs[k] -= (nflux[1:] - nflux[:-1]) / grid.dx
        perm = (0, 2, 1, 3)
        for j in range(nx):
            col = u[:, g + j, :][:, perm]
            nflux = np.empty((ny + 1, 4))
            for i in range(ny + 1):
                jl = g - 1 + i
                nflux[i] = interface_flux_reference(
                    col[jl - 2 : jl + 4], bool(mask.y[j, i]), model, grid.dy,
                    params, gas,
                )
            rhs[:, j, :] -= ((nflux[1:] - nflux[:-1]) / grid.dy)[:, perm]
    if source is not None:
        rhs = rhs + source(field.interior)
    return rhs
