"""Benchmark problem registry: initial data, boundaries, and per-problem knobs.

Nine standard shock-capturing benchmarks (four 1-D, five 2-D) with their
published domains, final times, heat ratios, adaption constants, and default
meshes.  Initial data are sampled pointwise at cell centers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ConfigurationError, RegistryError
from .euler import GasParams, prim_to_cons
from .grid import (
    BoundarySet,
    Dirichlet,
    Field,
    Free,
    Grid,
    Periodic,
    SolidWall,
    build_grid,
    fill_ghosts,
)


@dataclass(frozen=True)
class ProblemSpec:
    """Complete benchmark definition.

    ``init`` maps cell-center coordinates (``x`` or ``x, y`` arrays) to
    primitive states with components last.  ``symmetry`` is ``None``,
    ``"diagonal"`` (average with the transposed field, u/v swapped), or
    ``"mirror-x"`` (average with the x-reflected field, sign-flipped x
    momentum).  ``source`` maps interior conserved states to a pointwise
    tendency contribution.
    """

    name: str
    dim: int
    x_extent: tuple
    t_final: float
    bcs: BoundarySet
    init: Callable
    c_adapt: float
    nx_default: int
    y_extent: tuple | None = None
    ny_default: int | None = None
    gamma: float = 1.4
    source: Callable | None = None
    symmetry: str | None = None
    indicator: str = "pressure"

    @property
    def gas(self) -> GasParams:
        return GasParams(self.gamma)

    def grid(self, nx: int | None = None, ny: int | None = None) -> Grid:
        nx = self.nx_default if nx is None else int(nx)
        if self.dim == 1:
            return build_grid(self.x_extent, nx)
        ny = (self.ny_default if ny is None else int(ny))
        return build_grid(self.x_extent, nx, self.y_extent, ny)


def initial_field(spec: ProblemSpec, grid: Grid) -> Field:
    """Sample the initial primitive data at cell centers, ghosts filled."""
    gas = spec.gas
    if spec.dim == 1:
        w = spec.init(grid.x_centers())
    else:
        xv, yv = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="xy")
        w = spec.init(xv, yv)
    field = Field.from_interior(grid, prim_to_cons(w, gas))
    return fill_ghosts(field, spec.bcs, gas)


def rt_source(u: np.ndarray) -> np.ndarray:
    """Downward-gravity source for the density-stratified instability run:
    adds ``rho`` to the y-momentum and ``rho*v`` to the energy."""
    s = np.zeros_like(u)
    s[..., 2] = u[..., 0]
    s[..., 3] = u[..., 2]
    return s


def enforce_symmetry_diagonal(field: Field) -> Field:
    """Project the interior onto exact symmetry about the diagonal y=x.

    Density and energy are averaged with their transposes; the two momentum
    components are averaged with each other's transpose.  Idempotent.
    """
    grid = field.grid
    if grid.dim != 2 or grid.nx != grid.ny:
        raise ConfigurationError("diagonal symmetry needs a square 2-D grid")
    u = field.interior
    ut = u.transpose(1, 0, 2).copy()
    u[..., 0] = 0.5 * (u[..., 0] + ut[..., 0])
    mx = 0.5 * (u[..., 1] + ut[..., 2])
    my = 0.5 * (u[..., 2] + ut[..., 1])
    u[..., 1] = mx
    u[..., 2] = my
    u[..., 3] = 0.5 * (u[..., 3] + ut[..., 3])
    return field


def enforce_symmetry_mirror(field: Field) -> Field:
    """Project the interior onto mirror symmetry about the vertical midline.

    Density, y-momentum, and energy are averaged with their x-reflections;
    the x-momentum is anti-averaged (sign flip).  Idempotent.
    """
    grid = field.grid
    if grid.dim != 2:
        raise ConfigurationError("mirror symmetry is a 2-D operation")
    u = field.interior
    ur = u[:, ::-1, :].copy()
    u[..., 0] = 0.5 * (u[..., 0] + ur[..., 0])
    u[..., 1] = 0.5 * (u[..., 1] - ur[..., 1])
    u[..., 2] = 0.5 * (u[..., 2] + ur[..., 2])
    u[..., 3] = 0.5 * (u[..., 3] + ur[..., 3])
    return field


SYMMETRY_OPS = {
    "diagonal": enforce_symmetry_diagonal,
    "mirror-x": enforce_symmetry_mirror,
}


# --- initial data -------------------------------------------------------------


def _ic_sod(x):
    w = np.empty(x.shape + (3,))
    left = x < 0.5
    w[..., 0] = np.where(left, 1.0, 0.125)
    w[..., 1] = 0.0
    w[..., 2] = np.where(left, 1.0, 0.1)
    return w


def _ic_shock_bubble(x):
    w = np.empty(x.shape + (3,))
    bubble = np.abs(x) < 0.25
    postshock = x > 0.75
    w[..., 0] = np.where(bubble, 13.1538, np.where(postshock, 1.3333, 1.0))
    w[..., 1] = np.where(postshock, -0.3535, 0.0)
    w[..., 2] = np.where(postshock, 1.5, 1.0)
    return w


def _ic_shock_entropy(x):
    w = np.empty(x.shape + (3,))
    left = x < -4.5
    w[..., 0] = np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x))
    w[..., 1] = np.where(left, 0.523346, 0.0)
    w[..., 2] = np.where(left, 1.805, 1.0)
    return w


def _ic_shock_density(x):
    w = np.empty(x.shape + (3,))
    left = x < -4.0
    w[..., 0] = np.where(left, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x))
    w[..., 1] = np.where(left, 4.0 * np.sqrt(35.0) / 9.0, 0.0)
    w[..., 2] = np.where(left, 31.0 / 3.0, 1.0)
    return w


def _ic_riemann2d(x, y):
    w = np.empty(x.shape + (4,))
    xe = x > 1.0
    yn = y > 1.0
    w[..., 0] = np.select(
        [xe & yn, ~xe & yn, ~xe & ~yn], [1.5, 0.5323, 0.138], default=0.5323
    )
    w[..., 1] = np.select([xe & yn, ~xe & yn, ~xe & ~yn], [0.0, 1.206, 1.206], 0.0)
    w[..., 2] = np.select([xe & yn, ~xe & yn, ~xe & ~yn], [0.0, 0.0, 1.206], 1.206)
    w[..., 3] = np.select([xe & yn, ~xe & yn, ~xe & ~yn], [1.5, 0.3, 0.029], 0.3)
    return w


def _ic_explosion(x, y):
    w = np.empty(x.shape + (4,))
    inside = x**2 + y**2 < 0.16
    w[..., 0] = np.where(inside, 1.0, 0.125)
    w[..., 1] = 0.0
    w[..., 2] = 0.0
    w[..., 3] = np.where(inside, 1.0, 0.1)
    return w


def _ic_implosion(x, y):
    w = np.empty(x.shape + (4,))
    inside = np.abs(x) + np.abs(y) < 0.15
    w[..., 0] = np.where(inside, 0.125, 1.0)
    w[..., 1] = 0.0
    w[..., 2] = 0.0
    w[..., 3] = np.where(inside, 0.14, 1.0)
    return w


KH_SHEAR_WIDTH = 0.00625


def _ic_kh(x, y):
    L = KH_SHEAR_WIDTH
    w = np.empty(x.shape + (4,))
    b0 = y < -0.25
    b1 = (y >= -0.25) & (y < 0.0)
    b2 = (y >= 0.0) & (y < 0.25)
    w[..., 0] = np.select([b0, b1, b2], [1.0, 2.0, 2.0], default=1.0)
    w[..., 1] = np.select(
        [b0, b1, b2],
        [
            -0.5 + 0.5 * np.exp((y + 0.25) / L),
            0.5 - 0.5 * np.exp((-y - 0.25) / L),
            0.5 - 0.5 * np.exp((y - 0.25) / L),
        ],
        default=-0.5 + 0.5 * np.exp((-y + 0.25) / L),
    )
    w[..., 2] = 0.01 * np.sin(4.0 * np.pi * x)
    w[..., 3] = 1.5
    return w


def _ic_rt(x, y, gamma=5.0 / 3.0):
    w = np.empty(x.shape + (4,))
    lower = y < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(gamma * p / rho)
    w[..., 0] = rho
    w[..., 1] = 0.0
    w[..., 2] = -0.025 * c * np.cos(8.0 * np.pi * x)
    w[..., 3] = p
    return w


_REGISTRY: dict[str, ProblemSpec] = {}


def _register(spec: ProblemSpec) -> None:
    _REGISTRY[spec.name] = spec


_register(
    ProblemSpec(
        name="sod",
        dim=1,
        x_extent=(0.0, 1.0),
        t_final=0.16,
        bcs=BoundarySet(left=Free(), right=Free()),
        init=_ic_sod,
        c_adapt=0.05,
        nx_default=200,
    )
)

_register(
    ProblemSpec(
        name="shock-bubble",
        dim=1,
        x_extent=(-1.0, 1.0),
        t_final=3.0,
        bcs=BoundarySet(left=SolidWall(), right=Free()),
        init=_ic_shock_bubble,
        c_adapt=0.0015,
        nx_default=200,
    )
)

_register(
    ProblemSpec(
        name="shock-entropy",
        dim=1,
        x_extent=(-5.0, 5.0),
        t_final=5.0,
        bcs=BoundarySet(left=Free(), right=Free()),
        init=_ic_shock_entropy,
        c_adapt=0.006,
        nx_default=400,
    )
)

_register(
    ProblemSpec(
        name="shock-density",
        dim=1,
        x_extent=(-5.0, 15.0),
        t_final=5.0,
        bcs=BoundarySet(left=Free(), right=Free()),
        init=_ic_shock_density,
        c_adapt=0.04,
        nx_default=400,
    )
)

_register(
    ProblemSpec(
        name="riemann2d",
        dim=2,
        x_extent=(0.0, 1.2),
        y_extent=(0.0, 1.2),
        t_final=1.0,
        bcs=BoundarySet(left=Free(), right=Free(), bottom=Free(), top=Free()),
        init=_ic_riemann2d,
        c_adapt=3.0,
        nx_default=1000,
        ny_default=1000,
    )
)

_register(
    ProblemSpec(
        name="explosion",
        dim=2,
        x_extent=(0.0, 1.5),
        y_extent=(0.0, 1.5),
        t_final=3.2,
        bcs=BoundarySet(left=SolidWall(), right=Free(), bottom=SolidWall(), top=Free()),
        init=_ic_explosion,
        c_adapt=1.0,
        nx_default=400,
        ny_default=400,
        symmetry="diagonal",
    )
)

_register(
    ProblemSpec(
        name="implosion",
        dim=2,
        x_extent=(0.0, 0.3),
        y_extent=(0.0, 0.3),
        t_final=2.5,
        bcs=BoundarySet(
            left=SolidWall(), right=SolidWall(), bottom=SolidWall(), top=SolidWall()
        ),
        init=_ic_implosion,
        c_adapt=3.0,
        nx_default=400,
        ny_default=400,
        symmetry="diagonal",
    )
)

_register(
    ProblemSpec(
        name="kh",
        dim=2,
        x_extent=(-0.5, 0.5),
        y_extent=(-0.5, 0.5),
        t_final=4.0,
        bcs=BoundarySet(
            left=Periodic(), right=Periodic(), bottom=Periodic(), top=Periodic()
        ),
        init=_ic_kh,
        c_adapt=1.0,
        nx_default=400,
        ny_default=400,
    )
)

_register(
    ProblemSpec(
        name="rt",
        dim=2,
        x_extent=(0.0, 0.25),
        y_extent=(0.0, 1.0),
        t_final=2.95,
        bcs=BoundarySet(
            left=SolidWall(),
            right=SolidWall(),
            bottom=Dirichlet((2.0, 0.0, 0.0, 1.0)),
            top=Dirichlet((1.0, 0.0, 0.0, 2.5)),
        ),
        init=_ic_rt,
        c_adapt=2.0,
        nx_default=200,
        ny_default=800,
        gamma=5.0 / 3.0,
        source=rt_source,
        symmetry="mirror-x",
    )
)


def problem_names() -> list[str]:
    return sorted(_REGISTRY)


def make_problem(name: str, **overrides) -> ProblemSpec:
    """Look up a registered benchmark, optionally overriding fields."""
    try:
        spec = _REGISTRY[name]
    except KeyError:
        raise RegistryError(
            f"unknown problem {name!r}; known: {', '.join(problem_names())}"
        ) from None
    return replace(spec, **overrides) if overrides else spec
