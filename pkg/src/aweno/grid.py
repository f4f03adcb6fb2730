"""Structured uniform grids with ghost layers and boundary-condition filling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# The flux at interface j+1/2 reads nodes j-2 .. j+3, so three ghost cells
# per side make every interior interface stencil-complete.
GHOST = 3

# Minimum cell count for which an interior six-point stencil exists at all.
MIN_CELLS = 7


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centred grid (1-D or 2-D) with ``ghost`` cells per side.

    Cell centers sit at ``x_min + (j + 1/2) * dx`` for interior index
    ``j = 0 .. nx-1``; interfaces at ``x_min + i * dx`` for ``i = 0 .. nx``.
    """

    nx: int
    x_min: float
    x_max: float
    ny: int | None = None
    y_min: float | None = None
    y_max: float | None = None
    ghost: int = GHOST

    @property
    def dim(self) -> int:
        return 1 if self.ny is None else 2

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.ny

    @property
    def ncomp(self) -> int:
        return 3 if self.dim == 1 else 4

    def x_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return self.y_min + (np.arange(self.ny) + 0.5) * self.dy

    def x_interfaces(self) -> np.ndarray:
        return self.x_min + np.arange(self.nx + 1) * self.dx

    def y_interfaces(self) -> np.ndarray:
        return self.y_min + np.arange(self.ny + 1) * self.dy

    def padded_shape(self, ncomp: int | None = None) -> tuple[int, ...]:
        d = self.ncomp if ncomp is None else ncomp
        if self.dim == 1:
            return (self.nx + 2 * self.ghost, d)
        return (self.ny + 2 * self.ghost, self.nx + 2 * self.ghost, d)


def build_grid(x_extent, nx, y_extent=None, ny=None, ghost=GHOST) -> Grid:
    """Create a uniform grid over the given extents.

    ``x_extent``/``y_extent`` are ``(min, max)`` pairs; counts are cells per
    axis.  Raises :class:`ConfigurationError` for inverted extents,
    nonpositive/too-small counts, or a ghost width below the stencil need.
    """
    x0, x1 = float(x_extent[0]), float(x_extent[1])
    if not x1 > x0:
        raise ConfigurationError(f"inverted x extent [{x0}, {x1}]")
    nx = int(nx)
    if nx < MIN_CELLS:
        raise ConfigurationError(f"nx={nx} is below the minimum of {MIN_CELLS}")
    if ghost < GHOST:
        raise ConfigurationError(f"ghost width {ghost} < {GHOST}")
    if y_extent is None:
        return Grid(nx=nx, x_min=x0, x_max=x1, ghost=ghost)
    y0, y1 = float(y_extent[0]), float(y_extent[1])
    if not y1 > y0:
        raise ConfigurationError(f"inverted y extent [{y0}, {y1}]")
    ny = int(ny)
    if ny < MIN_CELLS:
        raise ConfigurationError(f"ny={ny} is below the minimum of {MIN_CELLS}")
    return Grid(nx=nx, x_min=x0, x_max=x1, ny=ny, y_min=y0, y_max=y1, ghost=ghost)


@dataclass
class Field:
    """Multi-component cell-centred field including ghost cells.

    ``data`` has shape ``(nx + 2g, d)`` in 1-D and ``(ny + 2g, nx + 2g, d)``
    in 2-D, components last.  Ghost values are only meaningful after
    :func:`fill_ghosts`.
    """

    grid: Grid
    data: np.ndarray

    @classmethod
    def zeros(cls, grid: Grid, ncomp: int | None = None) -> "Field":
        return cls(grid, np.zeros(grid.padded_shape(ncomp)))

    @classmethod
    def from_interior(cls, grid: Grid, values: np.ndarray) -> "Field":
        f = cls(grid, np.empty(grid.padded_shape(values.shape[-1])))
        f.interior[...] = values
        return f

    @property
    def ncomp(self) -> int:
        return self.data.shape[-1]

    @property
    def interior(self) -> np.ndarray:
        g = self.grid.ghost
        if self.grid.dim == 1:
            return self.data[g : g + self.grid.nx]
        return self.data[g : g + self.grid.ny, g : g + self.grid.nx]

    def copy(self) -> "Field":
        return Field(self.grid, self.data.copy())


# --- boundary conditions ----------------------------------------------------


@dataclass(frozen=True)
class Free:
    """Zero-order extrapolation: ghosts copy the nearest interior cell."""


@dataclass(frozen=True)
class SolidWall:
    """Mirror reflection with the face-normal momentum negated."""


@dataclass(frozen=True)
class Periodic:
    """Wrap-around copy; must be paired on opposing faces."""


@dataclass(frozen=True)
class Dirichlet:
    """Fixed primitive state held constant in every ghost cell of the face."""

    state: tuple


@dataclass(frozen=True)
class BoundarySet:
    left: object
    right: object
    bottom: object | None = None
    top: object | None = None

    def __post_init__(self):
        for a, b, axis in ((self.left, self.right, "x"), (self.bottom, self.top, "y")):
            if isinstance(a, Periodic) != isinstance(b, Periodic):
                raise ConfigurationError(
                    f"periodic condition must be set on both {axis} faces or neither"
                )


def _fill_axis(u: np.ndarray, n: int, g: int, lo, hi, momentum: int, gas) -> None:
    """Fill the g leading/trailing ghost entries along axis 0 of ``u``."""
    from .euler import prim_to_cons  # local import to avoid a module cycle

    if isinstance(lo, Free):
        u[:g] = u[g]
    elif isinstance(lo, Periodic):
        u[:g] = u[n : n + g]
    elif isinstance(lo, SolidWall):
        u[:g] = u[g : 2 * g][::-1]
        u[:g, momentum] = -u[:g, momentum]
    elif isinstance(lo, Dirichlet):
        u[:g] = prim_to_cons(np.asarray(lo.state, dtype=float), gas)
    else:
        raise ConfigurationError(f"unsupported boundary condition {lo!r}")

    if isinstance(hi, Free):
        u[g + n :] = u[g + n - 1]
    elif isinstance(hi, Periodic):
        u[g + n :] = u[g : 2 * g]
    elif isinstance(hi, SolidWall):
        u[g + n :] = u[n : g + n][::-1]
        u[g + n :, momentum] = -u[g + n :, momentum]
    elif isinstance(hi, Dirichlet):
        u[g + n :] = prim_to_cons(np.asarray(hi.state, dtype=float), gas)
    else:
        raise ConfigurationError(f"unsupported boundary condition {hi!r}")


def fill_ghosts(field: Field, bcs: BoundarySet, gas=None) -> Field:
    """Populate all ghost cells of ``field`` in place and return it.

    In 2-D the x-direction is filled first (interior rows only), then the
    y-direction over the full extended x-range, so corner ghosts are defined.
    """
    grid = field.grid
    g = grid.ghost
    u = field.data
    if grid.dim == 1:
        _fill_axis(u, grid.nx, g, bcs.left, bcs.right, 1, gas)
        return field
    # x-direction: each interior row is an independent 1-D line along axis 1
    rows = u[g : g + grid.ny]
    for k in range(rows.shape[0]):
        _fill_axis(rows[k], grid.nx, g, bcs.left, bcs.right, 1, gas)
    # y-direction over all columns, including the freshly filled x-ghosts
    ut = u.transpose(1, 0, 2)
    for j in range(ut.shape[0]):
        _fill_axis(ut[j], grid.ny, g, bcs.bottom, bcs.top, 2, gas)
    return field


def total_integrals(field: Field) -> np.ndarray:
    """Cell-volume-weighted totals of each component over the interior."""
    grid = field.grid
    vol = grid.dx if grid.dim == 1 else grid.dx * grid.dy
    return vol * field.interior.reshape(-1, field.ncomp).sum(axis=0)
