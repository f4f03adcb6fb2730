"""Local smoothness indicator, spatial smearing, and rough-interface masks.

The indicator compares the mid-step stage solution of the three-stage
Runge-Kutta integrator against the average of the two bracketing time levels:
for a smooth quantity the difference shrinks like the step size squared,
while near shocks it stays O(1).  Thresholding the smeared indicator yields a
per-interface limited/nonlimited switch valid for one full time step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .euler import GasParams, pressure
from .grid import Field, Grid


@dataclass(frozen=True)
class AdaptiveConfig:
    """Threshold constant of the roughness test (exponent 3/2 is fixed)."""

    c: float

    def __post_init__(self):
        if not self.c > 0.0:
            raise ConfigurationError("adaption constant must be positive")

    def threshold(self, dt_prev: float) -> float:
        return self.c * dt_prev**1.5


@dataclass
class LsiHistory:
    """Indicator snapshots driving the roughness test.

    All three snapshots are padded arrays (ghosts included) so the smearing
    stencil is defined up to the first/last interior cell: ``prev`` and
    ``curr`` are the indicator fields at the two latest completed time
    levels, ``stage2`` the mid-step stage between them, and ``dt_prev`` the
    step that produced them.
    """

    prev: np.ndarray | None = None
    curr: np.ndarray | None = None
    stage2: np.ndarray | None = None
    dt_prev: float = 0.0

    @property
    def complete(self) -> bool:
        return (
            self.prev is not None
            and self.curr is not None
            and self.stage2 is not None
            and self.dt_prev > 0.0
        )

    def push(self, psi_new: np.ndarray, psi_stage2: np.ndarray, dt: float) -> None:
        self.prev = self.curr
        self.curr = psi_new
        self.stage2 = psi_stage2
        self.dt_prev = dt


def extract_indicator(u: np.ndarray, selector, gas: GasParams) -> np.ndarray:
    """Scalar indicator field from conserved states.

    ``selector`` is ``"pressure"``, ``"density"``, or a component index.
    """
    if selector == "pressure":
        return pressure(u, gas)
    if selector == "density":
        return np.array(u[..., 0])
    if isinstance(selector, int):
        return np.array(u[..., selector])
    raise ConfigurationError(f"unknown indicator selector {selector!r}")


def pointwise_lsi(history: LsiHistory) -> np.ndarray:
    """Absolute defect of the mid-step snapshot against the time average.

    Zero whenever the stage-two snapshot equals the mean of the two
    endpoint snapshots, e.g. for any quantity linear in time.
    """
    if not history.complete:
        raise ConfigurationError("indicator history incomplete (first step)")
    return np.abs(0.5 * (history.curr + history.prev) - history.stage2)


def smear_lsi(d_padded: np.ndarray, grid: Grid) -> np.ndarray:
    """Spatially smeared indicator on the interior cells.

    ``d_padded`` must carry at least one ghost ring.  The 1-D weights
    (1,1,1)/6 sum to one half and the 2-D weights (1,4,16)/36 sum to one;
    both are applied verbatim, the threshold constant absorbs the scale.
    """
    g = grid.ghost
    if grid.dim == 1:
        n = grid.nx
        c = d_padded[g : g + n]
        lf = d_padded[g - 1 : g + n - 1]
        rt = d_padded[g + 1 : g + n + 1]
        return (lf + c + rt) / 6.0
    ny, nx = grid.ny, grid.nx

    def block(dy: int, dx: int) -> np.ndarray:
        return d_padded[g + dy : g + dy + ny, g + dx : g + dx + nx]

    corners = block(-1, -1) + block(-1, 1) + block(1, -1) + block(1, 1)
    edges = block(-1, 0) + block(0, -1) + block(0, 1) + block(1, 0)
    return (corners + 4.0 * edges + 16.0 * block(0, 0)) / 36.0


@dataclass
class RoughnessMask:
    """Per-interface limited/nonlimited flags, valid for one full step.

    ``x`` has one flag per x-interface (shape ``(nx+1,)`` in 1-D,
    ``(ny, nx+1)`` in 2-D); ``y`` (2-D only) is stored column-major,
    ``(nx, ny+1)``, matching the y-sweep layout.
    """

    x: np.ndarray
    y: np.ndarray | None = None

    @classmethod
    def constant(cls, grid: Grid, value: bool) -> "RoughnessMask":
        if grid.dim == 1:
            return cls(x=np.full(grid.nx + 1, value, dtype=bool))
        return cls(
            x=np.full((grid.ny, grid.nx + 1), value, dtype=bool),
            y=np.full((grid.nx, grid.ny + 1), value, dtype=bool),
        )

    @classmethod
    def all_rough(cls, grid: Grid) -> "RoughnessMask":
        return cls.constant(grid, True)

    @classmethod
    def all_smooth(cls, grid: Grid) -> "RoughnessMask":
        return cls.constant(grid, False)

    @property
    def n_flagged(self) -> int:
        n = int(self.x.sum())
        if self.y is not None:
            n += int(self.y.sum())
        return n

    @property
    def fraction(self) -> float:
        total = self.x.size + (self.y.size if self.y is not None else 0)
        return self.n_flagged / total


def _interface_flags_1d(rough_cells: np.ndarray) -> np.ndarray:
    """Interfaces within 3/2 spacings of a rough cell (4 per isolated cell)."""
    n = rough_cells.shape[-1]
    rp = np.zeros(rough_cells.shape[:-1] + (n + 4,), dtype=bool)
    rp[..., 2 : 2 + n] = rough_cells
    return (
        rp[..., 0 : n + 1]
        | rp[..., 1 : n + 2]
        | rp[..., 2 : n + 3]
        | rp[..., 3 : n + 4]
    )


def _interface_flags_2d(rough_cells: np.ndarray) -> np.ndarray:
    """Sweep-direction interface flags around rough cells.

    A rough cell marks the four same-row interfaces within 3/2 spacings plus
    the two adjacent interfaces in each neighbouring row (eight per isolated
    cell per direction).
    """
    nr, nc = rough_cells.shape
    rq = np.zeros((nr + 2, nc + 4), dtype=bool)
    rq[1:-1, 2:-2] = rough_cells
    mid = rq[1:-1]
    mask = (
        mid[:, 0 : nc + 1]
        | mid[:, 1 : nc + 2]
        | mid[:, 2 : nc + 3]
        | mid[:, 3 : nc + 4]
    )
    up = rq[:-2]
    dn = rq[2:]
    mask |= up[:, 1 : nc + 2] | up[:, 2 : nc + 3]
    mask |= dn[:, 1 : nc + 2] | dn[:, 2 : nc + 3]
    return mask


def flag_rough(
    dbar: np.ndarray, cfg: AdaptiveConfig, dt_prev: float, grid: Grid
) -> RoughnessMask:
    """Threshold the smeared indicator and spread flags to nearby interfaces."""
    if not dt_prev > 0.0:
        raise ConfigurationError("previous time step must be positive")
    rough_cells = dbar > cfg.threshold(dt_prev)
    if grid.dim == 1:
        return RoughnessMask(x=_interface_flags_1d(rough_cells))
    return RoughnessMask(
        x=_interface_flags_2d(rough_cells),
        y=_interface_flags_2d(rough_cells.T),
    )


def mask_records(mask: RoughnessMask, grid: Grid):
    """Flatten a mask to (x, y, axis, flag) records for export."""
    rows = []
    if grid.dim == 1:
        for i, x in enumerate(grid.x_interfaces()):
            rows.append((x, None, "x", bool(mask.x[i])))
        return rows
    xi = grid.x_interfaces()
    xc = grid.x_centers()
    yi = grid.y_interfaces()
    yc = grid.y_centers()
    for k in range(grid.ny):
        for i in range(grid.nx + 1):
            rows.append((xi[i], yc[k], "x", bool(mask.x[k, i])))
    for j in range(grid.nx):
        for m in range(grid.ny + 1):
            rows.append((xc[j], yi[m], "y", bool(mask.y[j, m])))
    return rows
