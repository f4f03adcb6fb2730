"""Benchmark reporting: indicator rate tables, nested-mesh averaging,
run comparison, and figure rendering."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import timeint
from .errors import ConfigurationError
from .euler import cons_to_prim
from .grid import Field
from .weno import DEFAULT_PARAMS, WenoParams, interpolate_left


# --- indicator rate tables ----------------------------------------------------


@dataclass
class RateTable:
    """Window maxima of the smeared indicator per mesh with halving rates."""

    dxs: list
    windows: list
    maxima: np.ndarray  # (n_windows, n_meshes)
    rates: np.ndarray  # same shape; first column is nan

    def format(self) -> str:
        lines = []
        for wi, (a, b) in enumerate(self.windows):
            lines.append(f"window [{a}, {b}]")
            lines.append(f"{'dx':>12} {'max':>12} {'rate':>8}")
            for mi, dx in enumerate(self.dxs):
                rate = self.rates[wi, mi]
                rtxt = "--" if np.isnan(rate) else f"{rate:.2f}"
                lines.append(f"{dx:>12.6g} {self.maxima[wi, mi]:>12.3e} {rtxt:>8}")
        return "\n".join(lines)


def window_max(x: np.ndarray, values: np.ndarray, lo: float, hi: float) -> float:
    sel = (x >= lo) & (x <= hi)
    if not np.any(sel):
        raise ConfigurationError(f"window [{lo}, {hi}] contains no cell centers")
    return float(np.max(values[sel]))


def build_rate_table(dxs, windows, maxima) -> RateTable:
    """Assemble a table from measured maxima; rate is log2 of the ratio of
    consecutive entries (meshes ordered coarse to fine)."""
    maxima = np.asarray(maxima, dtype=float)
    rates = np.full_like(maxima, np.nan)
    if maxima.shape[1] >= 2:
        rates[:, 1:] = np.log2(maxima[:, :-1] / maxima[:, 1:])
    return RateTable(list(dxs), list(windows), maxima, rates)


def rate_table(problem, windows, nxs, *, mode="limited", **evolve_kwargs) -> RateTable:
    """Run the problem per mesh and tabulate final-step indicator maxima.

    The tabulated field is the smeared indicator used to build the final
    step's mask, i.e. the one produced by the last two completed full steps.
    """
    dxs = []
    maxima = np.empty((len(windows), len(nxs)))
    for mi, nx in enumerate(nxs):
        res = timeint.evolve(problem, mode, nx=nx, **evolve_kwargs)
        if res.final_lsi is None:
            raise ConfigurationError("run too short to form the indicator history")
        grid = res.state.grid
        dxs.append(grid.dx)
        x = grid.x_centers()
        for wi, (a, b) in enumerate(windows):
            maxima[wi, mi] = window_max(x, res.final_lsi, a, b)
    return build_rate_table(dxs, windows, maxima)


# --- nested-mesh (running mean) averaging --------------------------------------


def prolong_midpoints(values: np.ndarray, periodic: bool,
                      params: WenoParams = DEFAULT_PARAMS) -> np.ndarray:
    """Double the resolution along the last axis of point samples.

    Existing samples are kept and a limited interpolant value is inserted in
    every gap, including the one at the leading edge, so ``m`` points become
    ``2m`` on a uniform half-spacing grid (offset by half the fine spacing
    from the kept points).  Non-periodic edges use edge replication for the
    stencil padding.
    """
    v = np.asarray(values, dtype=float)
    m = v.shape[-1]
    if periodic:
        vp = np.concatenate([v[..., -3:], v, v[..., :3]], axis=-1)
    else:
        pad = [(0, 0)] * (v.ndim - 1) + [(3, 3)]
        vp = np.pad(v, pad, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(vp, 6, axis=-1)[..., :m, :]
    mids = interpolate_left(windows, limited=True, params=params)
    out = np.empty(v.shape[:-1] + (2 * m,))
    out[..., 0::2] = mids
    out[..., 1::2] = v
    return out


def prolong_field(values: np.ndarray, periodic=(False, False),
                  params: WenoParams = DEFAULT_PARAMS) -> np.ndarray:
    """Dimension-by-dimension doubling of a 1-D or 2-D sample array."""
    v = np.asarray(values, dtype=float)
    if v.ndim == 1:
        return prolong_midpoints(v, periodic[0], params)
    v = prolong_midpoints(v, periodic[0], params)  # along x (last axis)
    v = prolong_midpoints(v.T, periodic[1], params).T  # along y
    return v


def cesaro_average(fields, periodic=(False, False),
                   params: WenoParams = DEFAULT_PARAMS) -> np.ndarray:
    """Running mean of nested-mesh solutions on the finest mesh.

    ``fields`` are point-sample arrays ordered coarse to fine, each axis
    doubling between consecutive entries; coarser entries are prolonged with
    :func:`prolong_field` until they match the finest shape.
    """
    if not fields:
        raise ConfigurationError("no fields to average")
    target = np.asarray(fields[-1]).shape
    acc = np.zeros(target)
    for f in fields:
        f = np.asarray(f, dtype=float)
        guard = 0
        while f.shape != target:
            for fine, coarse in zip(target, f.shape):
                if fine % coarse:
                    raise ConfigurationError(
                        f"mesh sizes not nested: {f.shape} vs target {target}"
                    )
            f = prolong_field(f, periodic, params)
            guard += 1
            if guard > 32:
                raise ConfigurationError("prolongation failed to reach target shape")
        acc += f
    return acc / len(fields)


# --- run comparison -------------------------------------------------------------


def l1_distance(x_coarse, v_coarse, x_fine, v_fine) -> float:
    """L1 distance between a coarse profile and a fine reference profile.

    The reference is linearly interpolated to the coarse cell centers.
    """
    ref = np.interp(x_coarse, x_fine, v_fine)
    dx = x_coarse[1] - x_coarse[0]
    return float(dx * np.sum(np.abs(v_coarse - ref)))


def density_profile(result):
    grid = result.state.grid
    rho = result.state.interior[..., 0]
    return grid.x_centers(), rho


def contact_width_cells(x, rho, window, plateau_frac=0.2) -> int:
    """Cells needed to cross a monotone transition between 10% and 90% levels.

    Plateau levels come from the medians of the first/last ``plateau_frac``
    of the window, so modest over/undershoots do not skew them.
    """
    sel = (x >= window[0]) & (x <= window[1])
    vals = rho[sel]
    k = max(1, int(len(vals) * plateau_frac))
    hi = float(np.median(vals[:k]))
    lo = float(np.median(vals[-k:]))
    if hi < lo:
        hi, lo = lo, hi
    jump = hi - lo
    level_lo = lo + 0.1 * jump
    level_hi = lo + 0.9 * jump
    return int(np.sum((vals > level_lo) & (vals < level_hi)))


def steepest_gradient_position(x, rho, window) -> float:
    """Interface position of the largest cell-to-cell density jump."""
    sel = (x >= window[0]) & (x <= window[1])
    xs = x[sel]
    vs = rho[sel]
    jumps = np.abs(np.diff(vs))
    i = int(np.argmax(jumps))
    return float(0.5 * (xs[i] + xs[i + 1]))


def compare_runs(problem, nxs_or_nx, modes=("limited", "adaptive"), *,
                 reference=None, **evolve_kwargs) -> dict:
    """Run each mode with identical configuration and report timings/errors.

    ``reference`` is an optional finished fine-mesh :class:`EvolveResult`
    used for 1-D density L1 distances.  Wall-clock covers the evolve loop
    only; callers wanting clean JIT-free timings should warm the kernels up
    first (the CLI does).
    """
    results = {}
    report = {"problem": problem.name, "nx": nxs_or_nx, "modes": list(modes),
              "wall": {}, "steps": {}, "l1_density": {}}
    for mode in modes:
        res = timeint.evolve(problem, mode, nx=nxs_or_nx, **evolve_kwargs)
        results[mode] = res
        report["wall"][mode] = res.wall_time
        report["steps"][mode] = len(res.records)
        if reference is not None and res.state.grid.dim == 1:
            xc, rc = density_profile(res)
            xf, rf = density_profile(reference)
            report["l1_density"][mode] = l1_distance(xc, rc, xf, rf)
    if "limited" in results and "adaptive" in results:
        report["ratio_adaptive_limited"] = (
            report["wall"]["adaptive"] / report["wall"]["limited"]
        )
    report["results"] = results
    return report


# --- figures --------------------------------------------------------------------


def plot_density_1d(path, result, gas, reference=None) -> None:
    grid = result.state.grid
    x, rho = density_profile(result)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if reference is not None:
        xr, rr = density_profile(reference)
        ax.plot(xr, rr, "-", color="0.6", lw=1.0, label="reference")
    ax.plot(x, rho, ".", ms=3, label=result.mode)
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_lsi_1d(path, grid, dbar, threshold, mask=None) -> None:
    x = grid.x_centers()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    positive = np.where(dbar > 0, dbar, np.nan)
    ax.semilogy(x, positive, ".", ms=3, label="smeared indicator")
    ax.axhline(threshold, color="r", lw=1.0, label="threshold")
    if mask is not None and mask.x.any():
        xi = grid.x_interfaces()
        flagged = xi[mask.x]
        ax.plot(flagged, np.full_like(flagged, threshold), "k|", ms=12,
                label="flagged interfaces")
    ax.set_xlabel("x")
    ax.set_ylabel("indicator")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_field_2d(path, result, gas, component="rho", contours=30) -> None:
    grid = result.state.grid
    w = cons_to_prim(result.state.interior, gas)
    comp = {"rho": w[..., 0], "u": w[..., 1], "v": w[..., 2], "p": w[..., 3],
            "E": result.state.interior[..., 3]}[component]
    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    im = ax.pcolormesh(grid.x_interfaces(), grid.y_interfaces(), comp,
                       cmap="viridis", shading="flat")
    fig.colorbar(im, ax=ax, label=component)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_mask_2d(path, grid, mask) -> None:
    """Cells touched by a flagged interface, paper-style black-on-white."""
    cells = np.zeros((grid.ny, grid.nx), dtype=bool)
    cells |= mask.x[:, :-1] | mask.x[:, 1:]
    ymask = mask.y.T  # (ny+1, nx)
    cells |= ymask[:-1, :] | ymask[1:, :]
    fig, ax = plt.subplots(figsize=(4.8, 4.6))
    ax.pcolormesh(grid.x_interfaces(), grid.y_interfaces(), cells,
                  cmap="gray_r", shading="flat", vmin=0, vmax=1)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("limited-interpolation region")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_rate_table(path, table: RateTable) -> None:
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    for wi, (a, b) in enumerate(table.windows):
        ax.loglog(table.dxs, table.maxima[wi], "o-", label=f"[{a}, {b}]")
    ax.set_xlabel("dx")
    ax.set_ylabel("max smeared indicator")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
