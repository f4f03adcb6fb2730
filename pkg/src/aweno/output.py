"""Delimited output: field snapshots, masks, step logs, run summaries.

Floating-point values are written with 17 significant digits so files
re-parse to the in-memory doubles exactly and identical runs produce
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .euler import GasParams, cons_to_prim
from .grid import Field
from .lsi import RoughnessMask, mask_records

FLOAT_FMT = "%.17g"


def _write_csv(path, header: str, columns) -> None:
    data = np.column_stack(columns)
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header=header, comments="")


def write_snapshot(path, field: Field, gas: GasParams) -> None:
    """Write primitive-variable rows per interior cell.

    1-D columns: ``x,rho,u,p,E``; 2-D: ``x,y,rho,u,v,p,E`` (row-major in y).
    """
    grid = field.grid
    u = field.interior
    w = cons_to_prim(u, gas)
    if grid.dim == 1:
        _write_csv(
            path,
            "x,rho,u,p,E",
            (grid.x_centers(), w[:, 0], w[:, 1], w[:, 2], u[:, 2]),
        )
        return
    xv, yv = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="xy")
    flat = lambda a: a.reshape(-1)
    _write_csv(
        path,
        "x,y,rho,u,v,p,E",
        (
            flat(xv),
            flat(yv),
            flat(w[..., 0]),
            flat(w[..., 1]),
            flat(w[..., 2]),
            flat(w[..., 3]),
            flat(u[..., 3]),
        ),
    )


def read_snapshot(path):
    """Parse a snapshot written by :func:`write_snapshot`.

    Returns ``(column_names, array)`` with one row per cell.
    """
    with open(path) as fh:
        names = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return names, data


def write_mask(path, grid, mask: RoughnessMask) -> None:
    """One record per interface: coordinates, sweep axis, and the flag."""
    rows = mask_records(mask, grid)
    with open(path, "w") as fh:
        if grid.dim == 1:
            fh.write("x,axis,flag\n")
            for x, _, axis, flag in rows:
                fh.write(f"{x:.17g},{axis},{int(flag)}\n")
        else:
            fh.write("x,y,axis,flag\n")
            for x, y, axis, flag in rows:
                fh.write(f"{x:.17g},{y:.17g},{axis},{int(flag)}\n")


def write_steps(path, records) -> None:
    """Step log: index, start time, dt, flagged-interface fraction."""
    with open(path, "w") as fh:
        fh.write("step,t,dt,rough_fraction\n")
        for r in records:
            fh.write(f"{r.index},{r.t_start:.17g},{r.dt:.17g},{r.rough_fraction:.17g}\n")


def write_summary(path, summary: dict) -> None:
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_summary(result, grid) -> dict:
    """Aggregate run diagnostics (wall-clock lives here, not in the CSVs)."""
    fractions = [r.rough_fraction for r in result.records]
    return {
        "mode": result.mode,
        "steps": len(result.records),
        "t_final": result.t,
        "wall_time": result.wall_time,
        "step_wall_total": float(sum(r.wall for r in result.records)),
        "dx": grid.dx,
        "dy": grid.dy if grid.dim == 2 else None,
        "rough_fraction_mean": float(np.mean(fractions)) if fractions else 0.0,
        "rough_fraction_final": fractions[-1] if fractions else 0.0,
        "rough_fraction_per_step": fractions,
        "fallback_interfaces": result.stats.get("fallback_interfaces", 0),
    }


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
