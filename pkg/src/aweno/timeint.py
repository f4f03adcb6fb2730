"""Three-stage third-order SSP Runge-Kutta evolution with CFL step control."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from . import cuflux, lsi, problems
from .errors import ConfigurationError, PhysicalStateError, StepFailure
from .euler import GasParams, pressure
from .grid import Field, fill_ghosts
from .lsi import AdaptiveConfig, LsiHistory, RoughnessMask

MODES = ("limited", "adaptive", "nonlimited")

#: relative slack when deciding that the run has reached the final time
_TIME_TOL = 1.0e-12


@dataclass(frozen=True)
class TimeStepConfig:
    """CFL number, final time, and optional fixed step override."""

    cfl: float = 0.45
    t_final: float = 1.0
    fixed_dt: float | None = None

    def __post_init__(self):
        if not 0.0 < self.cfl <= 0.5:
            raise ConfigurationError("CFL number must lie in (0, 1/2]")


def max_wave_speeds(state: Field, gas: GasParams):
    """Largest node-state characteristic speed per direction (interior)."""
    u = state.interior
    rho = u[..., 0]
    p = pressure(u, gas)
    if not (np.all(rho > 0.0) and np.all(p > 0.0)):
        raise PhysicalStateError("inadmissible state in time-step estimate")
    c = np.sqrt(gas.gamma * p / rho)
    ax = float(np.max(np.abs(u[..., 1] / rho) + c))
    if state.grid.dim == 1:
        return (ax,)
    ay = float(np.max(np.abs(u[..., 2] / rho) + c))
    return ax, ay


def compute_dt(state: Field, gas: GasParams, cfg: TimeStepConfig, t: float) -> float:
    """CFL-limited step, clipped so the final step lands exactly on t_final."""
    remaining = cfg.t_final - t
    if remaining <= 0.0:
        raise ConfigurationError("final time already reached")
    if cfg.fixed_dt is not None:
        return min(cfg.fixed_dt, remaining)
    speeds = max_wave_speeds(state, gas)
    grid = state.grid
    if speeds[0] <= 0.0 and (len(speeds) == 1 or speeds[1] <= 0.0):
        return remaining
    dt = cfg.cfl * grid.dx / speeds[0]
    if len(speeds) == 2:
        dt = min(dt, cfg.cfl * grid.dy / speeds[1])
    return min(dt, remaining)


def ssprk3(y, dt: float, f):
    """Generic three-stage third-order SSP Runge-Kutta step.

    Returns the new value and the second (mid-step) stage.
    """
    s1 = y + dt * f(y)
    s2 = 0.75 * y + 0.25 * (s1 + dt * f(s1))
    return y / 3.0 + (2.0 / 3.0) * (s2 + dt * f(s2)), s2


@dataclass
class StepRecord:
    """Per-step log entry."""

    index: int
    t_start: float
    dt: float
    rough_fraction: float
    wall: float


def ssprk3_step(
    state: Field,
    dt: float,
    mask: RoughnessMask,
    bcs,
    gas: GasParams,
    params: cuflux.SchemeParams,
    indicator,
    source=None,
    stats: dict | None = None,
):
    """Advance one full step; returns (new state, stage-two indicator field).

    Every stage refreshes ghost cells before evaluating the tendency; the
    indicator snapshot is extracted from the mid-step stage (ghosts included)
    right after its tendency evaluation.  Stage failures carry the stage
    index and offending location.
    """
    grid = state.grid

    def rhs(u_field: Field, stage: int) -> np.ndarray:
        try:
            return cuflux.semi_discrete_rhs(
                u_field, mask, bcs, gas, params, source, stats
            )
        except PhysicalStateError as exc:
            raise StepFailure(stage, exc) from exc

    k0 = rhs(state, 1)
    s1 = Field(grid, np.empty_like(state.data))
    s1.interior[...] = state.interior + dt * k0
    k1 = rhs(s1, 2)
    s2 = Field(grid, np.empty_like(state.data))
    s2.interior[...] = 0.75 * state.interior + 0.25 * (s1.interior + dt * k1)
    k2 = rhs(s2, 3)
    psi_stage2 = lsi.extract_indicator(s2.data, indicator, gas)
    out = Field(grid, np.empty_like(state.data))
    out.interior[...] = state.interior / 3.0 + (2.0 / 3.0) * (
        s2.interior + dt * k2
    )
    return out, psi_stage2


@dataclass
class EvolveResult:
    """Final state plus run diagnostics."""

    state: Field
    t: float
    records: list
    mode: str
    final_mask: RoughnessMask | None = None
    final_lsi: np.ndarray | None = None
    final_threshold: float | None = None
    wall_time: float = 0.0
    snapshots: dict = dataclass_field(default_factory=dict)
    stats: dict = dataclass_field(default_factory=dict)


def evolve(
    problem: problems.ProblemSpec,
    mode: str,
    *,
    nx: int | None = None,
    ny: int | None = None,
    c_adapt: float | None = None,
    cfl: float = 0.45,
    t_final: float | None = None,
    fixed_dt: float | None = None,
    indicator: str | None = None,
    symmetry: bool | None = None,
    scheme: cuflux.SchemeParams = cuflux.DEFAULT_SCHEME,
    initial: Field | None = None,
    t0: float = 0.0,
    snapshot_times=(),
    on_step=None,
    mask_override=None,
    max_steps: int | None = None,
) -> EvolveResult:
    """Run a benchmark to its final time.

    The first step always uses the all-rough (fully limited) mask — there is
    no indicator history yet — in every mode, so the three modes share their
    first step bit-for-bit.  From the second step on, ``limited`` keeps the
    all-rough mask, ``nonlimited`` uses the all-smooth one, and ``adaptive``
    thresholds the smeared indicator of the previous step.

    ``mask_override`` (diagnostics/testing) replaces the mask computation:
    called as ``mask_override(step_index, grid)`` and must return a
    :class:`RoughnessMask`.  ``on_step`` is called after every completed step
    with ``(record, state)``.  Snapshots are deep copies of the state at the
    first time level at or past each requested time.
    """
    if mode not in MODES:
        raise ConfigurationError(f"unknown mode {mode!r}; expected one of {MODES}")
    grid = problem.grid(nx, ny)
    gas = problem.gas
    cfg = TimeStepConfig(
        cfl=cfl,
        t_final=problem.t_final if t_final is None else float(t_final),
        fixed_dt=fixed_dt,
    )
    sel = problem.indicator if indicator is None else indicator
    adapt = AdaptiveConfig(problem.c_adapt if c_adapt is None else float(c_adapt))
    sym_op = None
    use_sym = problem.symmetry is not None if symmetry is None else symmetry
    if use_sym:
        if problem.symmetry is None:
            raise ConfigurationError(f"problem {problem.name} defines no symmetry rule")
        sym_op = problems.SYMMETRY_OPS[problem.symmetry]

    if initial is not None:
        state = initial.copy()
        grid = state.grid
    else:
        state = problems.initial_field(problem, grid)

    history = LsiHistory()
    fill_ghosts(state, problem.bcs, gas)
    history.curr = lsi.extract_indicator(state.data, sel, gas)

    t = float(t0)
    records: list[StepRecord] = []
    run_stats: dict = {}
    snapshots: dict[float, Field] = {}
    pending = sorted(float(s) for s in snapshot_times)
    final_mask = None
    final_lsi = None
    final_thr = None
    step = 0
    t_end = cfg.t_final
    time_slack = _TIME_TOL * max(1.0, abs(t_end))
    wall_start = time.perf_counter()
    while t < t_end - time_slack:
        if max_steps is not None and step >= max_steps:
            break
        dbar = None
        thr = None
        if history.complete:
            dbar = lsi.smear_lsi(lsi.pointwise_lsi(history), grid)
            thr = adapt.threshold(history.dt_prev)
        if mask_override is not None:
            mask = mask_override(step, grid)
        elif not history.complete:
            mask = RoughnessMask.all_rough(grid)
        elif mode == "limited":
            mask = RoughnessMask.all_rough(grid)
        elif mode == "nonlimited":
            mask = RoughnessMask.all_smooth(grid)
        else:
            mask = lsi.flag_rough(dbar, adapt, history.dt_prev, grid)
        final_mask, final_lsi, final_thr = mask, dbar, thr

        dt = compute_dt(state, gas, cfg, t)
        t_step = time.perf_counter()
        state, psi_stage2 = ssprk3_step(
            state, dt, mask, problem.bcs, gas, scheme, sel, problem.source, run_stats
        )
        if sym_op is not None:
            sym_op(state)
        wall = time.perf_counter() - t_step

        fill_ghosts(state, problem.bcs, gas)
        history.push(lsi.extract_indicator(state.data, sel, gas), psi_stage2, dt)

        rec = StepRecord(
            index=step, t_start=t, dt=dt, rough_fraction=mask.fraction, wall=wall
        )
        records.append(rec)
        t += dt
        step += 1
        while pending and t >= pending[0] * (1.0 - _TIME_TOL):
            snapshots[pending.pop(0)] = state.copy()
        if on_step is not None:
            on_step(rec, state)

    return EvolveResult(
        state=state,
        t=t,
        records=records,
        mode=mode,
        final_mask=final_mask,
        final_lsi=final_lsi,
        final_threshold=final_thr,
        wall_time=time.perf_counter() - wall_start,
        snapshots=snapshots,
        stats=run_stats,
    )
