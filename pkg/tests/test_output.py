import numpy as np
import pytest

from aweno import output
from aweno.euler import GasParams, cons_to_prim, prim_to_cons
from aweno.grid import Field, build_grid
from aweno.lsi import RoughnessMask
from aweno.timeint import StepRecord

GAS = GasParams(1.4)


def random_field_1d(n=16, seed=61):
    rng = np.random.default_rng(seed)
    g = build_grid((0.0, 1.0), n)
    w = np.stack(
        [rng.uniform(0.5, 2.0, n), rng.uniform(-1.0, 1.0, n), rng.uniform(0.5, 2.0, n)],
        axis=-1,
    )
    return Field.from_interior(g, prim_to_cons(w, GAS))


def random_field_2d(nx=8, ny=7, seed=67):
    rng = np.random.default_rng(seed)
    g = build_grid((0.0, 1.0), nx, (0.0, 2.0), ny)
    w = np.empty((ny, nx, 4))
    w[..., 0] = rng.uniform(0.5, 2.0, (ny, nx))
    w[..., 1] = rng.uniform(-1.0, 1.0, (ny, nx))
    w[..., 2] = rng.uniform(-1.0, 1.0, (ny, nx))
    w[..., 3] = rng.uniform(0.5, 2.0, (ny, nx))
    return Field.from_interior(g, prim_to_cons(w, GAS))


def test_snapshot_roundtrip_exact_1d(tmp_path):
    f = random_field_1d()
    path = tmp_path / "snap.csv"
    output.write_snapshot(path, f, GAS)
    names, data = output.read_snapshot(path)
    assert names == ["x", "rho", "u", "p", "E"]
    w = cons_to_prim(f.interior, GAS)
    assert np.array_equal(data[:, 1], w[:, 0])
    assert np.array_equal(data[:, 2], w[:, 1])
    assert np.array_equal(data[:, 3], w[:, 2])
    assert np.array_equal(data[:, 4], f.interior[:, 2])
    assert np.array_equal(data[:, 0], f.grid.x_centers())


def test_snapshot_roundtrip_exact_2d(tmp_path):
    f = random_field_2d()
    path = tmp_path / "snap2.csv"
    output.write_snapshot(path, f, GAS)
    names, data = output.read_snapshot(path)
    assert names == ["x", "y", "rho", "u", "v", "p", "E"]
    assert data.shape == (7 * 8, 7)
    w = cons_to_prim(f.interior, GAS)
    assert np.array_equal(data[:, 2], w[..., 0].reshape(-1))
    assert np.array_equal(data[:, 6], f.interior[..., 3].reshape(-1))


def test_snapshot_write_is_deterministic(tmp_path):
    f = random_field_1d()
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    output.write_snapshot(p1, f, GAS)
    output.write_snapshot(p2, f, GAS)
    assert p1.read_bytes() == p2.read_bytes()


def test_mask_file_1d(tmp_path):
    g = build_grid((0.0, 1.0), 8)
    mask = RoughnessMask.all_smooth(g)
    mask.x[3] = True
    path = tmp_path / "mask.csv"
    output.write_mask(path, g, mask)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "x,axis,flag"
    assert len(lines) == 1 + 9
    flags = [int(line.split(",")[-1]) for line in lines[1:]]
    assert flags == [0, 0, 0, 1, 0, 0, 0, 0, 0]


def test_mask_file_2d_counts(tmp_path):
    g = build_grid((0.0, 1.0), 8, (0.0, 1.0), 7)
    mask = RoughnessMask.all_rough(g)
    path = tmp_path / "mask2.csv"
    output.write_mask(path, g, mask)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "x,y,axis,flag"
    n_x = 7 * 9
    n_y = 8 * 8
    assert len(lines) == 1 + n_x + n_y
    axes = [line.split(",")[2] for line in lines[1:]]
    assert axes.count("x") == n_x
    assert axes.count("y") == n_y


def test_steps_log(tmp_path):
    records = [
        StepRecord(index=0, t_start=0.0, dt=0.5, rough_fraction=1.0, wall=0.1),
        StepRecord(index=1, t_start=0.5, dt=0.25, rough_fraction=0.5, wall=0.1),
    ]
    path = tmp_path / "steps.csv"
    output.write_steps(path, records)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "step,t,dt,rough_fraction"
    assert lines[1].startswith("0,0,0.5,1")
    assert lines[2].split(",")[2] == "0.25"


def test_summary_roundtrip(tmp_path):
    import json

    path = tmp_path / "summary.json"
    output.write_summary(path, {"steps": 5, "wall_time": 1.25})
    loaded = json.loads(path.read_text())
    assert loaded == {"steps": 5, "wall_time": 1.25}
