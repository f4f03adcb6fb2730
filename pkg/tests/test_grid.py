import numpy as np
import pytest

from aweno.errors import ConfigurationError
from aweno.euler import GasParams, prim_to_cons
from aweno.grid import (
    BoundarySet,
    Dirichlet,
    Field,
    Free,
    Periodic,
    SolidWall,
    build_grid,
    fill_ghosts,
    total_integrals,
)

GAS = GasParams(1.4)


def test_build_grid_uniform_spacing():
    g = build_grid((0.0, 1.0), 100)
    assert g.dx == pytest.approx(0.01)
    assert g.x_centers()[0] == pytest.approx(0.005)


def test_build_grid_symmetric_domain():
    g = build_grid((-5.0, 5.0), 400)
    assert g.dx == pytest.approx(1.0 / 40.0)


def test_build_grid_2d_square():
    g = build_grid((0.0, 1.2), 1000, (0.0, 1.2), 1000)
    assert g.dx == pytest.approx(3.0 / 2500.0)
    assert g.dy == pytest.approx(3.0 / 2500.0)


@pytest.mark.parametrize(
    "extent,n",
    [((1.0, 0.0), 100), ((0.0, 1.0), 0), ((0.0, 1.0), -5), ((0.0, 1.0), 6)],
)
def test_build_grid_rejects_bad_config(extent, n):
    with pytest.raises(ConfigurationError):
        build_grid(extent, n)


def test_periodic_fill_wraps():
    g = build_grid((0.0, 1.0), 8)
    vals = np.arange(8.0)[:, None] * np.ones(3)
    f = Field.from_interior(g, vals)
    fill_ghosts(f, BoundarySet(left=Periodic(), right=Periodic()))
    assert np.array_equal(f.data[: g.ghost, 0], [5.0, 6.0, 7.0])
    assert np.array_equal(f.data[g.ghost + 8 :, 0], [0.0, 1.0, 2.0])


def test_solid_wall_mirrors_and_negates_momentum():
    g = build_grid((0.0, 1.0), 8)
    vals = np.tile([1.0, 2.0, 5.0], (8, 1))
    f = Field.from_interior(g, vals)
    fill_ghosts(f, BoundarySet(left=SolidWall(), right=Free()))
    assert np.array_equal(f.data[g.ghost - 1], [1.0, -2.0, 5.0])


def test_free_fill_copies_edge_cell():
    g = build_grid((0.0, 1.0), 8)
    vals = np.tile([1.0, 0.0, 2.5], (8, 1))
    vals[0] = [1.5, 0.25, 3.0]
    f = Field.from_interior(g, vals)
    fill_ghosts(f, BoundarySet(left=Free(), right=Free()))
    for m in range(g.ghost):
        assert np.array_equal(f.data[m], [1.5, 0.25, 3.0])


def test_dirichlet_fill_writes_conserved_image():
    g = build_grid((0.0, 1.0), 8)
    f = Field.from_interior(g, np.tile([1.0, 0.0, 2.5], (8, 1)))
    bcs = BoundarySet(left=Dirichlet((2.0, 0.0, 1.0)), right=Free())
    fill_ghosts(f, bcs, GAS)
    expected = prim_to_cons(np.array([2.0, 0.0, 1.0]), GAS)
    assert np.allclose(f.data[: g.ghost], expected)


def test_periodic_requires_pairing():
    with pytest.raises(ConfigurationError):
        BoundarySet(left=Periodic(), right=Free())


def test_periodic_fill_is_bit_exact():
    rng = np.random.default_rng(7)
    g = build_grid((0.0, 1.0), 16)
    f = Field.from_interior(g, rng.uniform(0.5, 2.0, (16, 3)))
    fill_ghosts(f, BoundarySet(left=Periodic(), right=Periodic()))
    interior = f.interior
    for m in range(g.ghost):
        assert np.array_equal(f.data[m], interior[16 - g.ghost + m])
        assert np.array_equal(f.data[g.ghost + 16 + m], interior[m])


def test_solid_wall_fill_is_idempotent():
    rng = np.random.default_rng(3)
    g = build_grid((0.0, 1.0), 12)
    f = Field.from_interior(g, rng.uniform(0.5, 2.0, (12, 3)))
    bcs = BoundarySet(left=SolidWall(), right=SolidWall())
    fill_ghosts(f, bcs)
    once = f.data.copy()
    fill_ghosts(f, bcs)
    assert np.array_equal(f.data, once)


def test_corner_ghosts_defined_in_2d():
    rng = np.random.default_rng(11)
    g = build_grid((0.0, 1.0), 8, (0.0, 1.0), 10)
    f = Field(g, np.full(g.padded_shape(), np.nan))
    f.interior[...] = rng.uniform(0.5, 2.0, (10, 8, 4))
    fill_ghosts(f, BoundarySet(left=Free(), right=Free(), bottom=Free(), top=Free()))
    assert np.all(np.isfinite(f.data))


def test_2d_periodic_corner_consistency():
    rng = np.random.default_rng(13)
    g = build_grid((0.0, 1.0), 8, (0.0, 1.0), 8)
    f = Field(g, np.full(g.padded_shape(), np.nan))
    f.interior[...] = rng.uniform(0.5, 2.0, (8, 8, 4))
    fill_ghosts(
        f,
        BoundarySet(left=Periodic(), right=Periodic(), bottom=Periodic(), top=Periodic()),
    )
    gh = g.ghost
    # corner ghost equals the diagonally wrapped interior value
    assert np.array_equal(f.data[gh - 1, gh - 1], f.interior[7, 7])


def test_total_integrals_constant_field():
    g = build_grid((0.0, 1.0), 10)
    f = Field.from_interior(g, np.tile([1.0, 0.0, 2.5], (10, 1)))
    assert np.allclose(total_integrals(f), [1.0, 0.0, 2.5])


def test_total_integrals_linear_in_field():
    rng = np.random.default_rng(5)
    g = build_grid((0.0, 2.0), 20)
    vals = rng.uniform(0.5, 2.0, (20, 3))
    f1 = Field.from_interior(g, vals)
    f2 = Field.from_interior(g, 2.0 * vals)
    assert np.allclose(2.0 * total_integrals(f1), total_integrals(f2))
    f3 = Field.from_interior(g, vals + vals[::-1])
    other = Field.from_interior(g, vals[::-1])
    assert np.allclose(
        total_integrals(f3), total_integrals(f1) + total_integrals(other)
    )


def test_total_integrals_sod_mass():
    from aweno.problems import initial_field, make_problem

    spec = make_problem("sod")
    f = initial_field(spec, spec.grid(100))
    assert total_integrals(f)[0] == pytest.approx(0.5625, abs=1e-14)
