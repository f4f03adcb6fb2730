import numpy as np
import pytest

from aweno.grid import BoundarySet, Periodic
from aweno.problems import ProblemSpec


def traveling_wave_init(x):
    w = np.empty(x.shape + (3,))
    w[..., 0] = 1.0 + 0.5 * np.sin(np.pi * x)
    w[..., 1] = 1.0
    w[..., 2] = 1.0
    return w


def traveling_wave_density(x, t):
    return 1.0 + 0.5 * np.sin(np.pi * (x - t))


@pytest.fixture(scope="session")
def traveling_wave():
    """Smooth advected density wave: exact solution is the shifted profile."""
    return ProblemSpec(
        name="traveling-wave",
        dim=1,
        x_extent=(0.0, 2.0),
        t_final=0.1,
        bcs=BoundarySet(left=Periodic(), right=Periodic()),
        init=traveling_wave_init,
        c_adapt=1.0,
        nx_default=100,
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the sweep kernels once so timed tests see no JIT cost."""
    from aweno import problems, timeint

    timeint.evolve(problems.make_problem("sod"), "adaptive", nx=32, max_steps=3)
    timeint.evolve(
        problems.make_problem("explosion"), "adaptive", nx=12, ny=12, max_steps=2
    )
