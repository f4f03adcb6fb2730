"""Adaptive fifth-order A-WENO finite-difference solver for the Euler equations.

A finite-difference shock-capturing library built from: local characteristic
decomposition based central-upwind interface fluxes with high-order flux
corrections, limited (WENO-Z) and nonlimited fifth-order interface
interpolation, a stage-based local smoothness indicator that switches between
the two per interface, and three-stage third-order SSP Runge-Kutta time
stepping.  A benchmark registry and CLI harness drive the standard 1-D/2-D
gas-dynamics test problems.
"""

from .errors import (
    AwenoError,
    ConfigurationError,
    DecompositionError,
    PhysicalStateError,
    RegistryError,
    StepFailure,
)
from .euler import GasParams
from .grid import BoundarySet, Dirichlet, Field, Free, Grid, Periodic, SolidWall, build_grid
from .lsi import AdaptiveConfig, LsiHistory, RoughnessMask
from .problems import ProblemSpec, make_problem, problem_names
from .timeint import EvolveResult, TimeStepConfig, evolve

__version__ = "0.1.0"

__all__ = [
    "AdaptiveConfig",
    "AwenoError",
    "BoundarySet",
    "ConfigurationError",
    "DecompositionError",
    "Dirichlet",
    "EvolveResult",
    "Field",
    "Free",
    "GasParams",
    "Grid",
    "LsiHistory",
    "Periodic",
    "PhysicalStateError",
    "ProblemSpec",
    "RegistryError",
    "RoughnessMask",
    "SolidWall",
    "StepFailure",
    "TimeStepConfig",
    "build_grid",
    "evolve",
    "make_problem",
    "problem_names",
    "__version__",
]
