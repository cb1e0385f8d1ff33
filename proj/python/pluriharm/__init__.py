"""Relative extremal functions, crosses and the Gonchar-Carleman extension."""

from ._core import (
    ArcSet,
    Cross,
    DomainError,
    InputError,
    SolverError,
    TopologyError,
    __version__,
    carleman_limit,
    g_boundary,
    hartogs_extend,
    omega_conjugate_disc,
    omega_disc,
    omega_grid,
    riemann_map_boundary,
    run_criteria,
    two_constant_bound,
)

__all__ = [
    "ArcSet",
    "Cross",
    "DomainError",
    "InputError",
    "SolverError",
    "TopologyError",
    "__version__",
    "carleman_limit",
    "g_boundary",
    "hartogs_extend",
    "omega_conjugate_disc",
    "omega_disc",
    "omega_grid",
    "riemann_map_boundary",
    "run_criteria",
    "two_constant_bound",
]
