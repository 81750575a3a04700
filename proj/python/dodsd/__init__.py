"""Discrete-ordinate streamline-diffusion DG solver for 2D radiative transfer."""

from ._dodsd import (
    DodsdError,
    Mesh,
    compare_methods,
    convergence_study,
    load_mesh,
    m_bound,
    refine,
    save_mesh,
    solve,
    unit_square_mesh,
)

__all__ = [
    "DodsdError",
    "Mesh",
    "compare_methods",
    "convergence_study",
    "load_mesh",
    "m_bound",
    "refine",
    "save_mesh",
    "solve",
    "unit_square_mesh",
]
