"""Excited impurity in a 1D trapped condensate (C++ core)."""

from ._becimp import (
    Grid,
    ModelParams,
    analyze,
    count_fringes,
    dominant_frequency,
    effective_mass_ratio,
    gaussian,
    moment,
    norm2,
    project_odd,
    read_matrix,
    relax,
    run_scenario,
    thomas_fermi,
    trial_impurity,
    variational_width,
    zeno_decay,
)

__all__ = [
    "Grid",
    "ModelParams",
    "analyze",
    "count_fringes",
    "dominant_frequency",
    "effective_mass_ratio",
    "gaussian",
    "moment",
    "norm2",
    "project_odd",
    "read_matrix",
    "relax",
    "run_scenario",
    "thomas_fermi",
    "trial_impurity",
    "variational_width",
    "zeno_decay",
]
