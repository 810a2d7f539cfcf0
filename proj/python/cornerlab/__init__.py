"""Penalized approximation of a particle hitting the corner of an angular domain."""

from ._core import (
    ConeGeometry,
    CornerlabError,
    InitialData,
    characteristic_roots,
    classify_region,
    critical_point,
    first_asymptotic_R1,
    first_crossing_time,
    integrate_corner,
    limit_trajectory,
    lyapunov_eigenvalues,
    phase_portrait,
    project_onto_cone,
    scaled_params_direct,
    scaled_params_from_physical,
    simulate,
    tangent_cone_project,
)

__all__ = [
    "ConeGeometry",
    "CornerlabError",
    "InitialData",
    "characteristic_roots",
    "classify_region",
    "critical_point",
    "first_asymptotic_R1",
    "first_crossing_time",
    "integrate_corner",
    "limit_trajectory",
    "lyapunov_eigenvalues",
    "phase_portrait",
    "project_onto_cone",
    "scaled_params_direct",
    "scaled_params_from_physical",
    "simulate",
    "tangent_cone_project",
]
