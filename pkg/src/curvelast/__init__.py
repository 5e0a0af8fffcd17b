"""Bifurcation analysis of soft cylinders coated with an elastic surface."""

from .base_state import BaseState, NoBracket, axial_force, dFz_dlambda, limiting_point, solve_azimuthal_stretch
from .bulk_material import BulkMaterial, StretchDomainError
from .config import ConfigError, RunConfig, load_config
from .dispersion import (BifurcationPoint, DegenerateRoots, NotARoot, bifurcation_curve, critical_stretch,
                         dispersion_det, dispersion_det_incompressible, dispersion_det_incompressible_reduced,
                         dispersion_problem)
from .surface_material import SurfaceModel, SurfacePrincipalState, surface_moduli_aligned

__all__ = [
    "BaseState", "NoBracket", "axial_force", "dFz_dlambda", "limiting_point", "solve_azimuthal_stretch",
    "BulkMaterial", "StretchDomainError", "ConfigError", "RunConfig", "load_config",
    "BifurcationPoint", "DegenerateRoots", "NotARoot", "bifurcation_curve", "critical_stretch",
    "dispersion_det", "dispersion_det_incompressible", "dispersion_det_incompressible_reduced",
    "dispersion_problem", "SurfaceModel", "SurfacePrincipalState", "surface_moduli_aligned",
]
__version__ = "0.1.0"
