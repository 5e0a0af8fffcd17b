"""Finite homogeneous deformation of the coated cylinder.

The reference radius A is deformed to aA while the axis stretches by lambda.
The traction condition on the coated surface gives one scalar relation between
a and lambda; the axial force follows from the base bulk and surface stresses.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .bulk_material import BulkMaterial, base_pk1, StretchDomainError
from .surface_material import SurfaceKind, SurfaceModel, base_surface_stress_moment

DEFAULT_BRACKET = (0.2, 3.0)
WIDEN_FACTOR = 2.0
WIDEN_TRIES = 4


class NoBracket(RuntimeError):
    """No sign change of a residual over the search interval."""

    def __init__(self, message: str, lo: float, hi: float, f_lo: float, f_hi: float):
        super().__init__(f"{message}: f({lo:.6g}) = {f_lo:.6g}, f({hi:.6g}) = {f_hi:.6g}")
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi


def _check_positive(**vals: float) -> None:
    for name, v in vals.items():
        if not np.isfinite(v) or v <= 0.0:
            raise StretchDomainError(f"{name} must be positive, got {v}")


def base_residual_generic(a: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                          radius: float = 1.0) -> float:
    """Traction balance on r = aA scaled to match the Helfrich closed form.

    8 a^2 A^3 [P33 + (Ps11 + Ms11/A)/A]
    """
    _check_positive(a=a, lam=lam, radius=radius)
    p = base_pk1(a, lam, mat)
    ps, ms = base_surface_stress_moment(surf, a, lam, radius)
    return 8.0 * a * a * radius ** 3 * (p[2, 2] + (ps[0, 0] + ms[0, 0] / radius) / radius)


def base_residual(a: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                  radius: float = 1.0) -> float:
    """Residual of the a-lambda relation; zero on the base-state branch."""
    _check_positive(a=a, lam=lam, radius=radius)
    if surf.kind is not SurfaceKind.HELFRICH:
        return base_residual_generic(a, lam, mat, surf, radius)
    mu, d = mat.mu, mat.d_modulus
    g, b, h0 = surf.gamma, surf.beta_s, surf.h0
    aa = a * radius
    return (8 * mu * a * (a * a - 1) * radius ** 3 + 4 * d * a * (a ** 4 * lam ** 2 - 1) * radius ** 3
            + 8 * g * lam * aa * aa + b * lam * (4 * aa * aa * h0 * h0 - 1))


def residual_slope(a: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                   radius: float = 1.0) -> float:
    """d(base_residual)/da by central differences."""
    h = 1e-6 * a
    return (base_residual(a + h, lam, mat, surf, radius)
            - base_residual(a - h, lam, mat, surf, radius)) / (2 * h)


def solve_azimuthal_stretch(lam: float, mat: BulkMaterial, surf: SurfaceModel, radius: float = 1.0,
                            bracket: Optional[tuple] = None) -> float:
    """Azimuthal stretch a(lambda) on the base-state branch.

    Brent's method on the bracket (widened geometrically if needed), then one
    Newton correction kept only if it lowers the residual.
    """
    _check_positive(lam=lam, radius=radius)
    lo, hi = bracket if bracket is not None else DEFAULT_BRACKET

    def f(x):
        return base_residual(x, lam, mat, surf, radius)

    f_lo, f_hi = f(lo), f(hi)
    tries = 0
    while f_lo * f_hi > 0.0:
        if bracket is not None or tries == WIDEN_TRIES:
            raise NoBracket(f"no base state for lambda = {lam:.6g}", lo, hi, f_lo, f_hi)
        lo, hi = lo / WIDEN_FACTOR, hi * WIDEN_FACTOR
        f_lo, f_hi = f(lo), f(hi)
        tries += 1
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    a = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    res = f(a)
    slope = residual_slope(a, lam, mat, surf, radius)
    if slope != 0.0:
        a_new = a - res / slope
        if a_new > 0.0 and abs(f(a_new)) < abs(res):
            a = a_new
    return float(a)


def axial_force(lam: float, a: float, mat: BulkMaterial, surf: SurfaceModel, radius: float = 1.0) -> float:
    """Resultant axial force pi A^2 P22 + 2 pi A Ps22."""
    _check_positive(a=a, lam=lam, radius=radius)
    p = base_pk1(a, lam, mat)
    ps, _ = base_surface_stress_moment(surf, a, lam, radius)
    return float(np.pi * radius ** 2 * p[1, 1] + 2 * np.pi * radius * ps[1, 1])


def axial_force_on_branch(lam: float, mat: BulkMaterial, surf: SurfaceModel, radius: float = 1.0) -> float:
    a = solve_azimuthal_stretch(lam, mat, surf, radius)
    return axial_force(lam, a, mat, surf, radius)


def dFz_dlambda(lam: float, mat: BulkMaterial, surf: SurfaceModel, radius: float = 1.0,
                rel_step: float = 1e-6) -> float:
    """Total derivative of F_z along a(lambda), central differences."""
    h = rel_step * lam
    return (axial_force_on_branch(lam + h, mat, surf, radius)
            - axial_force_on_branch(lam - h, mat, surf, radius)) / (2 * h)


def limiting_point(mat: BulkMaterial, surf: SurfaceModel, lam_bracket: tuple,
                   radius: float = 1.0) -> float:
    """Stretch at which dF_z/dlambda vanishes inside ``lam_bracket``."""
    lo, hi = lam_bracket

    def f(x):
        return dFz_dlambda(x, mat, surf, radius)

    f_lo, f_hi = f(lo), f(hi)
    if f_lo * f_hi > 0.0:
        raise NoBracket("dF_z/dlambda keeps its sign", lo, hi, f_lo, f_hi)
    return float(brentq(f, lo, hi, xtol=1e-12))


@dataclass(frozen=True)
class BaseState:
    lambda_ax: float
    a: float
    radius_ref: float
    mat: BulkMaterial
    surf: SurfaceModel

    @classmethod
    def solve(cls, lam: float, mat: BulkMaterial, surf: SurfaceModel, radius: float = 1.0,
              bracket: Optional[tuple] = None) -> "BaseState":
        return cls(lam, solve_azimuthal_stretch(lam, mat, surf, radius, bracket), radius, mat, surf)

    @property
    def residual(self) -> float:
        return base_residual(self.a, self.lambda_ax, self.mat, self.surf, self.radius_ref)

    @property
    def axial_force(self) -> float:
        return axial_force(self.lambda_ax, self.a, self.mat, self.surf, self.radius_ref)

    @property
    def current_radius(self) -> float:
        return self.a * self.radius_ref
