"""Compressible neo-Hookean bulk: energy, base stress, incremental stress.

The cylinder is deformed homogeneously with principal stretches (a, lambda, a)
along (e_theta, e_z, e_r). Incremental displacement u e_r + v e_z gives the
physical displacement gradient

    eta = u/r e_theta(x)e_theta + v_z e_z(x)e_z + v_r e_z(x)e_r
          + u_z e_r(x)e_z + u_r e_r(x)e_r.
"""

from dataclasses import dataclass

import numpy as np

from .tensor_core import THETA, Z, R, Tensor4Block, diag3


class StretchDomainError(ValueError):
    """Nonpositive stretch supplied."""


def _check_stretches(*vals: float) -> None:
    for v in vals:
        if not np.isfinite(v) or v <= 0.0:
            raise StretchDomainError(f"stretches must be positive, got {v}")


@dataclass(frozen=True)
class BulkMaterial:
    """Compressible neo-Hookean solid with shear modulus mu and modulus D."""

    mu: float
    d_modulus: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not self.d_modulus >= 0.0:
            raise ValueError(f"d_modulus must be >= 0, got {self.d_modulus}")

    @property
    def nu(self) -> float:
        """Poisson ratio D / (2 (D + mu))."""
        return self.d_modulus / (2.0 * (self.d_modulus + self.mu))

    @classmethod
    def from_poisson(cls, mu: float, nu: float) -> "BulkMaterial":
        """Inverse of ``nu``: D = 2 mu nu / (1 - 2 nu)."""
        if not 0.0 <= nu < 0.5:
            raise ValueError(f"nu must lie in [0, 0.5), got {nu}")
        return cls(mu, 2.0 * mu * nu / (1.0 - 2.0 * nu))


def bulk_energy(a: float, lam: float, mat: BulkMaterial) -> float:
    """Strain energy density at principal stretches (a, lam, a)."""
    _check_stretches(a, lam)
    i1 = 2.0 * a * a + lam * lam
    jac = a * a * lam
    lnj = np.log(jac)
    return (0.5 * mat.mu * (i1 - 3.0 - 2.0 * lnj)
            + 0.5 * mat.d_modulus * (0.5 * (jac * jac - 1.0) - lnj))


def base_pk1(a: float, lam: float, mat: BulkMaterial) -> np.ndarray:
    """Diagonal first Piola-Kirchhoff stress of the homogeneous state."""
    _check_stretches(a, lam)
    mu, d = mat.mu, mat.d_modulus
    p11 = mu * (a - 1.0 / a) + 0.5 * d * (a ** 3 * lam ** 2 - 1.0 / a)
    p22 = mu * (lam - 1.0 / lam) + 0.5 * d * (a ** 4 * lam - 1.0 / lam)
    return diag3(p11, p22, p11)


@dataclass(frozen=True)
class IncrementalBulkCoeffs:
    """Coefficients of the incremental actual stress chi on the cylinder.

    chi11 = c11 u/r + d11 (u_r + v_z)
    chi22 = c22 v_z + d22 (u_r + u/r)
    chi33 = c33 u_r + d33 (v_z + u/r)
    chi23 = c23_uz u_z + c23_vr v_r
    chi32 = c32_vr v_r + c32_uz u_z
    """

    c11: float
    d11: float
    c22: float
    d22: float
    c33: float
    d33: float
    c23_uz: float
    c23_vr: float
    c32_vr: float
    c32_uz: float

    def chi(self, eta: np.ndarray) -> np.ndarray:
        """Physical chi from a physical displacement gradient of cylinder form.

        Trailing axes of ``eta`` (e.g. linear-form coefficients) pass through.
        """
        eta = np.asarray(eta)
        u_r_ = eta[THETA, THETA]
        v_z = eta[Z, Z]
        v_r = eta[Z, R]
        u_z = eta[R, Z]
        u_r = eta[R, R]
        out = np.zeros(eta.shape, dtype=np.result_type(eta, float))
        out[THETA, THETA] = self.c11 * u_r_ + self.d11 * (u_r + v_z)
        out[Z, Z] = self.c22 * v_z + self.d22 * (u_r + u_r_)
        out[R, R] = self.c33 * u_r + self.d33 * (v_z + u_r_)
        out[Z, R] = self.c23_uz * u_z + self.c23_vr * v_r
        out[R, Z] = self.c32_vr * v_r + self.c32_uz * u_z
        return out


def incremental_bulk_coeffs(a: float, lam: float, mat: BulkMaterial) -> IncrementalBulkCoeffs:
    """Closed-form coefficient table of the incremental bulk stress."""
    _check_stretches(a, lam)
    mu, d = mat.mu, mat.d_modulus
    x = d * (a ** 4 * lam ** 2 + 1.0)
    den = 2.0 * a * a * lam
    dl = d * a * a * lam
    shear = (2.0 * mu + d * (1.0 - a ** 4 * lam ** 2)) / den
    return IncrementalBulkCoeffs(
        c11=(2.0 * mu * (a * a + 1.0) + x) / den, d11=dl,
        c22=(2.0 * mu * (lam * lam + 1.0) + x) / den, d22=dl,
        c33=(2.0 * mu * (a * a + 1.0) + x) / den, d33=dl,
        c23_uz=shear, c23_vr=mu / lam,
        c32_vr=shear, c32_uz=mu * lam / (a * a),
    )


def _metric_moduli_mixed(a: float, lam: float, mat: BulkMaterial, radius: float = 1.0):
    """Mixed components A_m^j_n^l from second metric derivatives of the energy.

    Convected coordinates (Theta, Z, R) with g_1 = r e_theta, g_2 = lam e_z,
    g_3 = a e_r and G = diag(R^2, 1, 1). Returns (A_mixed, |g_i|, J).
    """
    mu, d = mat.mu, mat.d_modulus
    r = a * radius
    g_lo = np.diag([r * r, lam * lam, a * a])
    g_up = np.linalg.inv(g_lo)
    big_g_up = np.diag([1.0 / radius ** 2, 1.0, 1.0])
    jac = a * a * lam
    coef = -0.5 * mu + 0.25 * d * (jac * jac - 1.0)
    dw = 0.5 * mu * big_g_up + coef * g_up
    d2w = (0.25 * d * jac * jac * np.einsum("ij,kl->ijkl", g_up, g_up)
           - 0.5 * coef * (np.einsum("ik,jl->ijkl", g_up, g_up)
                           + np.einsum("il,jk->ijkl", g_up, g_up)))
    mixed = (4.0 * np.einsum("im,kn,ijkl->mjnl", g_lo, g_lo, d2w)
             + 2.0 * np.einsum("nm,lj->mjnl", g_lo, dw))
    return mixed, np.sqrt(np.diag(g_lo)), jac


def bulk_moduli_check(a: float, lam: float, mat: BulkMaterial, radius: float = 1.0) -> Tensor4Block:
    """Moduli in physical orthonormal components, built from the metric path.

    The result A satisfies chi = J^{-1} A : eta for physical chi and eta.
    """
    _check_stretches(a, lam)
    mixed, gnorm, _ = _metric_moduli_mixed(a, lam, mat, radius)
    # P_m^j -> physical (m, j) carries |g_j|/|g_m|; eta_(nl) = eta^n_l |g_n|/|g_l|
    scale = np.einsum("j,m,l,n->mjnl", gnorm, 1.0 / gnorm, gnorm, 1.0 / gnorm)
    return Tensor4Block(mixed * scale)


def chi_from_moduli(a: float, lam: float, mat: BulkMaterial, eta: np.ndarray) -> np.ndarray:
    """Physical incremental actual stress J^{-1} A : eta via the metric path."""
    moduli = bulk_moduli_check(a, lam, mat)
    return moduli.contract(eta) / (a * a * lam)
