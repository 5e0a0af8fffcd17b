"""Surface constitutive laws, base surface stress/moment and surface moduli.

Surface energies are isotropic functions of the surface right Cauchy-Green
tensor C and the relative curvature kappa. Two representations are used:

* principal form Psi^p(l1, l2, k1, k2) at aligned states, with analytic first
  and second derivatives;
* invariant form Psi^i(I1, ..., I6) with
  I1 = tr C, I2 = det C, I3 = tr kappa, I4 = det kappa,
  I5 = tr(C kappa), I6 = tr(C kappa e), e = [[0, 1], [-1, 0]] in (e_theta, e_z).

Moduli are the push-forwards of the second derivatives of Psi with respect to
(F_s, kappa) to the intermediate configuration, stored in the orthonormal basis
(e_theta, e_z, e_r). B_s and D_s act on symmetric curvature increments and are
stored symmetrized over their last index pair.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import jets
from .tensor_core import THETA, Z, R, Tensor4Block, double_contract

PERM = np.array([[0.0, 1.0], [-1.0, 0.0]])
STRETCH_TOL = 1e-8
CURV_TOL = 1e-8


class SurfaceKind(Enum):
    TENSION = "tension"
    STRETCH = "stretch"
    HELFRICH = "helfrich"
    GENERIC = "generic"


@dataclass(frozen=True)
class GenericEnergy:
    """User-supplied surface energy for ``SurfaceKind.GENERIC``.

    principal: x=(l1, l2, k1, k2) -> (Psi, grad[4], hess[4x4])
    coupling:  x -> (dPsi/dI5, grad of dPsi/dI5 over x); None means I5-free
    invariant: I[6] -> (d[6], dd[6x6]); needed by the FD oracle
    """

    principal: Callable
    coupling: Optional[Callable] = None
    invariant: Optional[Callable] = None


@dataclass(frozen=True)
class SurfaceModel:
    kind: SurfaceKind
    gamma: float = 0.0
    alpha_s: float = 0.0
    beta_s: float = 0.0
    h0: float = 0.0
    generic: Optional[GenericEnergy] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("gamma", "alpha_s", "beta_s"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not np.isfinite(self.h0):
            raise ValueError("h0 must be finite")
        if self.kind is SurfaceKind.STRETCH and self.beta_s != 0.0:
            raise ValueError("stretch-resistance model requires beta_s = 0")
        if self.kind is SurfaceKind.HELFRICH and self.alpha_s != 0.0:
            raise ValueError("Helfrich model requires alpha_s = 0")
        if self.kind is SurfaceKind.TENSION and (self.alpha_s or self.beta_s):
            raise ValueError("tension-only model requires alpha_s = beta_s = 0")
        if self.kind is SurfaceKind.GENERIC and self.generic is None:
            raise ValueError("generic model needs a GenericEnergy")

    @classmethod
    def tension(cls, gamma: float) -> "SurfaceModel":
        return cls(SurfaceKind.TENSION, gamma=gamma)

    @classmethod
    def stretch(cls, gamma: float, alpha_s: float) -> "SurfaceModel":
        return cls(SurfaceKind.STRETCH, gamma=gamma, alpha_s=alpha_s)

    @classmethod
    def helfrich(cls, gamma: float, beta_s: float, h0: float = 0.0) -> "SurfaceModel":
        return cls(SurfaceKind.HELFRICH, gamma=gamma, beta_s=beta_s, h0=h0)

    @classmethod
    def from_generic(cls, energy: GenericEnergy) -> "SurfaceModel":
        return cls(SurfaceKind.GENERIC, generic=energy)

    @property
    def curvature_free(self) -> bool:
        return self.kind in (SurfaceKind.TENSION, SurfaceKind.STRETCH) or (
            self.kind is SurfaceKind.HELFRICH and self.beta_s == 0.0)


@dataclass(frozen=True)
class SurfacePrincipalState:
    lam1: float
    lam2: float
    kap1: float
    kap2: float
    radius_ref: Optional[float] = None

    def __post_init__(self):
        if not (self.lam1 > 0.0 and self.lam2 > 0.0):
            raise ValueError("principal stretches must be positive")

    @classmethod
    def cylinder(cls, a: float, lam: float, radius: float) -> "SurfacePrincipalState":
        """Base state of the coated cylinder: stretches (a, lam), curvatures (a/A, 0)."""
        return cls(a, lam, a / radius, 0.0, radius)

    @property
    def x(self) -> np.ndarray:
        return np.array([self.lam1, self.lam2, self.kap1, self.kap2])

    @property
    def js(self) -> float:
        return self.lam1 * self.lam2

    def deformation(self) -> tuple:
        """(F_s as 3x2, kappa as 2x2) in the principal frame."""
        f = np.array([[self.lam1, 0.0], [0.0, self.lam2], [0.0, 0.0]])
        return f, np.diag([self.kap1, self.kap2])


@dataclass(frozen=True)
class SurfaceInvariants:
    values: np.ndarray

    @classmethod
    def from_state(cls, s: SurfacePrincipalState) -> "SurfaceInvariants":
        return cls(principal_invariants(s.x))

    @classmethod
    def from_matrices(cls, f: np.ndarray, kappa: np.ndarray) -> "SurfaceInvariants":
        return cls(matrix_invariants(f, kappa))


@dataclass
class SurfaceModuli:
    A_s: Tensor4Block
    B_s: Tensor4Block
    C_s: Tensor4Block
    D_s: Tensor4Block
    js_bar: float

    def blocks(self) -> dict:
        return {"A": self.A_s, "B": self.B_s, "C": self.C_s, "D": self.D_s}


# ---------------------------------------------------------------- invariants

def principal_invariants(x) -> np.ndarray:
    l1, l2, k1, k2 = x
    return np.array([l1 * l1 + l2 * l2, (l1 * l2) ** 2, k1 + k2, k1 * k2,
                     l1 * l1 * k1 + l2 * l2 * k2, 0.0])


def _invariant_jacobians(x):
    """dI/dx (6x4) and d2I/dx2 (6x4x4) at x = (l1, l2, k1, k2)."""
    l1, l2, k1, k2 = x
    jac = np.zeros((6, 4))
    hes = np.zeros((6, 4, 4))
    jac[0, :2] = 2 * l1, 2 * l2
    hes[0, 0, 0] = hes[0, 1, 1] = 2.0
    jac[1, :2] = 2 * l1 * l2 * l2, 2 * l1 * l1 * l2
    hes[1, 0, 0] = 2 * l2 * l2
    hes[1, 1, 1] = 2 * l1 * l1
    hes[1, 0, 1] = hes[1, 1, 0] = 4 * l1 * l2
    jac[2, 2:] = 1.0
    jac[3, 2:] = k2, k1
    hes[3, 2, 3] = hes[3, 3, 2] = 1.0
    jac[4] = 2 * l1 * k1, 2 * l2 * k2, l1 * l1, l2 * l2
    hes[4, 0, 0] = 2 * k1
    hes[4, 1, 1] = 2 * k2
    hes[4, 0, 2] = hes[4, 2, 0] = 2 * l1
    hes[4, 1, 3] = hes[4, 3, 1] = 2 * l2
    return jac, hes


def principal_from_invariant(d: np.ndarray, dd: np.ndarray, x) -> tuple:
    """Gradient and Hessian of Psi^p from invariant derivatives (chain rule)."""
    jac, hes = _invariant_jacobians(x)
    grad = jac.T @ d
    hess = jac.T @ dd @ jac + np.tensordot(d, hes, axes=1)
    return grad, hess


def matrix_invariants(f: np.ndarray, kappa: np.ndarray) -> np.ndarray:
    """Six invariants of (C = F^T F, sym kappa); complex-safe."""
    c = f.T @ f
    k = 0.5 * (kappa + kappa.T)
    return np.array([c[0, 0] + c[1, 1],
                     c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0],
                     k[0, 0] + k[1, 1],
                     k[0, 0] * k[1, 1] - k[0, 1] * k[1, 0],
                     np.sum(c * k.T),
                     np.trace(c @ k @ PERM)])


# ------------------------------------------------------ principal-form energy

def _jacobian_parts(x):
    l1, l2 = x[0], x[1]
    jv = l1 * l2
    dj = np.array([l2, l1, 0.0, 0.0])
    ddj = np.zeros((4, 4))
    ddj[0, 1] = ddj[1, 0] = 1.0
    return jv, dj, ddj


def _mean_curvature_parts(x, h0):
    """h = k1/(2 l1^2) + k2/(2 l2^2) + H0 with gradient and Hessian."""
    l1, l2, k1, k2 = x
    h = k1 / (2 * l1 ** 2) + k2 / (2 * l2 ** 2) + h0
    dh = np.array([-k1 / l1 ** 3, -k2 / l2 ** 3, 0.5 / l1 ** 2, 0.5 / l2 ** 2])
    ddh = np.zeros((4, 4))
    ddh[0, 0] = 3 * k1 / l1 ** 4
    ddh[1, 1] = 3 * k2 / l2 ** 4
    ddh[0, 2] = ddh[2, 0] = -1.0 / l1 ** 3
    ddh[1, 3] = ddh[3, 1] = -1.0 / l2 ** 3
    return h, dh, ddh


def principal_derivatives(model: SurfaceModel, s: SurfacePrincipalState) -> tuple:
    """(Psi^p, gradient, Hessian) over x = (l1, l2, k1, k2)."""
    x = s.x
    if model.kind is SurfaceKind.GENERIC:
        val, grad, hess = model.generic.principal(x)
        return float(val), np.asarray(grad, float), np.asarray(hess, float)
    jv, dj, ddj = _jacobian_parts(x)
    if model.kind is SurfaceKind.TENSION:
        return model.gamma * jv, model.gamma * dj, model.gamma * ddj
    if model.kind is SurfaceKind.STRETCH:
        slope = model.gamma + model.alpha_s * (jv - 1.0)
        val = model.gamma * jv + 0.5 * model.alpha_s * (jv - 1.0) ** 2
        return val, slope * dj, slope * ddj + model.alpha_s * np.outer(dj, dj)
    h, dh, ddh = _mean_curvature_parts(x, model.h0)
    g = model.gamma + 0.5 * model.beta_s * h * h
    dg = model.beta_s * h * dh
    ddg = model.beta_s * (np.outer(dh, dh) + h * ddh)
    val = jv * g
    grad = g * dj + jv * dg
    hess = g * ddj + np.outer(dj, dg) + np.outer(dg, dj) + jv * ddg
    return val, grad, hess


def coupling_derivatives(model: SurfaceModel, s: SurfacePrincipalState) -> tuple:
    """dPsi/dI5 at the aligned state and its gradient over x.

    Zero for energies independent of I5. For Helfrich, dPsi/dI5 = -beta h/(2 J).
    """
    x = s.x
    if model.kind is SurfaceKind.GENERIC:
        if model.generic.coupling is None:
            return 0.0, np.zeros(4)
        p5, g5 = model.generic.coupling(x)
        return float(p5), np.asarray(g5, float)
    if model.kind is not SurfaceKind.HELFRICH or model.beta_s == 0.0:
        return 0.0, np.zeros(4)
    jv, dj, _ = _jacobian_parts(x)
    h, dh, _ = _mean_curvature_parts(x, model.h0)
    p5 = -0.5 * model.beta_s * h / jv
    g5 = -0.5 * model.beta_s * (dh / jv - h * dj / jv ** 2)
    return p5, g5


def surface_energy(model: SurfaceModel, s: SurfacePrincipalState) -> float:
    """Surface energy per unit reference area."""
    return float(principal_derivatives(model, s)[0])


# ------------------------------------------------------ invariant-form energy

def invariant_derivatives(model: SurfaceModel, inv) -> tuple:
    """First (6) and second (6x6) derivatives of Psi^i at the invariants ``inv``."""
    inv = np.asarray(inv)
    if model.kind is SurfaceKind.GENERIC:
        if model.generic.invariant is None:
            raise NotImplementedError("generic energy has no invariant representation")
        d, dd = model.generic.invariant(inv)
        return np.asarray(d), np.asarray(dd)
    i1, i2, i3, _, i5, _ = inv
    dt = np.result_type(inv, float)
    d = np.zeros(6, dtype=dt)
    dd = np.zeros((6, 6), dtype=dt)
    sq = np.sqrt(i2)
    if model.kind in (SurfaceKind.TENSION, SurfaceKind.STRETCH):
        d[1] = model.gamma / (2 * sq)
        dd[1, 1] = -model.gamma / (4 * sq ** 3)
        if model.kind is SurfaceKind.STRETCH:
            d[1] += 0.5 * model.alpha_s * (1.0 - 1.0 / sq)
            dd[1, 1] += model.alpha_s / (4 * sq ** 3)
        return d, dd
    beta = model.beta_s
    h = (i1 * i3 - i5) / (2 * i2) + model.h0
    dh = np.zeros(6, dtype=dt)
    dh[0] = i3 / (2 * i2)
    dh[1] = -(i1 * i3 - i5) / (2 * i2 ** 2)
    dh[2] = i1 / (2 * i2)
    dh[4] = -1.0 / (2 * i2)
    ddh = np.zeros((6, 6), dtype=dt)
    ddh[0, 2] = ddh[2, 0] = 1.0 / (2 * i2)
    ddh[0, 1] = ddh[1, 0] = -i3 / (2 * i2 ** 2)
    ddh[1, 1] = (i1 * i3 - i5) / i2 ** 3
    ddh[1, 2] = ddh[2, 1] = -i1 / (2 * i2 ** 2)
    ddh[1, 4] = ddh[4, 1] = 1.0 / (2 * i2 ** 2)
    g = model.gamma + 0.5 * beta * h * h
    dg = beta * h * dh
    ddg = beta * (np.outer(dh, dh) + h * ddh)
    ds = np.zeros(6, dtype=dt)
    ds[1] = 1.0 / (2 * sq)
    dds = np.zeros((6, 6), dtype=dt)
    dds[1, 1] = -1.0 / (4 * sq ** 3)
    d = ds * g + sq * dg
    dd = dds * g + np.outer(ds, dg) + np.outer(dg, ds) + sq * ddg
    return d, dd


@dataclass(frozen=True)
class PolynomialInvariantEnergy:
    """Psi^i = c1 . I + 1/2 I . c2 . I, a synthetic energy for verification."""

    c1: np.ndarray
    c2: np.ndarray

    def invariant(self, inv):
        inv = np.asarray(inv)
        c2 = 0.5 * (np.asarray(self.c2) + np.asarray(self.c2).T)
        return np.asarray(self.c1) + c2 @ inv, c2.astype(np.result_type(inv, float))

    def principal(self, x):
        inv = principal_invariants(x)
        d, dd = self.invariant(inv)
        c2 = 0.5 * (np.asarray(self.c2) + np.asarray(self.c2).T)
        val = float(np.dot(self.c1, inv) + 0.5 * inv @ c2 @ inv)
        grad, hess = principal_from_invariant(d, dd, x)
        return val, grad, hess

    def coupling(self, x):
        inv = principal_invariants(x)
        d, dd = self.invariant(inv)
        jac, _ = _invariant_jacobians(x)
        return float(d[4]), dd[4] @ jac

    def as_model(self) -> SurfaceModel:
        return SurfaceModel.from_generic(
            GenericEnergy(self.principal, self.coupling, self.invariant))


def surface_stress_moment(model: SurfaceModel, f: np.ndarray, kappa: np.ndarray) -> tuple:
    """Referential surface stress P_s (3x2) and moment M_s (2x2) of Psi^i.

    P_s = 2 Psi1 F + 2 I2 Psi2 F C^{-1} + 2 Psi5 F kappa + Psi6 F (kappa e - e kappa)
    M_s = Psi3 1 + Psi4 kappa* + Psi5 C + 1/2 Psi6 (e C - C e)
    """
    f = np.asarray(f)
    k = 0.5 * (np.asarray(kappa) + np.asarray(kappa).T)
    c = f.T @ f
    inv = matrix_invariants(f, k)
    d, _ = invariant_derivatives(model, inv)
    c_inv = np.array([[c[1, 1], -c[0, 1]], [-c[1, 0], c[0, 0]]]) / inv[1]
    p = (2 * d[0] * f + 2 * inv[1] * d[1] * (f @ c_inv) + 2 * d[4] * (f @ k)
         + d[5] * (f @ (k @ PERM - PERM @ k)))
    adj = inv[2] * np.eye(2) - k
    m = d[2] * np.eye(2) + d[3] * adj + d[4] * c + 0.5 * d[5] * (PERM @ c - c @ PERM)
    return p, m


# --------------------------------------------------------- base stress/moment

def base_surface_stress_moment(model: SurfaceModel, a: float, lam: float, radius: float) -> tuple:
    """Base surface stress and moment on the cylinder as diagonal 3x3 arrays.

    Helfrich uses the closed forms; other models use principal derivatives,
    P_s,aa = dPsi^p/dl_a and M_s,aa = dPsi^p/dk_a.
    """
    if a <= 0 or lam <= 0 or radius <= 0:
        raise ValueError("a, lambda and A must be positive")
    ps = np.zeros((3, 3))
    ms = np.zeros((3, 3))
    if model.kind is SurfaceKind.HELFRICH:
        g, b, h0, aa = model.gamma, model.beta_s, model.h0, a * radius
        ps[0, 0] = g * lam + b * lam / (8 * aa ** 2) * (4 * aa ** 2 * h0 ** 2 - 4 * aa * h0 - 3)
        ps[1, 1] = g * a + b / (8 * a * radius ** 2) * (2 * aa * h0 + 1) ** 2
        ms[0, 0] = b * lam / (4 * a * aa) * (2 * aa * h0 + 1)
        ms[1, 1] = b / (4 * lam * radius) * (2 * aa * h0 + 1)
        return ps, ms
    _, grad, _ = principal_derivatives(model, SurfacePrincipalState.cylinder(a, lam, radius))
    ps[0, 0], ps[1, 1], ms[0, 0], ms[1, 1] = grad
    return ps, ms


# -------------------------------------------------------------------- moduli

def _in_plane_mask(patterns) -> np.ndarray:
    mask = np.zeros((3, 3, 3, 3), dtype=bool)
    for a in range(2):
        b = 1 - a
        lookup = {"a": a, "b": b, "3": 2}
        for p in patterns:
            mask[tuple(lookup[c] for c in p)] = True
    return mask


ALIGNED_PATTERNS = {
    "A": ("aaaa", "aabb", "abab", "abba", "3a3a"),
    "B": ("aaaa", "aabb", "abab", "abba"),
    "C": ("aaaa", "aabb", "abab", "abba", "3a3a"),
    "D": ("aaaa", "aabb", "abab", "abba"),
}
MIXED_PATTERNS = ("aaab", "aaba", "abaa", "abbb")
INVARIANT_PATTERNS = {
    "A": ALIGNED_PATTERNS["A"] + MIXED_PATTERNS + ("3a3b",),
    "B": ALIGNED_PATTERNS["B"] + MIXED_PATTERNS,
    "C": ALIGNED_PATTERNS["C"] + MIXED_PATTERNS + ("3a3b",),
    "D": ALIGNED_PATTERNS["D"] + MIXED_PATTERNS,
}


def _pack(blocks: dict, js: float, patterns: dict) -> SurfaceModuli:
    out = {}
    for name, arr in blocks.items():
        out[name] = Tensor4Block(arr / js, _in_plane_mask(patterns[name]))
    return SurfaceModuli(out["A"], out["B"], out["C"], out["D"], js)


def aligned_moduli_from_derivatives(s: SurfacePrincipalState, grad: np.ndarray, hess: np.ndarray,
                                    psi5: float = 0.0, grad5: Optional[np.ndarray] = None) -> SurfaceModuli:
    """Moduli at an aligned state from principal derivatives of Psi^p.

    ``psi5`` is dPsi/dI5 (with gradient ``grad5``); it completes the in-plane
    shear entries for energies coupled to I5 and is zero otherwise.
    """
    if grad5 is None:
        grad5 = np.zeros(4)
    lam = (s.lam1, s.lam2)
    kap = (s.kap1, s.kap2)
    js = s.js
    i2 = js * js
    blocks = {n: np.zeros((3, 3, 3, 3)) for n in "ABCD"}
    A, B, C, D = (blocks[n] for n in "ABCD")
    for a in range(2):
        la = lam[a]
        A[R, a, R, a] = la * grad[a]
        C[R, a, R, a] = la * la * grad[2 + a]
        for b in range(2):
            lb = lam[b]
            A[a, a, b, b] = la * lb * hess[a, b]
            B[a, a, b, b] = la * lb * lb * hess[a, 2 + b]
            C[a, a, b, b] = la * la * ((a == b) * grad[2 + a] + lb * hess[b, 2 + a])
            D[a, a, b, b] = la * la * lb * lb * hess[2 + a, 2 + b]
        b = 1 - a
        lb, ka, kb = lam[b], kap[a], kap[b]
        dk = ka - kb
        if abs(la - lb) > STRETCH_TOL * max(la, lb):
            A[a, b, a, b] = lb * lb / (la * la - lb * lb) * (
                la * grad[a] - lb * grad[b] - 2 * la * la * dk * psi5)
            A[a, b, b, a] = la * lb / (lb * lb - la * la) * (
                la * grad[b] - lb * grad[a] + 2 * la * lb * dk * psi5)
        else:
            # limit la -> lb of the quotients (numerators vanish there)
            dna = (grad[a] + la * hess[a, a] - lb * hess[b, a]
                   - 4 * la * dk * psi5 - 2 * la * la * dk * grad5[a])
            dnb = (grad[b] + la * hess[b, a] - lb * hess[a, a]
                   + 2 * lb * dk * psi5 + 2 * la * lb * dk * grad5[a])
            A[a, b, a, b] = lb * lb * dna / (la + lb)
            A[a, b, b, a] = -la * lb * dnb / (la + lb)
        B[a, b, a, b] = B[a, b, b, a] = i2 * psi5
        C[a, b, a, b] = lb * lb * grad[2 + b] + i2 * psi5
        C[a, b, b, a] = i2 * psi5
        if abs(dk) > CURV_TOL * max(1.0, abs(ka), abs(kb)):
            dval = i2 / (2 * dk) * (grad[2 + a] - grad[2 + b] - (la * la - lb * lb) * psi5)
        else:
            dval = 0.5 * i2 * (hess[2 + a, 2 + a] - hess[2 + b, 2 + a]
                               - (la * la - lb * lb) * grad5[2 + a])
        D[a, b, a, b] = D[a, b, b, a] = dval
    return _pack(blocks, js, ALIGNED_PATTERNS)


def surface_moduli_aligned(model: SurfaceModel, s: SurfacePrincipalState) -> SurfaceModuli:
    """Surface moduli at an aligned state from the principal form of the energy."""
    _, grad, hess = principal_derivatives(model, s)
    psi5, grad5 = coupling_derivatives(model, s)
    return aligned_moduli_from_derivatives(s, grad, hess, psi5, grad5)


def surface_moduli_invariant(d: np.ndarray, dd: np.ndarray, s: SurfacePrincipalState) -> SurfaceModuli:
    """Surface moduli at an aligned state (I6 = 0) from invariant derivatives.

    ``d[i]`` = dPsi/dI_{i+1}, ``dd[i, j]`` = d2Psi/dI_{i+1}dI_{j+1}.
    """
    d = np.asarray(d, float)
    dd = np.asarray(dd, float)

    def p(i):
        return d[i - 1]

    def pp(i, j):
        return dd[i - 1, j - 1]

    lam = (s.lam1, s.lam2)
    kap = (s.kap1, s.kap2)
    i1, i2, i3, i4, i5, _ = principal_invariants(s.x)
    blocks = {n: np.zeros((3, 3, 3, 3)) for n in "ABCD"}
    A, B, C, D = (blocks[n] for n in "ABCD")
    for a in range(2):
        b = 1 - a
        la, lb, ka, kb = lam[a], lam[b], kap[a], kap[b]
        dk = ka - kb
        eps = 1.0 if a == 0 else -1.0       # orientation of e for the (a, b) pair
        x_a = pp(1, 6) + lb ** 2 * pp(2, 6) + ka * pp(5, 6)
        x_b = pp(1, 6) + la ** 2 * pp(2, 6) + kb * pp(5, 6)
        y_a = pp(3, 6) + kb * pp(4, 6) + la ** 2 * pp(5, 6)
        y_b = pp(3, 6) + ka * pp(4, 6) + lb ** 2 * pp(5, 6)

        A[a, a, a, a] = (2 * la ** 2 * p(1) + 2 * i2 * p(2) + 2 * la ** 2 * ka * p(5)
                         + 4 * la ** 4 * pp(1, 1) + 8 * la ** 2 * i2 * pp(1, 2)
                         + 8 * la ** 4 * ka * pp(1, 5) + 4 * i2 ** 2 * pp(2, 2)
                         + 8 * la ** 2 * ka * i2 * pp(2, 5) + 4 * la ** 4 * ka ** 2 * pp(5, 5))
        A[a, a, b, b] = 4 * i2 * (p(2) + pp(1, 1) + i1 * pp(1, 2) + i3 * pp(1, 5)
                                  + i2 * pp(2, 2) + i5 * pp(2, 5) + i4 * pp(5, 5))
        A[a, a, a, b] = eps * la * lb * dk * (p(6) + 2 * la ** 2 * x_a)
        A[a, a, b, a] = eps * 2 * la ** 3 * lb * dk * x_a
        A[a, b, a, a] = eps * la * lb * dk * (p(6) + 2 * la ** 2 * x_a)
        A[a, b, b, b] = eps * 2 * la * lb ** 3 * dk * x_b
        A[a, b, a, b] = 2 * lb ** 2 * (p(1) + kb * p(5)) + dk ** 2 * i2 * pp(6, 6)
        A[a, b, b, a] = -i2 * (2 * p(2) - dk ** 2 * pp(6, 6))
        A[R, a, R, a] = 2 * la ** 2 * p(1) + 2 * i2 * p(2) + 2 * la ** 2 * ka * p(5)
        A[R, a, R, b] = eps * la * lb * dk * p(6)

        B[a, a, a, a] = (2 * la ** 4 * p(5) + 2 * la ** 4 * pp(1, 3) + 2 * la ** 4 * kb * pp(1, 4)
                         + 2 * la ** 6 * pp(1, 5) + 2 * la ** 2 * i2 * pp(2, 3)
                         + 2 * la ** 2 * i2 * kb * pp(2, 4) + 2 * la ** 4 * i2 * pp(2, 5)
                         + 2 * la ** 4 * ka * pp(3, 5) + 2 * la ** 4 * i4 * pp(4, 5)
                         + 2 * la ** 6 * ka * pp(5, 5))
        B[a, a, b, b] = 2 * i2 * (pp(1, 3) + ka * pp(1, 4) + lb ** 2 * pp(1, 5) + lb ** 2 * pp(2, 3)
                                  + ka * lb ** 2 * pp(2, 4) + lb ** 4 * pp(2, 5) + ka * pp(3, 5)
                                  + ka ** 2 * pp(4, 5) + ka * lb ** 2 * pp(5, 5))
        B[a, a, a, b] = -eps * 2 * la ** 3 * lb * (p(6) + la ** 2 * x_a)
        B[a, a, b, a] = eps * 2 * la ** 3 * lb ** 3 * x_a
        B[a, b, a, a] = eps * la ** 3 * lb * (p(6) + dk * y_a)
        B[a, b, b, b] = eps * la * lb ** 3 * (dk * y_b - p(6))
        B[a, b, a, b] = B[a, b, b, a] = i2 * p(5) + 0.5 * i2 * dk * (lb ** 2 - la ** 2) * pp(6, 6)

        C[a, a, a, a] = (la ** 2 * p(3) + la ** 2 * kb * p(4) + 3 * la ** 4 * p(5)
                         + 2 * la ** 4 * pp(1, 3) + 2 * la ** 4 * kb * pp(1, 4) + 2 * la ** 6 * pp(1, 5)
                         + 2 * la ** 2 * i2 * pp(2, 3) + 2 * la ** 2 * i2 * kb * pp(2, 4)
                         + 2 * la ** 4 * i2 * pp(2, 5) + 2 * la ** 4 * ka * pp(3, 5)
                         + 2 * la ** 4 * i4 * pp(4, 5) + 2 * la ** 6 * ka * pp(5, 5))
        C[a, a, b, b] = 2 * i2 * (pp(1, 3) + kb * pp(1, 4) + la ** 2 * pp(1, 5) + la ** 2 * pp(2, 3)
                                  + la ** 2 * kb * pp(2, 4) + la ** 4 * pp(2, 5) + kb * pp(3, 5)
                                  + kb ** 2 * pp(4, 5) + la ** 2 * kb * pp(5, 5))
        C[a, a, a, b] = eps * (0.5 * la * lb * i1 * p(6) + la ** 3 * lb * dk * y_a)
        C[a, a, b, a] = eps * la ** 3 * lb * (p(6) + dk * y_a)
        C[a, b, a, a] = -eps * (0.5 * la * lb * (3 * la ** 2 - lb ** 2) * p(6)
                                + la ** 3 * lb * (la ** 2 - lb ** 2) * x_a)
        C[a, b, b, b] = eps * la * lb ** 3 * (p(6) + (lb ** 2 - la ** 2) * x_b)
        C[a, b, a, b] = (lb ** 2 * (p(3) + ka * p(4) + i1 * p(5))
                         + 0.5 * (la ** 2 - lb ** 2) * (kb - ka) * i2 * pp(6, 6))
        C[a, b, b, a] = i2 * (p(5) - 0.5 * (la ** 2 - lb ** 2) * dk * pp(6, 6))
        C[R, a, R, a] = la ** 2 * p(3) + la ** 2 * kb * p(4) + la ** 4 * p(5)
        C[R, a, R, b] = -eps * 0.5 * la * lb * (la ** 2 - lb ** 2) * p(6)

        D[a, a, a, a] = (la ** 4 * pp(3, 3) + 2 * la ** 4 * kb * pp(3, 4) + 2 * la ** 6 * pp(3, 5)
                         + la ** 4 * kb ** 2 * pp(4, 4) + 2 * la ** 6 * kb * pp(4, 5)
                         + la ** 8 * pp(5, 5))
        D[a, a, b, b] = i2 * (p(4) + pp(3, 3) + i3 * pp(3, 4) + i1 * pp(3, 5) + i4 * pp(4, 4)
                              + i5 * pp(4, 5) + i2 * pp(5, 5))
        D[a, a, a, b] = D[a, a, b, a] = -eps * 0.5 * la ** 3 * lb * (la ** 2 - lb ** 2) * y_a
        D[a, b, a, a] = -eps * 0.5 * la ** 3 * lb * (la ** 2 - lb ** 2) * y_a
        D[a, b, b, b] = -eps * 0.5 * la * lb ** 3 * (la ** 2 - lb ** 2) * y_b
        D[a, b, a, b] = D[a, b, b, a] = 0.25 * i2 * (-2 * p(4) + (la ** 2 - lb ** 2) ** 2 * pp(6, 6))
    # symmetrize the curvature slot of B over the mixed entries
    B[:] = 0.5 * (B + B.swapaxes(2, 3))
    return _pack(blocks, s.js, INVARIANT_PATTERNS)


def push_forward(dp_df, dp_dk, dm_df, dm_dk, f, m0) -> tuple:
    """Spatial moduli from referential second derivatives at (F, M).

    dp_df[i,A,k,B] = dP_iA/dF_kB, dp_dk[i,A,C,D] = dP_iA/dkappa_CD,
    dm_df[A,B,k,C] = dM_AB/dF_kC, dm_dk[A,B,C,D] = dM_AB/dkappa_CD.
    """
    js = np.sqrt(np.linalg.det(f.T @ f))
    tau = f @ m0 @ f.T / js
    a = np.einsum("iAkB,lB,jA->ijkl", dp_df, f, f) / js
    b = np.einsum("iACD,kC,lD,jA->ijkl", dp_dk, f, f, f) / js
    c = (np.einsum("iA,jB,ABkC,lC->ijkl", f, f, dm_df, f) / js
         + np.einsum("ik,lj->ijkl", np.eye(3), tau))
    d = np.einsum("iA,jB,ABCD,kC,lD->ijkl", f, f, dm_dk, f, f) / js
    return a, b, c, d


def fd_surface_moduli_oracle(model: SurfaceModel, s: SurfacePrincipalState,
                             step: float = 1e-5) -> SurfaceModuli:
    """Moduli from central differences of the invariant-form stress and moment."""
    if not 1e-7 <= step <= 1e-4:
        raise ValueError(f"step must lie in [1e-7, 1e-4], got {step}")
    f0, k0 = s.deformation()
    _, m0 = surface_stress_moment(model, f0, k0)
    dp_df = np.zeros((3, 2, 3, 2))
    dm_df = np.zeros((2, 2, 3, 2))
    dp_dk = np.zeros((3, 2, 2, 2))
    dm_dk = np.zeros((2, 2, 2, 2))
    for k in range(3):
        for b in range(2):
            e = np.zeros((3, 2))
            e[k, b] = step
            pp_, mp = surface_stress_moment(model, f0 + e, k0)
            pm, mm = surface_stress_moment(model, f0 - e, k0)
            dp_df[:, :, k, b] = (pp_ - pm) / (2 * step)
            dm_df[:, :, k, b] = (mp - mm) / (2 * step)
    for c in range(2):
        for d in range(2):
            e = np.zeros((2, 2))
            e[c, d] = step
            pp_, mp = surface_stress_moment(model, f0, k0 + e)
            pm, mm = surface_stress_moment(model, f0, k0 - e)
            dp_dk[:, :, c, d] = (pp_ - pm) / (2 * step)
            dm_dk[:, :, c, d] = (mp - mm) / (2 * step)
    a, b, c, d = push_forward(dp_df, dp_dk, dm_df, dm_dk, f0, m0)
    full = np.ones((3, 3, 3, 3), dtype=bool)
    return SurfaceModuli(Tensor4Block(a, full), Tensor4Block(b, full),
                         Tensor4Block(c, full), Tensor4Block(d, full), s.js)


# ------------------------------------------------- incremental surface stress

@dataclass
class SurfaceChiTable:
    """Incremental actual surface stress as a 3x3 tensor of linear forms."""

    components: np.ndarray

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.components[i, j]

    def coefficient(self, i: int, j: int, field_name: str, order: int = 0) -> float:
        return jets.coefficient(self.components[i, j], field_name, order)


def _surface_divergence(t: np.ndarray, rad: float) -> np.ndarray:
    """Surface divergence on the axisymmetric cylinder of current radius ``rad``."""
    out = jets.dz(t[:, Z])
    out[R] -= t[THETA, THETA] / rad
    out[THETA] += t[R, THETA] / rad
    out += t[:, R] / rad
    return out


def cylinder_kinematics(a: float, lam: float, radius: float) -> dict:
    """Incremental surface kinematics (eta_s, omega_s, xi_s, rho_s) as forms."""
    rad = a * radius
    u0, u1, u2 = (jets.symbol("u", n) for n in range(3))
    v1 = jets.symbol("v", 1)
    shape = (3, 3, jets.NSYM)
    eta = np.zeros(shape)
    eta[THETA, THETA] = u0 / rad
    eta[Z, Z] = v1
    eta[R, Z] = u1
    omega = np.zeros(shape)
    omega[Z, Z] = u2
    xi = np.zeros(shape)
    xi[THETA, THETA] = u0 / rad
    xi[Z, Z] = v1
    xi[Z, R] = -u1
    rho = np.zeros(shape)
    rho[THETA, THETA] = u0 / rad ** 2
    rho[Z, Z] = -u2
    return {"eta": eta, "omega": omega, "xi": xi, "rho": rho}


def incremental_surface_coeffs(model: SurfaceModel, a: float, lam: float, radius: float,
                               moduli: Optional[SurfaceModuli] = None) -> SurfaceChiTable:
    """Incremental surface stress chi_s on the cylinder, assembled generically.

    chi_s = sigma - b m + n (x) i_s div_s(m) + theta_s with
    sigma = A:eta + B:rho, m = C:eta + D:rho and
    theta_s = (b eta - omega) tau - J^-1 [eta^T n (x) i_s Div(FM) + n (x) xi Div(FM)].
    """
    state = SurfacePrincipalState.cylinder(a, lam, radius)
    mod = moduli if moduli is not None else surface_moduli_aligned(model, state)
    _, mbar = base_surface_stress_moment(model, a, lam, radius)
    kin = cylinder_kinematics(a, lam, radius)
    eta, omega, xi, rho = kin["eta"], kin["omega"], kin["xi"], kin["rho"]
    rad = a * radius
    js = a * lam
    bbar = np.zeros((3, 3))
    bbar[THETA, THETA] = -1.0 / rad
    normal = np.zeros(3)
    normal[R] = 1.0
    i_s = np.diag([1.0, 1.0, 0.0])
    fbar = np.diag([a, lam, 0.0])
    tau = fbar @ mbar @ fbar.T / js
    div_fm = np.zeros(3)
    div_fm[R] = -(a / radius) * mbar[THETA, THETA]

    sigma = double_contract(mod.A_s.components, eta) + double_contract(mod.B_s.components, rho)
    m = double_contract(mod.C_s.components, eta) + double_contract(mod.D_s.components, rho)
    div_m = _surface_divergence(m, rad)
    chi = sigma - np.einsum("ik,kjn->ijn", bbar, m)
    chi += np.einsum("i,jk,kn->ijn", normal, i_s, div_m)
    bend = np.einsum("ik,kjn->ijn", bbar, eta) - omega
    theta = np.einsum("ikn,kj->ijn", bend, tau)
    eta_t_n = np.einsum("kin,k->in", eta, normal)
    theta -= np.einsum("in,j->ijn", eta_t_n, i_s @ div_fm) / js
    theta -= np.einsum("i,jkn,k->ijn", normal, xi, div_fm) / js
    return SurfaceChiTable(chi + theta)


def helfrich_chis_table(model: SurfaceModel, a: float, lam: float, radius: float) -> SurfaceChiTable:
    """Closed-form incremental surface stress of the Helfrich cylinder."""
    g, b, h0 = model.gamma, model.beta_s, model.h0
    aa = a * radius
    u0, u1, u2, u3 = (jets.symbol("u", n) for n in range(4))
    v1 = jets.symbol("v", 1)
    out = np.zeros((3, 3, jets.NSYM))
    out[THETA, THETA] = ((g + b / (8 * aa ** 2) * (4 * h0 ** 2 * aa ** 2 - 1)) * v1
                         + b / (4 * aa ** 3) * u0 - 0.5 * b * h0 * u2)
    out[Z, Z] = (g / aa + b / (8 * aa ** 3) * (4 * h0 ** 2 * aa ** 2 - 1)) * u0
    out[R, Z] = ((g + b / (8 * aa ** 2) * (4 * h0 ** 2 * aa ** 2 + 4 * h0 * aa - 1)) * u1
                 - 0.25 * b * u3)
    return SurfaceChiTable(out)
