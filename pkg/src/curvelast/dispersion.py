"""Axisymmetric bifurcation of the coated cylinder.

Normal modes u = f(r) e^{ikz}, v = g(r) e^{ikz}. Each characteristic root
Q = q^2 gives a bounded mode f = I1(kqr), g = c I0(kqr). The two boundary
conditions on r = aA evaluated on the two modes form a 2x2 matrix whose
determinant vanishes at bifurcation.

Normalization of Omega (used by every compressible evaluation):

* mode j is divided by s_j exp(s_j aA), s_j = k q_j, so columns stay finite
  for large arguments and depend smoothly on Q;
* the first boundary row (purely imaginary on these modes) is multiplied by -i;
* the determinant is divided by (Q1 - Q2), which removes the trivial zero at
  coincident roots, and multiplied by OMEGA_SIGN so that it carries the sign
  of the reduced incompressible closed form.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import jets
from .base_state import BaseState, NoBracket, solve_azimuthal_stretch
from .bulk_material import BulkMaterial, incremental_bulk_coeffs
from .special_fn import bessel_i, bessel_i_ratio01, bessel_i_scaled
from .surface_material import SurfaceKind, SurfaceModel, incremental_surface_coeffs
from .tensor_core import THETA, Z, R

OMEGA_SIGN = 1.0
DEGENERATE_TOL = 1e-10
DEGENERATE_SWITCH = 1e-5
MODE_TOL = 1e-8
SCAN_STEPS = 64
WINDOW = 0.2
INCOMPRESSIBLE_PROXY = 1e8
REDUCED_SWITCH = 1e-3


class DegenerateRoots(ArithmeticError):
    """The two characteristic roots coincide."""


class NotARoot(ArithmeticError):
    """A mode does not satisfy the incremental equilibrium equations."""


# ----------------------------------------------------------- bulk operator

def _bulk_constants(a: float, lam: float, mat: BulkMaterial) -> tuple:
    mu, d = mat.mu, mat.d_modulus
    x = d * (a ** 4 * lam ** 2 + 1.0)
    k1 = 2 * mu * (1 + lam ** 2) + x
    k2 = 2 * mu * (1 + a ** 2) + x
    k3 = 2 * mu + x
    return k1, k2, k3


def characteristic_polynomial(qsq: float, a: float, lam: float, mat: BulkMaterial) -> float:
    """(2 mu a^2 Q - K1)(K2 Q - 2 mu lam^2) + K3^2 Q, zero at both roots Q = q^2."""
    k1, k2, k3 = _bulk_constants(a, lam, mat)
    mu = mat.mu
    return (2 * mu * a * a * qsq - k1) * (k2 * qsq - 2 * mu * lam * lam) + k3 * k3 * qsq


def _roots(a: float, lam: float, mat: BulkMaterial) -> tuple:
    k1, k2, _ = _bulk_constants(a, lam, mat)
    return (lam / a) ** 2, k1 / k2


def characteristic_roots(a: float, lam: float, mat: BulkMaterial) -> tuple:
    """Squared radial root parameters (q1^2, q2^2) = ((lam/a)^2, K1/K2)."""
    q1sq, q2sq = _roots(a, lam, mat)
    if abs(q1sq - q2sq) < DEGENERATE_TOL:
        raise DegenerateRoots(f"q1^2 = {q1sq:.12g} and q2^2 = {q2sq:.12g} coincide")
    return q1sq, q2sq


def q2_probe(a: float, lam: float, mat: BulkMaterial) -> dict:
    """Decide whether the printed moduli ratio K1/K2 is q2 or q2^2."""
    k1, k2, _ = _bulk_constants(a, lam, mat)
    ratio = k1 / k2
    scale = max(abs(characteristic_polynomial(0.0, a, lam, mat)), 1.0)
    as_square = characteristic_polynomial(ratio, a, lam, mat) / scale
    as_root = characteristic_polynomial(ratio ** 2, a, lam, mat) / scale
    verdict = "q2^2" if abs(as_square) < abs(as_root) else "q2"
    return {"ratio": ratio, "residual_if_q2sq": as_square, "residual_if_q2": as_root,
            "verdict": verdict}


def _amplitude_over_s(k: float, qsq: float, a: float, lam: float, mat: BulkMaterial) -> complex:
    """c / s where g = c I0(sr), s = k q, taken from the axial equilibrium equation."""
    k1, _, k3 = _bulk_constants(a, lam, mat)
    return -1j * k * k3 / (2 * mat.mu * a * a * k * k * qsq - k * k * k1)


def _scaled_bessel_set(x: float) -> tuple:
    """e^{-x} (I0, I1, I1', I1'') at x >= 0."""
    i0 = bessel_i_scaled(0, x)
    i1 = bessel_i_scaled(1, x)
    if x == 0.0:
        return i0, i1, 0.5, 0.0
    if x < 1.0:
        i2 = bessel_i(0, x) - 2.0 * bessel_i(1, x) / x if x > 0.5 else _i2_series(x)
        i2 *= math.exp(-x)
    else:
        i2 = i0 - 2.0 * i1 / x
    d1 = i0 - i1 / x
    return i0, i1, d1, i1 - i2 / x


def _i2_series(x: float) -> float:
    y = 0.25 * x * x
    term = 0.5 * y
    total = term
    m = 0
    while term > 1e-18 * total and m < 60:
        m += 1
        term *= y / (m * (m + 2))
        total += term
    return total


def mode_pde_residuals(k: float, qsq: float, c: complex, a: float, lam: float, mat: BulkMaterial,
                       r: float) -> tuple:
    """Relative residuals of both equilibrium equations for u = I1(sr), v = c I0(sr)."""
    k1, k2, k3 = _bulk_constants(a, lam, mat)
    mu = mat.mu
    s = k * math.sqrt(qsq)
    x = s * r
    i0, i1, d1, d2 = _scaled_bessel_set(x)
    f, fp, fpp = i1, s * d1, s * s * d2
    g, gp, gpp = c * i0, c * s * i1, c * s * s * d1
    ik = 1j * k
    t1 = (k1 * ik * ik * g, 2 * mu * a * a * gpp, k3 * ik * fp, 2 * mu * a * a * gp / r, k3 * ik * f / r)
    t2 = (2 * mu * lam * lam * ik * ik * f, k3 * ik * gp, k2 * fpp, k2 * fp / r, -k2 * f / r ** 2)
    out = []
    for terms in (t1, t2):
        scale = sum(abs(t) for t in terms)
        out.append(abs(sum(terms)) / scale if scale > 0.0 else 0.0)
    return tuple(out)


def mode_amplitude_ratio(k: float, q: float, a: float, lam: float, mat: BulkMaterial,
                         radius: float = 1.0, radii: Optional[Sequence[float]] = None) -> complex:
    """c with u = I1(kqr) e^{ikz}, v = c I0(kqr) e^{ikz} solving both PDEs."""
    if k <= 0.0 or q <= 0.0:
        raise ValueError("k and q must be positive")
    qsq = q * q
    c = _amplitude_over_s(k, qsq, a, lam, mat) * k * q
    rr = radii if radii is not None else [f * a * radius for f in (0.2, 0.5, 1.0)]
    worst = max(max(mode_pde_residuals(k, qsq, c, a, lam, mat, r)) for r in rr)
    if worst > MODE_TOL:
        raise NotARoot(f"q^2 = {qsq:.12g} leaves relative PDE residual {worst:.3e}")
    return c


# ------------------------------------------------------- boundary conditions

def boundary_forms(a: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                   radius: float = 1.0) -> np.ndarray:
    """Both boundary conditions on r = aA as linear forms, shape (2, NSYM).

    bc1 = chi_23 - d(chi_s22)/dz,  bc2 = chi_33 - d(chi_s32)/dz + chi_s11/(aA).
    """
    rad = a * radius
    eta = np.zeros((3, 3, jets.NSYM))
    eta[THETA, THETA] = jets.symbol("u") / rad
    eta[Z, Z] = jets.symbol("v", 1)
    eta[Z, R] = jets.symbol("v_r")
    eta[R, Z] = jets.symbol("u", 1)
    eta[R, R] = jets.symbol("u_r")
    chi = incremental_bulk_coeffs(a, lam, mat).chi(eta)
    chis = incremental_surface_coeffs(surf, a, lam, radius).components
    bc1 = chi[Z, R] - jets.dz(chis[Z, Z])
    bc2 = chi[R, R] - jets.dz(chis[R, Z]) + chis[THETA, THETA] / rad
    return np.stack([bc1, bc2])


def boundary_forms_helfrich(a: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                            radius: float = 1.0) -> np.ndarray:
    """Closed-form Helfrich boundary conditions, shape (2, NSYM)."""
    if surf.kind is not SurfaceKind.HELFRICH:
        raise ValueError("closed-form boundary conditions exist for the Helfrich model only")
    mu, d = mat.mu, mat.d_modulus
    g, b, h0 = surf.gamma, surf.beta_s, surf.h0
    aa = a * radius
    sym = jets.symbol
    bc1 = (mu / lam * sym("v_r")
           + ((2 * mu + d * (1 - a ** 4 * lam ** 2)) / (2 * a * a * lam) - g / aa
              + b / (8 * aa ** 3) * (1 - 4 * h0 ** 2 * aa ** 2)) * sym("u", 1))
    bc2 = (0.25 * b * sym("u", 4)
           - (g + b / (8 * aa ** 2) * (4 * h0 ** 2 * aa ** 2 + 8 * h0 * aa - 1)) * sym("u", 2)
           + (d * lam * a / radius + b / (4 * aa ** 4)) * sym("u")
           + (2 * mu * (a * a + 1) + d * (a ** 4 * lam ** 2 + 1)) / (2 * a * a * lam) * sym("u_r")
           + (d * a * a * lam + g / aa + b / (8 * aa ** 3) * (4 * h0 ** 2 * aa ** 2 - 1)) * sym("v", 1))
    return np.stack([bc1, bc2])


def _mode_values(k: float, qsq: float, a: float, lam: float, mat: BulkMaterial, radius: float) -> tuple:
    """(f, f', g, g') at r = aA for mode Q, divided by s exp(s aA)."""
    s = k * math.sqrt(qsq)
    x = s * a * radius
    i0, i1, d1, _ = _scaled_bessel_set(x)
    c_over_s = _amplitude_over_s(k, qsq, a, lam, mat)
    f = i1 / s if x > 0.0 else 0.5 * a * radius
    return f, d1, c_over_s * i0, c_over_s * s * i1


def _column(forms: np.ndarray, k: float, qsq: float, a: float, lam: float, mat: BulkMaterial,
            radius: float) -> np.ndarray:
    vals = _mode_values(k, qsq, a, lam, mat, radius)
    col = np.array([jets.evaluate_mode(forms[i], 1j * k, *vals) for i in range(2)])
    col[0] *= -1j
    return col


def _column_derivative(forms, k, qsq, a, lam, mat, radius) -> np.ndarray:
    """d(column)/dQ by Richardson-extrapolated central differences."""
    def cd(h):
        return (_column(forms, k, qsq + h, a, lam, mat, radius)
                - _column(forms, k, qsq - h, a, lam, mat, radius)) / (2 * h)
    h = 1e-3 * qsq
    return (4 * cd(0.5 * h) - cd(h)) / 3


def boundary_matrix(k: float, base: BaseState, path: str = "generic",
                    column_scales: tuple = (1.0, 1.0)) -> np.ndarray:
    """2x2 complex matrix: column j = both boundary conditions on mode j.

    Mode j is f = I1(k q_j r), g = c_j I0(k q_j r), times column_scales[j].
    Raw (unnormalized) amplitudes; use ``dispersion_problem`` for Omega.
    """
    if k <= 0.0:
        raise ValueError("k must be positive")
    a, lam, mat, radius = base.a, base.lambda_ax, base.mat, base.radius_ref
    q1sq, q2sq = characteristic_roots(a, lam, mat)
    forms = (boundary_forms_helfrich if path == "helfrich" else boundary_forms)(a, lam, mat, base.surf, radius)
    rad = a * radius
    out = np.zeros((2, 2), dtype=complex)
    for j, qsq in enumerate((q1sq, q2sq)):
        q = math.sqrt(qsq)
        c = mode_amplitude_ratio(k, q, a, lam, mat, radius)
        x = k * q * rad
        f, fp = bessel_i(1, x), k * q * (bessel_i(0, x) - bessel_i(1, x) / x)
        g, gp = c * bessel_i(0, x), c * k * q * bessel_i(1, x)
        for i in range(2):
            out[i, j] = column_scales[j] * jets.evaluate_mode(forms[i], 1j * k, f, fp, g, gp)
    return out


@dataclass
class DispersionProblem:
    base: BaseState
    k: float
    q1sq: float
    q2sq: float
    mode_ratios: tuple
    boundary_matrix: np.ndarray
    omega: float
    imag_ratio: float
    mode_residual: float
    degenerate: bool = False


def dispersion_problem(k: float, base: BaseState, path: str = "generic",
                       check_modes: bool = True) -> DispersionProblem:
    """Normalized Omega at (k, base) with its ingredients."""
    if k <= 0.0:
        raise ValueError("k must be positive")
    a, lam, mat, radius = base.a, base.lambda_ax, base.mat, base.radius_ref
    q1sq, q2sq = _roots(a, lam, mat)
    if path == "helfrich":
        forms = boundary_forms_helfrich(a, lam, mat, base.surf, radius)
    else:
        forms = boundary_forms(a, lam, mat, base.surf, radius)
    c1 = _column(forms, k, q1sq, a, lam, mat, radius)
    degenerate = abs(q1sq - q2sq) < DEGENERATE_SWITCH * max(q1sq, q2sq)
    if degenerate:
        c2 = _column_derivative(forms, k, 0.5 * (q1sq + q2sq), a, lam, mat, radius)
        matrix = np.column_stack([c1, c2])
        det = -np.linalg.det(matrix)
    else:
        c2 = _column(forms, k, q2sq, a, lam, mat, radius)
        matrix = np.column_stack([c1, c2])
        det = np.linalg.det(matrix) / (q1sq - q2sq)
    ratios = tuple(_amplitude_over_s(k, qq, a, lam, mat) * k * math.sqrt(qq) for qq in (q1sq, q2sq))
    worst = 0.0
    if check_modes:
        rad = a * radius
        for qq, c in zip((q1sq, q2sq), ratios):
            for frac in (0.1, 0.3, 0.5, 0.75, 1.0):
                worst = max(worst, *mode_pde_residuals(k, qq, c, a, lam, mat, frac * rad))
        if worst > MODE_TOL:
            raise NotARoot(f"mode residual {worst:.3e} at k = {k}, lambda = {lam}")
    imag_ratio = abs(det.imag) / abs(det) if det != 0 else 0.0
    return DispersionProblem(base, k, q1sq, q2sq, ratios, matrix, OMEGA_SIGN * det.real,
                             imag_ratio, worst, degenerate)


def dispersion_det(k: float, lam: float, mat: BulkMaterial, surf: SurfaceModel,
                   radius: float = 1.0) -> float:
    """Normalized Omega(k, lambda) on the base-state branch."""
    return dispersion_problem(k, BaseState.solve(lam, mat, surf, radius)).omega


# ------------------------------------------------------- incompressible limit

def dispersion_det_incompressible(k: float, lam: float, gamma: float, beta_s: float,
                                  h0: float = 0.0) -> float:
    """Closed-form incompressible determinant (mu = A = 1); vanishes at lambda = 1."""
    if k <= 0.0 or lam <= 0.0:
        raise ValueError("k and lambda must be positive")
    sl = math.sqrt(lam)
    l3 = lam ** 3
    return (-16 * sl * (l3 - 1 + 2 * k * lam * bessel_i_ratio01(k * lam))
            + 8 * k * (l3 + 1) ** 2 * bessel_i_ratio01(k / sl)
            + 8 * gamma * lam * (l3 - 1) * (k * k - lam)
            + beta_s * lam * (l3 - 1) * (4 * h0 * h0 * (k * k - lam) + 8 * h0 * k * k * sl
                                         + 2 * k ** 4 + 3 * lam * lam - k * k * lam))


def _bulk_incompressible(k: float, lam: float) -> float:
    sl = math.sqrt(lam)
    return (-16 * sl * (lam ** 3 - 1 + 2 * k * lam * bessel_i_ratio01(k * lam))
            + 8 * k * (lam ** 3 + 1) ** 2 * bessel_i_ratio01(k / sl))


def _bulk_reduced(k: float, lam: float) -> float:
    if abs(lam - 1.0) >= REDUCED_SWITCH:
        return _bulk_incompressible(k, lam) / (lam ** 3 - 1)
    # smooth quotient near lambda = 1: cubic interpolation through 1 +- h, 1 +- 2h
    h = REDUCED_SWITCH
    nodes = [1 - 2 * h, 1 - h, 1 + h, 1 + 2 * h]
    vals = [_bulk_incompressible(k, t) / (t ** 3 - 1) for t in nodes]
    total = 0.0
    for i, (ti, vi) in enumerate(zip(nodes, vals)):
        w = 1.0
        for j, tj in enumerate(nodes):
            if j != i:
                w *= (lam - tj) / (ti - tj)
        total += w * vi
    return total


def dispersion_det_incompressible_reduced(k: float, lam: float, gamma: float, beta_s: float,
                                          h0: float = 0.0) -> float:
    """Closed-form incompressible determinant with the factor (lambda^3 - 1) removed."""
    if k <= 0.0 or lam <= 0.0:
        raise ValueError("k and lambda must be positive")
    sl = math.sqrt(lam)
    return (_bulk_reduced(k, lam) + 8 * gamma * lam * (k * k - lam)
            + beta_s * lam * (4 * h0 * h0 * (k * k - lam) + 8 * h0 * k * k * sl
                              + 2 * k ** 4 + 3 * lam * lam - k * k * lam))


def incompressible_scale(k: float, lam: float) -> float:
    """Factor N with Omega -> N * reduced closed form as D -> infinity (mu = A = 1).

    N = e^{-x1-x2} I1(x1) I1(x2) / (8 k lam^{7/2}), x1 = k lam, x2 = k lam^{-1/2}.
    """
    x1, x2 = k * lam, k / math.sqrt(lam)
    return bessel_i_scaled(1, x1) * bessel_i_scaled(1, x2) / (8 * k * lam ** 3.5)


# ------------------------------------------------------------ root finding

@dataclass
class BifurcationPoint:
    k: float
    lambda_crit: float
    a: float
    omega_residual: float
    omega_scale: float = float("nan")
    status: str = "ok"
    max_mode_residual: float = 0.0

    @classmethod
    def missing(cls, k: float) -> "BifurcationPoint":
        nan = float("nan")
        return cls(k, nan, nan, nan, nan, "no_root")


@dataclass
class _Evaluator:
    k: float
    mat: Optional[BulkMaterial]
    surf: SurfaceModel
    radius: float
    incompressible: bool
    max_mode_residual: float = 0.0
    cache: dict = field(default_factory=dict)

    def __call__(self, lam: float) -> float:
        if lam in self.cache:
            return self.cache[lam]
        if self.incompressible:
            s = self.surf
            val = dispersion_det_incompressible_reduced(self.k, lam, s.gamma, s.beta_s, s.h0)
        else:
            prob = dispersion_problem(self.k, BaseState.solve(lam, self.mat, self.surf, self.radius))
            self.max_mode_residual = max(self.max_mode_residual, prob.mode_residual)
            val = prob.omega
        self.cache[lam] = val
        return val

    def azimuthal(self, lam: float) -> float:
        if self.incompressible:
            return lam ** -0.5
        return solve_azimuthal_stretch(lam, self.mat, self.surf, self.radius)


def _sign_changes(ev: _Evaluator, lo: float, hi: float, steps: int) -> tuple:
    # geometric spacing resolves the closely spaced roots found at small stretch
    grid = np.geomspace(lo, hi, steps + 1)
    vals = [ev(float(t)) for t in grid]
    brackets = [(float(grid[i]), float(grid[i + 1])) for i in range(steps)
                if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0.0]
    return brackets, vals


def critical_stretch(k: float, mat: Optional[BulkMaterial], surf: SurfaceModel, radius: float = 1.0,
                     lam_bracket: tuple = (0.5, 1.5), incompressible: bool = False,
                     seed: Optional[float] = None, steps: int = SCAN_STEPS) -> BifurcationPoint:
    """Root of Omega(k, .) in ``lam_bracket``.

    Without ``seed`` the largest root in the bracket is returned; with a seed,
    the root closest to it. ``incompressible`` uses the reduced closed form
    (mu = A = 1) and ignores ``mat``.
    """
    if k <= 0.0:
        raise ValueError("k must be positive")
    ev = _Evaluator(k, mat, surf, radius, incompressible)
    lo, hi = lam_bracket
    brackets, vals = _sign_changes(ev, lo, hi, steps)
    if not brackets:
        raise NoBracket(f"Omega keeps its sign at k = {k:.6g}", lo, hi, vals[0], vals[-1])
    if seed is None:
        b_lo, b_hi = brackets[-1]
    else:
        b_lo, b_hi = min(brackets, key=lambda b: abs(0.5 * (b[0] + b[1]) - seed))
    if ev(b_lo) == 0.0:
        lam = b_lo
    else:
        lam = brentq(ev, b_lo, b_hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)
    scale = max(abs(v) for v in vals)
    return BifurcationPoint(k, float(lam), ev.azimuthal(lam), abs(ev(lam)), scale, "ok",
                            ev.max_mode_residual)


def bifurcation_curve(k_grid: Sequence[float], mat: Optional[BulkMaterial], surf: SurfaceModel,
                      radius: float = 1.0, lam_bracket: tuple = (0.5, 1.5),
                      incompressible: bool = False) -> list:
    """Critical stretch along an increasing k grid with continuation.

    Each root seeds a +-20% window for the next k; on failure the full bracket
    is scanned. Points without a root are reported with status 'no_root'.
    """
    ks = [float(k) for k in k_grid]
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k_grid must be nonempty and strictly increasing")
    out = []
    prev = None
    for k in ks:
        point = None
        if prev is not None:
            window = (max(lam_bracket[0], prev * (1 - WINDOW)), min(lam_bracket[1], prev * (1 + WINDOW)))
            try:
                point = critical_stretch(k, mat, surf, radius, window, incompressible, seed=prev, steps=16)
            except NoBracket:
                point = None
        if point is None:
            try:
                point = critical_stretch(k, mat, surf, radius, lam_bracket, incompressible, seed=prev)
            except NoBracket:
                point = BifurcationPoint.missing(k)
        out.append(point)
        if point.status == "ok":
            prev = point.lambda_crit
    return out
