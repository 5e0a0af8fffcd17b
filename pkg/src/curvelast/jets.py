"""Linear forms in the displacement jets at the coated surface r = aA.

A linear form is a coefficient vector over the symbols

    u, u_z, ..., u_z^6;  v, ..., v_z^6;  u_r, ..., u_r z^6;  v_r, ..., v_r z^6

so that axial differentiation is an index shift and substitution of a normal
mode exp(ikz) is a dot product. Tensors of linear forms are arrays with the
form axis last.
"""

import numpy as np

MAX_ORDER = 6
FIELDS = ("u", "v", "u_r", "v_r")
NSYM = len(FIELDS) * (MAX_ORDER + 1)


def _index(field: str, order: int) -> int:
    if order < 0 or order > MAX_ORDER:
        raise ValueError(f"derivative order {order} outside 0..{MAX_ORDER}")
    return FIELDS.index(field) * (MAX_ORDER + 1) + order


def symbol(field: str, order: int = 0) -> np.ndarray:
    """Linear form for the ``order``-th z-derivative of ``field``."""
    out = np.zeros(NSYM)
    out[_index(field, order)] = 1.0
    return out


def zero_form() -> np.ndarray:
    return np.zeros(NSYM)


def dz(form: np.ndarray) -> np.ndarray:
    """Axial derivative of a form (or of every form in a tensor of forms)."""
    form = np.asarray(form, dtype=float)
    out = np.zeros_like(form)
    for f in range(len(FIELDS)):
        base = f * (MAX_ORDER + 1)
        if np.any(form[..., base + MAX_ORDER] != 0.0):
            raise ValueError("z-derivative exceeds the supported jet order")
        out[..., base + 1: base + MAX_ORDER + 1] = form[..., base: base + MAX_ORDER]
    return out


def coefficient(form: np.ndarray, field: str, order: int = 0) -> float:
    return float(np.asarray(form)[..., _index(field, order)])


def evaluate_mode(form: np.ndarray, ik: complex, f: complex, fp: complex,
                  g: complex, gp: complex) -> complex:
    """Substitute u = f e^{ikz}, v = g e^{ikz}; fp, gp are radial derivatives."""
    powers = ik ** np.arange(MAX_ORDER + 1)
    vals = np.concatenate([f * powers, g * powers, fp * powers, gp * powers])
    return np.tensordot(np.asarray(form), vals, axes=([-1], [0]))


def describe(form: np.ndarray, atol: float = 0.0) -> dict:
    """Nonzero coefficients keyed by readable symbol names."""
    out = {}
    for f, name in enumerate(FIELDS):
        for n in range(MAX_ORDER + 1):
            c = float(form[f * (MAX_ORDER + 1) + n])
            if abs(c) > atol:
                out[name + ("_" + "z" * n if n else "")] = c
    return out
