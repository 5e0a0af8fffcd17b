"""Dense tensor helpers in the fixed orthonormal basis (e_theta, e_z, e_r).

Index 0 is theta, 1 is z, 2 is r. Second-order tensors are 3x3 arrays and
fourth-order tensors are 3x3x3x3 arrays. Component arrays may carry extra
trailing axes (used for linear forms), which all operations pass through.
"""

from dataclasses import dataclass, field

import numpy as np

THETA, Z, R = 0, 1, 2
IN_PLANE = (THETA, Z)


def double_contract(t4: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """(T4 : T2)_ij = sum_kl T4_ijkl T2_kl; trailing axes of T2 are kept."""
    t4 = np.asarray(t4)
    t2 = np.asarray(t2)
    if t4.shape[:4] != (3, 3, 3, 3) or t2.shape[:2] != (3, 3):
        raise ValueError(f"shape mismatch: {t4.shape} : {t2.shape}")
    return np.tensordot(t4, t2, axes=([2, 3], [0, 1]))


def surface_project(t2: np.ndarray) -> np.ndarray:
    """Zero the e_r row and column (projection onto the tangent plane)."""
    out = np.array(t2, dtype=np.result_type(t2, float), copy=True)
    out[R, ...] = 0.0
    out[:, R, ...] = 0.0
    return out


def dyad(a: int, b: int) -> np.ndarray:
    """Basis dyad e_a (x) e_b."""
    out = np.zeros((3, 3))
    out[a, b] = 1.0
    return out


def diag3(d1: float, d2: float, d3: float) -> np.ndarray:
    return np.diag([float(d1), float(d2), float(d3)])


@dataclass
class Tensor4Block:
    """Fourth-order tensor with a declared sparsity mask.

    ``mask[i, j, k, l]`` is True where entries may be nonzero.
    """

    components: np.ndarray
    mask: np.ndarray = field(default=None)

    def __post_init__(self):
        self.components = np.asarray(self.components, dtype=float)
        if self.components.shape != (3, 3, 3, 3):
            raise ValueError("Tensor4Block needs shape (3, 3, 3, 3)")
        if self.mask is None:
            self.mask = self.components != 0.0
        else:
            self.mask = np.asarray(self.mask, dtype=bool)

    def violations(self, atol: float = 0.0) -> list:
        """Index tuples (1-based) of entries outside the mask exceeding atol."""
        bad = (~self.mask) & (np.abs(self.components) > atol)
        return [tuple(int(i) + 1 for i in idx) for idx in zip(*np.nonzero(bad))]

    def contract(self, t2: np.ndarray) -> np.ndarray:
        return double_contract(self.components, t2)

    def __getitem__(self, idx):
        return self.components[idx]
