"""Dense complex matrix foundation: spin operators, composition, unitarity.

Everything here works on plain complex numpy arrays.  Dimensions are tiny
(n of order 10 at most), so dense storage and full Hermitian
diagonalization are used throughout.  All functions are pure; tolerances
are explicit arguments, never hidden globals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpinOperators",
    "make_spin_operators",
    "compose",
    "is_unitary",
    "expm_hermitian_generator",
    "require_finite",
]


def require_finite(arr, name: str = "array") -> np.ndarray:
    """Return ``arr`` as a complex ndarray, rejecting NaN/Inf entries."""
    out = np.asarray(arr, dtype=complex)
    if not np.all(np.isfinite(out.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return out


@dataclass(frozen=True)
class SpinOperators:
    """Spin matrices for an n-level system (hbar = 1).

    ``sz`` is diagonal with entries F, F-1, ..., -F where F = (n-1)/2,
    and the triple satisfies [sx, sy] = i sz and cyclic permutations.
    """

    levels: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def spin(self) -> float:
        return (self.levels - 1) / 2


def make_spin_operators(n: int) -> SpinOperators:
    """Build Sx, Sy, Sz for an n-level system via ladder operators.

    Parameters
    ----------
    n : int
        Number of levels, n >= 2 (n = 2F+1; half-integer F, i.e. even n,
        is permitted).

    Returns
    -------
    SpinOperators
        Basis ordering is m = F, F-1, ..., -F (first basis vector is the
        maximal m state).
    """
    if n < 2:
        raise ValueError(f"need at least 2 levels, got n={n}")
    f = (n - 1) / 2
    m = f - np.arange(n)
    sp = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        # <m+1| S+ |m> = sqrt(F(F+1) - m(m+1))
        sp[i - 1, i] = np.sqrt(f * (f + 1) - m[i] * (m[i] + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    sz = np.diag(m.astype(complex))
    return SpinOperators(levels=n, sx=sx, sy=sy, sz=sz)


def compose(*matrices: np.ndarray) -> np.ndarray:
    """Matrix product A @ B @ ... with dimension checking."""
    if len(matrices) < 2:
        raise ValueError("compose needs at least two matrices")
    mats = [require_finite(mat, f"factor {k}") for k, mat in enumerate(matrices)]
    dim = mats[0].shape[0]
    for k, mat in enumerate(mats):
        if mat.shape != (dim, dim):
            raise ValueError(
                f"dimension mismatch: factor {k} has shape {mat.shape}, expected ({dim}, {dim})"
            )
    out = mats[0]
    for mat in mats[1:]:
        out = out @ mat
    return out


def is_unitary(mat: np.ndarray, tol: float = 1e-12) -> bool:
    """True iff the max-abs entry of M^dag M - I is at most ``tol``."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    mat = require_finite(mat, "matrix")
    n = mat.shape[0]
    return bool(np.abs(mat.conj().T @ mat - np.eye(n)).max() <= tol)


def expm_hermitian_generator(h: np.ndarray, t: float, herm_tol: float = 1e-12) -> np.ndarray:
    """exp(-i H t) for Hermitian H, computed by spectral decomposition.

    The result is unitary to machine precision regardless of ``t``.
    Raises if H is not Hermitian within ``herm_tol`` (relative to the
    largest entry).
    """
    h = require_finite(h, "generator")
    scale = max(np.abs(h).max(), 1.0)
    if np.abs(h - h.conj().T).max() > herm_tol * scale:
        raise ValueError("generator is not Hermitian")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T
