"""Majorana lift of a two-level propagator to 2F+1 levels.

A two-level unitary

    [[alpha, beta], [-conj(beta), conj(alpha)]],   |alpha|^2 + |beta|^2 = 1

is an SU(2) element.  When an n-level Hamiltonian is linear in the spin
operators (A(t) I + sum_i D_i(t) S_i), its propagator is the spin-(n-1)/2
irreducible representation of the two-level one, evaluated on the same
(alpha, beta).  The matrix elements below come from the symmetric-power
(Schwinger boson) construction, which is the Wigner rotation matrix in
Cayley-Klein parameters; for n = 3 it reduces to the familiar template

    [[a^2, sqrt(2) a b, b^2],
     [-sqrt(2) a b*, |a|^2 - |b|^2, sqrt(2) a* b],
     [b*^2, -sqrt(2) a* b*, a*^2]].

The lift does not apply to Hamiltonians with terms quadratic in the spin
operators (e.g. quadratic Zeeman shifts).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = ["TwoLevelPropagator", "lift", "lift_diagonal_phase"]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class TwoLevelPropagator:
    """The (alpha, beta) pair defining a two-level unitary propagator."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not (np.isfinite([a.real, a.imag, b.real, b.imag]).all()):
            raise ValueError("propagator amplitudes must be finite")
        dev = abs(abs(a) ** 2 + abs(b) ** 2 - 1.0)
        if dev > _NORM_TOL:
            raise ValueError(
                f"|alpha|^2 + |beta|^2 deviates from 1 by {dev:.3e} (tol {_NORM_TOL})"
            )

    def as_matrix(self) -> np.ndarray:
        a, b = complex(self.alpha), complex(self.beta)
        return np.array([[a, b], [-np.conj(b), np.conj(a)]])

    def transposed(self) -> "TwoLevelPropagator":
        """Pair of the transposed matrix (alpha unchanged, beta -> -conj(beta))."""
        return TwoLevelPropagator(self.alpha, -np.conj(self.beta))

    @classmethod
    def from_matrix(cls, mat: np.ndarray, tol: float = 1e-10) -> "TwoLevelPropagator":
        """Read (alpha, beta) off a 2x2 matrix, checking the SU(2) structure."""
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        a, b = mat[0, 0], mat[0, 1]
        if abs(mat[1, 0] + np.conj(b)) > tol or abs(mat[1, 1] - np.conj(a)) > tol:
            raise ValueError("matrix is not of the form [[a, b], [-b*, a*]]")
        nrm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
        return cls(a / nrm, b / nrm)


def lift(p: TwoLevelPropagator, n: int) -> np.ndarray:
    """Lift a two-level propagator to the n-level spin representation.

    Parameters
    ----------
    p : TwoLevelPropagator
        The (alpha, beta) pair; its unit-norm invariant is enforced at
        construction.
    n : int
        Target level count, n >= 2.  ``lift(p, 2)`` returns exactly
        ``p.as_matrix()``.

    Returns
    -------
    numpy.ndarray
        Unitary n x n matrix, basis ordered m = F, ..., -F.

    Notes
    -----
    Binomial factors are evaluated through log-gamma, so the lift stays
    accurate (unitarity defect well below 1e-10) up to n of order 30.
    """
    if n < 2:
        raise ValueError(f"need at least 2 levels, got n={n}")
    a = complex(p.alpha)
    b = complex(p.beta)
    if n == 2:
        return p.as_matrix()
    c, d = -np.conj(b), np.conj(a)
    twoj = n - 1
    out = np.zeros((n, n), dtype=complex)
    lg = gammaln(np.arange(twoj + 2))  # lg[k] = log k! shifted by one
    for col in range(n):
        jm = twoj - col   # powers drawn from the (a, c) column
        jmm = col         # powers drawn from the (b, d) column
        for row in range(n):
            jp = twoj - row
            acc = 0.0 + 0.0j
            for pw in range(max(0, jp - jmm), min(jm, jp) + 1):
                q = jp - pw
                logc = (lg[jm + 1] - lg[pw + 1] - lg[jm - pw + 1]
                        + lg[jmm + 1] - lg[q + 1] - lg[jmm - q + 1])
                acc += np.exp(logc) * a ** pw * c ** (jm - pw) * b ** q * d ** (jmm - q)
            pref = 0.5 * (lg[jp + 1] + lg[twoj - jp + 1] - lg[jm + 1] - lg[jmm + 1])
            out[row, col] = acc * np.exp(pref)
    return out


def lift_diagonal_phase(sigma: float, n: int) -> np.ndarray:
    """Lift of diag(e^{-i sigma/2}, e^{i sigma/2}) to n levels.

    Equals diag(e^{-i sigma m}) over m = F, ..., -F; for n = 3 this is
    diag(e^{-i sigma}, 1, e^{i sigma}).
    """
    if n < 2:
        raise ValueError(f"need at least 2 levels, got n={n}")
    if not np.isfinite(sigma):
        raise ValueError("sigma must be finite")
    f = (n - 1) / 2
    m = f - np.arange(n)
    return np.diag(np.exp(-1j * sigma * m))
