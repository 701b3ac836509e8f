"""Dense complex linear-algebra kernel.

Everything downstream works with small (<= 16 x 16) dense complex matrices:
Hamiltonians, deformation generators and the unitaries they produce.  Matrix
exponentials of anti-Hermitian arguments are computed through a Hermitian
eigendecomposition rather than Pade scaling-and-squaring, which keeps the
results unitary to machine precision at these dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from holonome.errors import DomainError

# Global default for Hermiticity/unitarity checks; override by assignment.
DEFAULT_TOL = 1e-10

# Eigenvalues closer than this (relative to max(1, ||H||)) form one
# degenerate group.  All model spectra here have gaps of order 1.
DEGENERACY_RTOL = 1e-9


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def is_unitary(u, tol=None) -> bool:
    u = _as_square(u)
    return frobenius(u.conj().T @ u - np.eye(u.shape[0])) < _tol(tol) * u.shape[0]


def expm_skew(m, tol=None) -> np.ndarray:
    """Exponential of an anti-Hermitian matrix, exactly unitary.

    Diagonalizes the Hermitian matrix iM and exponentiates the (real)
    eigenvalues, so the result satisfies U U^dag = I to machine precision.
    """
    m = _as_square(m)
    scale = max(1.0, frobenius(m))
    if frobenius(m + m.conj().T) > _tol(tol) * scale:
        raise DomainError("expm_skew requires an anti-Hermitian argument")
    herm = 1j * m  # Hermitian
    herm = 0.5 * (herm + herm.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    return (evecs * np.exp(-1j * evals)) @ evecs.conj().T


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the first factor slow (leftmost)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def phase_invariant_distance(u, v, tol=None) -> float:
    """Gate distance insensitive to a global phase.

    d(U, V) = sqrt(1 - |tr(U^dag V)| / dim), zero iff U = e^{i phi} V.
    Evaluated as min over phi of ||U - e^{i phi} V||_F / sqrt(2 dim), which
    is the same quantity but stays accurate down to machine precision when
    the gates nearly coincide.
    """
    u = _as_square(u)
    v = _as_square(v)
    if u.shape != v.shape:
        raise DomainError(f"dimension mismatch: {u.shape} vs {v.shape}")
    if not (is_unitary(u, tol) and is_unitary(v, tol)):
        raise DomainError("phase_invariant_distance requires unitary inputs")
    overlap = np.trace(u.conj().T @ v)
    phase = np.exp(-1j * np.angle(overlap)) if abs(overlap) > 0 else 1.0
    return float(frobenius(u - phase * v) / np.sqrt(2.0 * u.shape[0]))


@dataclass(frozen=True)
class Spectrum:
    """Eigensystem of a Hermitian matrix with degenerate groups resolved.

    ``energies`` holds one representative value per degenerate group in
    ascending order, ``multiplicities`` the group sizes, and ``vectors`` the
    orthonormal eigenvectors as columns, grouped to match.
    """

    energies: np.ndarray
    multiplicities: tuple
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def group_vectors(self, level: int) -> np.ndarray:
        """Orthonormal columns spanning the ``level``-th degenerate group."""
        start = int(sum(self.multiplicities[:level]))
        return self.vectors[:, start : start + self.multiplicities[level]]

    def projector(self, level: int) -> np.ndarray:
        v = self.group_vectors(level)
        return v @ v.conj().T


def hermitian_eigensystem(h, tol=None) -> Spectrum:
    """Eigendecomposition with gap-threshold degeneracy grouping."""
    h = _as_square(h)
    scale = max(1.0, frobenius(h))
    if frobenius(h - h.conj().T) > _tol(tol) * scale:
        raise DomainError("hermitian_eigensystem requires a Hermitian argument")
    evals, evecs = np.linalg.eigh(0.5 * (h + h.conj().T))
    gap = DEGENERACY_RTOL * scale
    energies = []
    mults = []
    last = None
    for w in evals:
        if last is not None and w - last < gap:
            mults[-1] += 1
        else:
            energies.append(float(w))
            mults.append(1)
        last = w
    return Spectrum(
        energies=np.array(energies), multiplicities=tuple(mults), vectors=evecs
    )
