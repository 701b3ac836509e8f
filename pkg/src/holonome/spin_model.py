"""Ising dimer Hamiltonians, the triplet/singlet dimer basis and coding spaces.

Conventions, fixed once and asserted by the basis tests:
  * spin 1 is the slow (leftmost) tensor factor;
  * |+> is the sigma_z = +1 eigenvector, index 0;
  * energies are in units of J1 with hbar = 1.

One dimer:  H = -omega sz_1 - omega sz_2 + J1 sz_1 sz_2  (4 x 4, diagonal).
Two dimers: the sum of two such Hamiltonians at omega = J on spins (1, 2)
and (3, 4) respectively (16 x 16, diagonal).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from holonome.errors import DomainError
from holonome.matrix_kernel import (
    Spectrum,
    hermitian_eigensystem,
    tensor_product,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def site_operator(op, site: int, n_spins: int) -> np.ndarray:
    """Embed a single-spin operator at ``site`` (0-based, leftmost slow)."""
    factors = [ID2] * n_spins
    factors[site] = np.asarray(op, dtype=complex)
    out = factors[0]
    for f in factors[1:]:
        out = tensor_product(out, f)
    return out


@dataclass(frozen=True)
class SpinModel:
    """A dimer (or dimer-pair) Hamiltonian with its resolved spectrum."""

    n_spins: int
    couplings: dict
    hamiltonian: np.ndarray
    spectrum: Spectrum
    ground_projector: np.ndarray
    ground_energy: float

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    @property
    def ground_multiplicity(self) -> int:
        return self.spectrum.multiplicities[0]


@dataclass(frozen=True)
class DimerBasis:
    """Triplet/singlet eigenbasis of a single dimer (4-dim column vectors)."""

    t_plus: np.ndarray
    t_zero: np.ndarray
    t_minus: np.ndarray
    s_zero: np.ndarray

    def labeled(self):
        return (
            ("T+", self.t_plus),
            ("T0", self.t_zero),
            ("T-", self.t_minus),
            ("S0", self.s_zero),
        )


def dimer_basis() -> DimerBasis:
    """T+, T0, T-, S0 in the product z-basis (|++>, |+->, |-+>, |-->)."""
    rt2 = 1.0 / np.sqrt(2.0)
    return DimerBasis(
        t_plus=np.array([1, 0, 0, 0], dtype=complex),
        t_zero=np.array([0, rt2, rt2, 0], dtype=complex),
        t_minus=np.array([0, 0, 0, 1], dtype=complex),
        s_zero=np.array([0, rt2, -rt2, 0], dtype=complex),
    )


def _one_dimer_hamiltonian(omega: float, j1: float) -> np.ndarray:
    sz1 = site_operator(SIGMA_Z, 0, 2)
    sz2 = site_operator(SIGMA_Z, 1, 2)
    return -omega * sz1 - omega * sz2 + j1 * (sz1 @ sz2)


def build_one_dimer(omega: float, j1: float) -> SpinModel:
    """Single Ising dimer; at omega = j1 the ground level is 3-fold degenerate."""
    if omega <= 0 or j1 <= 0:
        raise DomainError("couplings must be positive")
    h = _one_dimer_hamiltonian(omega, j1)
    spec = hermitian_eigensystem(h)
    return SpinModel(
        n_spins=2,
        couplings={"omega": float(omega), "j1": float(j1)},
        hamiltonian=h,
        spectrum=spec,
        ground_projector=spec.projector(0),
        ground_energy=float(spec.energies[0]),
    )


def build_two_dimer(j1: float, j2: float) -> SpinModel:
    """Two decoupled dimers at their degenerate points; 9-fold ground level."""
    if j1 <= 0 or j2 <= 0:
        raise DomainError("couplings must be positive")
    h1 = _one_dimer_hamiltonian(j1, j1)
    h2 = _one_dimer_hamiltonian(j2, j2)
    id4 = np.eye(4, dtype=complex)
    h = tensor_product(h1, id4) + tensor_product(id4, h2)
    spec = hermitian_eigensystem(h)
    return SpinModel(
        n_spins=4,
        couplings={"j1": float(j1), "j2": float(j2)},
        hamiltonian=h,
        spectrum=spec,
        ground_projector=spec.projector(0),
        ground_energy=float(spec.energies[0]),
    )


def ground_basis(model: SpinModel):
    """Ordered ground-space basis: coding vectors first, then S0 products.

    Returns (labels, vectors) with vectors as columns of a full-dimension
    matrix.  Requires the model to sit at its degenerate working point.
    """
    basis = dimer_basis()
    if model.n_spins == 2:
        if model.ground_multiplicity != 3:
            raise DomainError("one-dimer model is not at its degenerate point")
        labels = ("T+", "T0", "S0")
        cols = [basis.t_plus, basis.t_zero, basis.s_zero]
    elif model.n_spins == 4:
        if model.ground_multiplicity != 9:
            raise DomainError("two-dimer model is not at its degenerate point")
        by_label = {"T+": basis.t_plus, "T0": basis.t_zero, "S0": basis.s_zero}
        coding = [("T+", "T+"), ("T+", "T0"), ("T0", "T+"), ("T0", "T0")]
        noncoding = [("T+", "S0"), ("T0", "S0"), ("S0", "T+"), ("S0", "T0"), ("S0", "S0")]
        labels = tuple(a + b for a, b in coding + noncoding)
        cols = [
            tensor_product(
                by_label[a].reshape(4, 1), by_label[b].reshape(4, 1)
            ).ravel()
            for a, b in coding + noncoding
        ]
    else:
        raise DomainError(f"unsupported spin count {model.n_spins}")
    return labels, np.column_stack(cols)


@dataclass(frozen=True)
class CodingSpace:
    """Logical subspace of the degenerate ground space.

    ``vectors`` holds the ordered logical basis as full-space columns
    (|0>_L = T+, |1>_L = T0 per dimer; two-dimer order T+T+, T+T0, T0T+,
    T0T0).  Logical operators act within the coding space only: the logical
    identity is the coding projector, not the full identity.
    """

    labels: tuple
    vectors: np.ndarray
    projector: np.ndarray
    n_logical: int

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def logical(self, axis: str, qubit: int = 0) -> np.ndarray:
        """Logical Pauli (axis in 'x', 'y', 'z', 'i') on the given qubit."""
        small = np.eye(2, dtype=complex) if axis == "i" else PAULI[axis]
        op = np.eye(1, dtype=complex)
        for q in range(self.n_logical):
            op = tensor_product(op, small if q == qubit else np.eye(2))
        return self.vectors @ op @ self.vectors.conj().T


def coding_space(model: SpinModel) -> CodingSpace:
    """Coding space C1 (one dimer, rank 2) or C2 (two dimers, rank 4)."""
    labels, vecs = ground_basis(model)
    dim_c = 2 if model.n_spins == 2 else 4
    coding_vecs = vecs[:, :dim_c]
    return CodingSpace(
        labels=labels[:dim_c],
        vectors=coding_vecs,
        projector=coding_vecs @ coding_vecs.conj().T,
        n_logical=1 if model.n_spins == 2 else 2,
    )
