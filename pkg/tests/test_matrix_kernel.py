"""Kernel tests: exponentials, tensor products, distances, eigensystems."""

import numpy as np
import pytest

from holonome.errors import DomainError
from holonome.matrix_kernel import (
    expm_skew,
    frobenius,
    hermitian_eigensystem,
    phase_invariant_distance,
    tensor_product,
)
from holonome.spin_model import SIGMA_X, SIGMA_Y, SIGMA_Z, build_one_dimer, build_two_dimer

RNG = np.random.default_rng(20260826)


def random_unitary(dim, rng=RNG):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_antihermitian(dim, rng=RNG):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return z - z.conj().T


class TestExpmSkew:
    def test_zero_generator(self):
        assert frobenius(expm_skew(np.zeros((3, 3))) - np.eye(3)) == 0.0

    def test_pi_rotation(self):
        m = 1j * np.pi * np.diag([1.0, -1.0])
        assert frobenius(expm_skew(m) + np.eye(2)) < 1e-12

    def test_collective_spin_closure(self):
        # n . (sigma_1 + sigma_2) has eigenvalues {+-2, 0, 0}; oracle below.
        rng = np.random.default_rng(7)
        for _ in range(5):
            v = rng.normal(size=3)
            n = v / np.linalg.norm(v)
            coll = sum(
                c * (tensor_product(p, np.eye(2)) + tensor_product(np.eye(2), p))
                for c, p in zip(n, (SIGMA_X, SIGMA_Y, SIGMA_Z))
            )
            evals = np.sort(np.linalg.eigvalsh(coll))
            assert np.allclose(evals, [-2.0, 0.0, 0.0, 2.0], atol=1e-12)
            for kappa in (1, 2, 3):
                u = expm_skew(1j * kappa * np.pi * coll)
                assert frobenius(u - np.eye(4)) < 1e-12

    def test_rejects_non_antihermitian(self):
        with pytest.raises(DomainError):
            expm_skew(np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_unitarity_and_inverse(self):
        for dim in (2, 4, 9, 16):
            m = random_antihermitian(dim)
            u = expm_skew(m)
            assert frobenius(u.conj().T @ u - np.eye(dim)) < 1e-12 * dim
            assert frobenius(expm_skew(m) @ expm_skew(-m) - np.eye(dim)) < 1e-12


class TestTensorProduct:
    def test_identity(self):
        assert np.array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_zz_signs(self):
        zz = tensor_product(SIGMA_Z, SIGMA_Z)
        up_up = np.array([1, 0, 0, 0], dtype=complex)
        up_down = np.array([0, 1, 0, 0], dtype=complex)
        assert np.allclose(zz @ up_up, up_up)
        assert np.allclose(zz @ up_down, -up_down)


class TestPhaseInvariantDistance:
    def test_self_distance(self):
        u = random_unitary(4)
        assert phase_invariant_distance(u, u) < 1e-14

    def test_global_phase_removed(self):
        u = random_unitary(2)
        for phi in (0.3, np.pi, 5.9):
            assert phase_invariant_distance(u, np.exp(1j * phi) * u) < 1e-14

    def test_identity_vs_sigma_x(self):
        # tr(sigma_x) = 0, so d = sqrt(1 - 0) = 1
        assert abs(phase_invariant_distance(np.eye(2), SIGMA_X) - 1.0) < 1e-14

    def test_symmetry_and_nonnegative(self):
        u, v = random_unitary(4), random_unitary(4)
        duv = phase_invariant_distance(u, v)
        assert duv >= 0.0
        assert abs(duv - phase_invariant_distance(v, u)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            phase_invariant_distance(np.eye(2), np.eye(4))

    def test_matches_trace_formula(self):
        u, v = random_unitary(4), random_unitary(4)
        expected = np.sqrt(1.0 - abs(np.trace(u.conj().T @ v)) / 4.0)
        assert abs(phase_invariant_distance(u, v) - expected) < 1e-12


class TestHermitianEigensystem:
    def test_diagonal_with_degeneracy(self):
        spec = hermitian_eigensystem(np.diag([-1.0, -1.0, -1.0, 3.0]))
        assert np.allclose(spec.energies, [-1.0, 3.0])
        assert spec.multiplicities == (3, 1)

    def test_one_dimer_working_point(self):
        spec = build_one_dimer(1.0, 1.0).spectrum
        assert abs(spec.energies[0] + 1.0) < 1e-12
        assert spec.multiplicities[0] == 3

    def test_two_dimer_working_point(self):
        spec = build_two_dimer(1.0, 1.0).spectrum
        assert abs(spec.energies[0] + 2.0) < 1e-12
        assert spec.multiplicities[0] == 9

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            hermitian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_orthonormal_and_reconstructs(self):
        rng = np.random.default_rng(11)
        z = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        h = z + z.conj().T
        spec = hermitian_eigensystem(h)
        v = spec.vectors
        assert frobenius(v.conj().T @ v - np.eye(9)) < 1e-12
        evals = np.repeat(spec.energies, spec.multiplicities)
        assert frobenius(v @ np.diag(evals) @ v.conj().T - h) < 1e-12 * max(
            1.0, frobenius(h)
        )
