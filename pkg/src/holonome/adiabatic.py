"""Exact and ODE propagators for the deformed Hamiltonian, and fidelity sweeps.

In the co-rotating frame the generator of the dynamics is the *constant*
Hermitian matrix -iX + HT, so the full-loop propagator has the closed form
U(1) = exp(X) exp(-i(-iX + HT)) and is exact at any T.  A classical RK4
integration of the Schrodinger equation with the tau-dependent Hamiltonian
is kept alongside purely as an independent oracle against construction bugs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from holonome.deformation import DeformationGenerator
from holonome.errors import DomainError
from holonome.holonomy import HolonomyGate
from holonome.matrix_kernel import expm_skew
from holonome.spin_model import SpinModel, coding_space


@dataclass(frozen=True)
class AdiabaticRun:
    """One point of an adiabatic sweep: exact propagator and its quality."""

    T: float
    propagator: np.ndarray
    fidelity: float
    leakage: float
    dynamical_phase: complex


def exact_propagator(model: SpinModel, gen: DeformationGenerator, T: float) -> np.ndarray:
    """Full-loop propagator exp(X) exp(-i(-iX + HT)); exact for any T >= 0."""
    rotating_frame = -1j * gen.x + model.hamiltonian * T  # Hermitian
    return expm_skew(gen.x) @ expm_skew(-1j * rotating_frame)


def ode_propagator(model: SpinModel, gen: DeformationGenerator, T: float, steps: int) -> np.ndarray:
    """RK4 integration of i dU/dtau = T H(tau) U with H(tau) = e^{X tau} H e^{-X tau}."""
    if steps < 1:
        raise DomainError("steps must be >= 1")
    # X = W diag(i lam) W^dag with lam real, so e^{X tau} = W diag(e^{i lam tau}) W^dag.
    lam, w = np.linalg.eigh(1j * gen.x)
    lam = -lam  # X = -i (iX); e^{X tau} has phases e^{-i lam_iX tau}
    h0 = w.conj().T @ model.hamiltonian @ w

    def h_tau(tau):
        phases = np.exp(1j * lam * tau)
        core = (phases[:, None] * h0) * phases.conj()[None, :]
        return w @ core @ w.conj().T

    dim = model.dim
    u = np.eye(dim, dtype=complex)
    dt = 1.0 / steps
    h_lo = h_tau(0.0)
    for n in range(steps):
        tau = n * dt
        h_mid = h_tau(tau + 0.5 * dt)
        h_hi = h_tau(tau + dt)
        k1 = -1j * T * (h_lo @ u)
        k2 = -1j * T * (h_mid @ (u + 0.5 * dt * k1))
        k3 = -1j * T * (h_mid @ (u + 0.5 * dt * k2))
        k4 = -1j * T * (h_hi @ (u + dt * k3))
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        h_lo = h_hi
    return u


def holonomy_fidelity(u, gate: HolonomyGate, model: SpinModel, T: float):
    """(fidelity, leakage) of a propagator against the predicted holonomy.

    The coding-block restriction of U is phase-corrected by exp(+i E0 T)
    before comparison; fidelity is |tr(Gamma^dag V)| / dim_C.  Leakage
    measures escape from the *ground space* under evolution started in the
    coding space.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (model.dim, model.dim):
        raise DomainError("propagator dimension does not match the model")
    coding = coding_space(model)
    c = coding.vectors
    dim_c = c.shape[1]
    if gate.gamma.shape != (dim_c, dim_c):
        raise DomainError("gate dimension does not match the model's coding space")
    v = (c.conj().T @ u @ c) * np.exp(1j * model.ground_energy * T)
    fidelity = float(abs(np.trace(gate.gamma.conj().T @ v)) / dim_c)
    escaped = model.ground_projector @ u @ c
    leakage = float(1.0 - np.linalg.norm(escaped) ** 2 / dim_c)
    return min(fidelity, 1.0), min(max(leakage, 0.0), 1.0)


def adiabatic_sweep(model, gen, gate, t_list) -> list:
    """One exact-propagator run per total time T, ordered by T."""
    t_list = sorted(float(t) for t in t_list)
    if not t_list or t_list[0] <= 0:
        raise DomainError("T_list must be non-empty and positive")
    runs = []
    for T in t_list:
        u = exact_propagator(model, gen, T)
        fidelity, leakage = holonomy_fidelity(u, gate, model, T)
        runs.append(
            AdiabaticRun(
                T=T,
                propagator=u,
                fidelity=fidelity,
                leakage=leakage,
                dynamical_phase=complex(np.exp(-1j * model.ground_energy * T)),
            )
        )
    return runs
