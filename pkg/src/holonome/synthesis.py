"""Discrete gate-approximation search over winding numbers and repetitions.

The realizable rotation angles form a lattice theta_kappa = kappa pi
sqrt(2 - n_z^2) that is dense modulo 2 pi whenever the step is an irrational
multiple of pi, so exhaustive scans over small winding bounds approximate any
target angle.  Tie-breaking always prefers the shortest loop (smallest kappa,
then smallest repetition count, then smallest kappa_plus): it is the cheapest
to traverse adiabatically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from holonome.deformation import OneQubitLoop, TwoQubitLoop
from holonome.errors import DomainError
from holonome.holonomy import (
    analytic_one_qubit_gate,
    analytic_two_qubit_gate,
    controlled_phase_gate,
    _rotation,
)
from holonome.matrix_kernel import is_unitary, phase_invariant_distance

TWO_PI = 2.0 * np.pi

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)

# Axis n = (1/sqrt3, 0, sqrt(2/3)) realizes the logical rotation axis
# m = (1, 0, 1)/sqrt2 with theta_kappa = 2 kappa pi / sqrt 3.
HADAMARD_AXIS = (np.sqrt(1.0 / 3.0), 0.0, np.sqrt(2.0 / 3.0))

NAMED_AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0)}


def circular_distance(delta: float) -> float:
    """Distance on the circle: min(r, 2 pi - r) with r = |delta| mod 2 pi."""
    r = abs(delta) % TWO_PI
    return float(min(r, TWO_PI - r))


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a discrete search.

    ``params`` identifies the winning lattice point; ``exhausted`` means the
    bounds were hit without meeting the tolerance (the best candidate is still
    returned: density only guarantees existence as the bounds grow).
    """

    params: dict
    angle_error: float
    gate_distance: float
    gate: np.ndarray
    exhausted: bool


def _resolve_axis(axis):
    if isinstance(axis, str):
        try:
            return np.asarray(NAMED_AXES[axis], dtype=float)
        except KeyError:
            raise DomainError(f"unknown axis name {axis!r}") from None
    return np.asarray(axis, dtype=float)


def search_rotation(axis, theta_target: float, eps: float, kappa_max: int) -> SearchResult:
    """Best winding number for a target rotation angle about a fixed axis.

    Minimizes the circular distance |(theta_target - theta_kappa) mod 2 pi|
    over 1 <= kappa <= kappa_max; ties go to the smallest kappa.
    """
    if eps <= 0:
        raise DomainError("tolerance must be positive")
    n = _resolve_axis(axis)
    # Validates unit norm and |n_z| < 1 (|n_z| = 1 would make every gate trivial).
    probe = OneQubitLoop.create(n, 1)
    step = probe.theta_kappa
    best_kappa, best_err = 1, circular_distance(theta_target - step)
    for kappa in range(2, int(kappa_max) + 1):
        err = circular_distance(theta_target - kappa * step)
        if err < best_err:
            best_kappa, best_err = kappa, err
    loop = OneQubitLoop.create(n, best_kappa)
    gate = analytic_one_qubit_gate(loop).gamma
    target = _rotation(theta_target, loop.m)
    return SearchResult(
        params={"kappa": best_kappa},
        angle_error=best_err,
        gate_distance=phase_invariant_distance(gate, target),
        gate=gate,
        exhausted=best_err >= eps,
    )


# Change of frame mapping the z-y-z Euler decomposition into y-x-y: the
# conjugation S sigma_z S^dag = sigma_y, S sigma_y S^dag = sigma_x.
_FRAME = None


def _frame() -> np.ndarray:
    global _FRAME
    if _FRAME is None:
        axis = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)
        _FRAME = _rotation(-np.pi / 3.0, axis)  # half-angle pi/3, sense -2pi/3
    return _FRAME


def _euler_zyz(su2: np.ndarray):
    """Angles (alpha, beta, gamma) with U = Rz(alpha) Ry(beta) Rz(gamma).

    Half-angle convention: Rn(t) = exp(-i t n . sigma / 2).
    """
    a, b = su2[0, 0], su2[0, 1]
    beta = 2.0 * np.arctan2(abs(b), abs(a))
    if abs(a) < 1e-12:
        # anti-diagonal: only alpha - gamma is determined
        alpha = 2.0 * np.angle(su2[1, 0])
        gamma = 0.0
    elif abs(b) < 1e-12:
        alpha = 2.0 * np.angle(su2[1, 1])
        gamma = 0.0
    else:
        s = -np.angle(a)  # (alpha + gamma) / 2
        d = np.angle(su2[1, 0])  # (alpha - gamma) / 2
        alpha, gamma = s + d, s - d
    return alpha, beta, gamma


def euler_yxy(target: np.ndarray):
    """Angles (alpha, beta, gamma) with target ~ Ry(alpha) Rx(beta) Ry(gamma).

    The target may carry a global phase; the decomposition is of its SU(2)
    representative.
    """
    u = np.asarray(target, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u):
        raise DomainError("target must be a 2 x 2 unitary")
    su2 = u / np.sqrt(np.linalg.det(u))
    frame = _frame()
    return _euler_zyz(frame.conj().T @ su2 @ frame)


@dataclass(frozen=True)
class SynthesisProgram:
    """A sequence of axis rotations approximating a one-qubit target."""

    steps: tuple  # of (axis_name, SearchResult)
    composite: np.ndarray
    total_distance: float
    exhausted: bool


def synthesize_su2(target, eps_per_rotation: float, kappa_max: int) -> SynthesisProgram:
    """Approximate an arbitrary 2 x 2 unitary by y-x-y holonomic rotations."""
    u = np.asarray(target, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u):
        raise DomainError("target must be a 2 x 2 unitary")
    if phase_invariant_distance(u, np.eye(2)) < 1e-12:
        return SynthesisProgram(
            steps=(), composite=np.eye(2, dtype=complex), total_distance=0.0,
            exhausted=False,
        )
    alpha, beta, gamma = euler_yxy(u)
    steps = []
    composite = np.eye(2, dtype=complex)
    for axis_name, angle in (("y", alpha), ("x", beta), ("y", gamma)):
        theta = 0.5 * angle  # full-angle exponent convention exp(-i theta sigma)
        if circular_distance(theta) < 1e-12:
            continue
        result = search_rotation(axis_name, theta, eps_per_rotation, kappa_max)
        steps.append((axis_name, result))
        composite = composite @ result.gate
    return SynthesisProgram(
        steps=tuple(steps),
        composite=composite,
        total_distance=phase_invariant_distance(composite, u),
        exhausted=any(r.exhausted for _, r in steps),
    )


def admissible_winding_pairs(kappa_plus_max: int):
    """All (kappa_+, kappa_-) with kappa_+ < kappa_- < 3 kappa_+."""
    return [
        (kp, km)
        for kp in range(1, int(kappa_plus_max) + 1)
        for km in range(kp + 1, 3 * kp)
    ]


def coupling_strength(kappa_plus: int, kappa_minus: int) -> float:
    """Closed-form inter-dimer coupling for a closed two-qubit loop."""
    return (np.pi / (2.0 * np.sqrt(2.0))) * np.sqrt(kappa_minus**2 - kappa_plus**2)


def search_controlled_phase(
    theta_target: float, eps: float, kappa_plus_max: int, n_max: int
) -> SearchResult:
    """Best repeated controlled-phase loop for a target z-rotation angle.

    Scans repetitions n and admissible winding pairs for the smallest circular
    error |(2 n J - theta_target) mod 2 pi|; ties go to the smallest n, then
    the smallest kappa_plus.  The returned gate is the repeated controlled
    phase (e^{i 2 J sigma_z} conditioned on the control)^n.
    """
    if eps <= 0:
        raise DomainError("tolerance must be positive")
    pairs = admissible_winding_pairs(kappa_plus_max)
    best = None  # (err, n, kp, km)
    for n in range(1, int(n_max) + 1):
        for kp, km in pairs:
            err = circular_distance(2.0 * n * coupling_strength(kp, km) - theta_target)
            if best is None or err < best[0]:
                best = (err, n, kp, km)
    err, n, kp, km = best
    j = coupling_strength(kp, km)
    gate = np.linalg.matrix_power(controlled_phase_gate(2.0 * j), n)
    target = controlled_phase_gate(theta_target)
    return SearchResult(
        params={"kappa_plus": kp, "kappa_minus": km, "n": n},
        angle_error=err,
        gate_distance=phase_invariant_distance(gate, target),
        gate=gate,
        exhausted=err >= eps,
    )


def repeated_exact_gate(kappa_plus: int, kappa_minus: int, n: int, kappa_prime: int = 1) -> np.ndarray:
    """(exp(-A|C2))^n for the winning loop, for auditing the repetition scheme."""
    loop = TwoQubitLoop.create(kappa_plus, kappa_minus, kappa_prime)
    return np.linalg.matrix_power(analytic_two_qubit_gate(loop).gamma_exact, n)


def equidistribution_scan(step: float, k_list) -> dict:
    """Covering radius of {kappa * step mod 2 pi : 0 <= kappa <= K} per K.

    The covering radius is half the largest circular gap between consecutive
    points; it is non-increasing in K and decays to zero iff step / pi is
    irrational.
    """
    out = {}
    for k_max in k_list:
        pts = np.sort(np.arange(0, int(k_max) + 1) * step % TWO_PI)
        gaps = np.diff(np.concatenate([pts, [pts[0] + TWO_PI]]))
        out[int(k_max)] = float(np.max(gaps) / 2.0)
    return out


def figure_table(which: str, caption_convention: bool = False):
    """Tabular data behind the paper-style figures.

    Returns (header, rows).  ``fig3`` uses the x-rotation angle convention
    theta_kappa = sqrt 2 kappa pi; pass ``caption_convention=True`` for the
    2 kappa pi / sqrt 3 variant.
    """
    if which == "fig2":
        header = ["kappa", "theta", "sin_theta"]
        rows = []
        for kappa in range(21):
            theta = 2.0 * kappa * np.pi / np.sqrt(3.0)
            rows.append((kappa, theta, float(np.sin(theta))))
        return header, rows
    if which == "fig3":
        header = ["kappa", "theta_mod_2pi", "cos_theta", "sin_theta"]
        step = 2.0 * np.pi / np.sqrt(3.0) if caption_convention else np.sqrt(2.0) * np.pi
        rows = []
        for kappa in range(11):
            theta = (kappa * step) % TWO_PI
            rows.append((kappa, theta, float(np.cos(theta)), float(np.sin(theta))))
        return header, rows
    if which == "fig4":
        header = ["kappa_plus", "kappa_minus", "J", "two_J_mod_2pi", "cos_2J", "sin_2J"]
        rows = []
        for kp, km in admissible_winding_pairs(5):
            j = coupling_strength(kp, km)
            rows.append(
                (kp, km, j, (2.0 * j) % TWO_PI, float(np.cos(2 * j)), float(np.sin(2 * j)))
            )
        return header, rows
    raise DomainError(f"unknown figure {which!r}")
