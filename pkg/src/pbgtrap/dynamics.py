"""Exact reduced dynamics of one and two independent qubits.

Single-qubit basis: (|1>, |0>), excited first.
Two-qubit basis: (|11>, |10>, |01>, |00>), which is ``np.kron`` of the
single-qubit ordering, so product states need no reshuffling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .band_edge import amplitude_q

INPUT_TOL = 1e-8


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class BellLikeState:
    """alpha|01> + e^{i gamma} b |10> (phi) or alpha|00> + e^{i gamma} b |11> (psi)."""

    family: str
    alpha: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.family not in ("phi", "psi"):
            raise ValueError("family must be 'phi' or 'psi'")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")

    @property
    def b(self) -> float:
        return math.sqrt(1.0 - self.alpha**2)


@dataclass(frozen=True)
class StateDiagnostics:
    hermiticity_residual: float
    trace_residual: float
    min_eigenvalue: float

    def is_valid(self, tol: float = INPUT_TOL) -> bool:
        return (
            self.hermiticity_residual < tol
            and self.trace_residual < tol
            and self.min_eigenvalue > -tol
        )


def validate_density_matrix(rho) -> StateDiagnostics:
    """Hermiticity residual, trace residual and smallest eigenvalue of ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    tr = float(abs(np.trace(rho) - 1.0))
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return StateDiagnostics(herm, tr, float(evals[0]))


def _checked(rho, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise InvalidStateError(f"expected a {dim}x{dim} matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    diag = validate_density_matrix(rho)
    if not diag.is_valid():
        raise InvalidStateError(f"not a density matrix: {diag}")
    return rho


def evolve_single_qubit(rho0, d: float, tau: float) -> np.ndarray:
    rho0 = _checked(rho0, 2)
    q = amplitude_q(d, tau)
    p = abs(q) ** 2
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = rho0[0, 0].real * p
    out[0, 1] = rho0[0, 1] * q
    out[1, 0] = np.conj(out[0, 1])
    out[1, 1] = 1.0 - out[0, 0].real
    return out


def build_bell_like(state: BellLikeState) -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    phase = np.exp(1j * state.gamma) * state.b
    if state.family == "phi":
        psi[2] = state.alpha  # |01>
        psi[1] = phase  # |10>
    else:
        psi[3] = state.alpha  # |00>
        psi[0] = phase  # |11>
    return np.outer(psi, psi.conj())


def apply_two_qubit_map(rho0: np.ndarray, q: complex) -> np.ndarray:
    """Two-qubit map for a known amplitude ``q``; no input validation."""
    p = abs(q) ** 2
    r = rho0
    out = np.empty((4, 4), dtype=complex)
    out[0, 0] = r[0, 0].real * p * p
    out[1, 1] = r[0, 0].real * p * (1.0 - p) + r[1, 1].real * p
    out[2, 2] = r[0, 0].real * p * (1.0 - p) + r[2, 2].real * p
    out[3, 3] = 1.0 - (out[0, 0].real + out[1, 1].real + out[2, 2].real)
    out[0, 1] = r[0, 1] * q * p
    out[0, 2] = r[0, 2] * q * p
    out[0, 3] = r[0, 3] * q * q
    out[1, 2] = r[1, 2] * p
    out[1, 3] = r[0, 2] * q * (1.0 - p) + r[1, 3] * q
    out[2, 3] = r[0, 1] * q * (1.0 - p) + r[2, 3] * q
    for i in range(4):
        out[i, i] = out[i, i].real
        for j in range(i + 1, 4):
            out[j, i] = np.conj(out[i, j])
    return out


def evolve_two_qubit(rho0, d: float, tau: float) -> np.ndarray:
    rho0 = _checked(rho0, 4)
    return apply_two_qubit_map(rho0, amplitude_q(d, tau))
