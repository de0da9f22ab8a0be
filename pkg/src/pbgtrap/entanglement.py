"""Concurrence: Wootters' general formula and the Bell-like closed forms."""

from __future__ import annotations

import math

import numpy as np

from .band_edge import amplitude_q, steady_amplitude_sq
from .dynamics import INPUT_TOL, _checked

_SY_SY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    return alpha


def wootters_lambdas(rho) -> np.ndarray:
    """Descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).

    They are the singular values of sqrt(rho) Y sqrt(rho)*, which is what is
    computed: squaring first and taking roots afterwards would turn rounding
    noise of 1e-17 into errors of 1e-9.
    """
    rho = 0.5 * (rho + rho.conj().T)
    evals, vecs = np.linalg.eigh(rho)
    if evals[0] < -INPUT_TOL:
        raise ValueError(f"density matrix has eigenvalue {evals[0]:.3e}")
    root = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    return np.linalg.svd(root @ _SY_SY @ root.conj(), compute_uv=False)


def concurrence(rho) -> float:
    rho = _checked(rho, 4)
    lam = wootters_lambdas(rho)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def _phi_from_q2(alpha: float, q2):
    return 2.0 * np.maximum(0.0, alpha * math.sqrt(1.0 - alpha**2) * q2)


def _psi_from_q2(alpha: float, q2):
    b = math.sqrt(1.0 - alpha**2)
    return 2.0 * np.maximum(0.0, b * q2 * (alpha - b * (1.0 - q2)))


def _result(values, tau):
    return float(values) if np.ndim(tau) == 0 else values


def concurrence_phi_closed(alpha: float, d: float, tau):
    alpha = _check_alpha(alpha)
    q2 = np.abs(amplitude_q(d, tau)) ** 2
    return _result(_phi_from_q2(alpha, q2), tau)


def concurrence_psi_closed(alpha: float, d: float, tau):
    alpha = _check_alpha(alpha)
    q2 = np.abs(amplitude_q(d, tau)) ** 2
    return _result(_psi_from_q2(alpha, q2), tau)


def closed_form_from_q2(family: str, alpha: float, q2):
    """Bell-like concurrence as a function of the excited population factor |q|^2."""
    alpha = _check_alpha(alpha)
    if family == "phi":
        return _phi_from_q2(alpha, q2)
    if family == "psi":
        return _psi_from_q2(alpha, q2)
    raise ValueError("family must be 'phi' or 'psi'")


def asymptotic_concurrence(family: str, alpha: float, d: float) -> float:
    return float(closed_form_from_q2(family, alpha, steady_amplitude_sq(d)))


def esd_threshold(alpha: float, family: str = "psi") -> float | None:
    """|q|^2 at or below which the Bell-like concurrence is exactly zero.

    ``None`` means the concurrence only vanishes as |q|^2 -> 0.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly inside (0, 1); the state is separable otherwise")
    if family == "phi":
        return None
    if family != "psi":
        raise ValueError("family must be 'phi' or 'psi'")
    threshold = 1.0 - alpha / math.sqrt(1.0 - alpha**2)
    # alpha = 1/sqrt(2) in floating point lands a few ulp either side of b
    if threshold <= 1e-12:
        return None
    return threshold
