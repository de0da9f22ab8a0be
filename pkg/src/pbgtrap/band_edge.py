"""Single-atom amplitude near the edge of an ideal photonic band gap.

Everything is dimensionless: detuning ``d = delta / beta`` (negative inside
the gap) and time ``tau = beta * t``. The poles of the Laplace-transformed
amplitude sit at s = x**2 + i d where x solves

    x**3 + i d x + exp(-i pi/4) = 0.

Writing x = y exp(i pi/4) reduces this to the real cubic y**3 + d y - 1 = 0,
whose Cardano parts A+ and A- are built here with A+ * A- = -d/3 enforced.
That constraint fixes the cube-root branch continuously in d; the plain
principal branch of A- breaks it for d > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .complex_special import erfcx_scaled, principal_cbrt, principal_sqrt

D_MAX = 100.0
DEGENERATE_D = -3.0 * 4.0 ** (-1.0 / 3.0)
DEGENERATE_EPS = 1e-6
MIN_ROOT_SEPARATION = 1e-6
STEADY_GATE = -1e-9

_E_PI4 = np.exp(1j * np.pi / 4)
_E_PI6 = np.exp(1j * np.pi / 6)


class DegenerateDetuningError(ValueError):
    """Detuning too close to the double-root point, where a_j has a pole."""


class RootConditioningError(ValueError):
    """Two of the roots x_j are numerically indistinguishable."""


@dataclass(frozen=True)
class BandEdgeRoots:
    d: float
    a_plus: complex
    a_minus: complex
    x: tuple[complex, complex, complex]
    a: tuple[complex, complex, complex]

    @property
    def sqrt_x2(self) -> tuple[complex, complex, complex]:
        """Principal square roots of x_j**2 (not x_j itself in general)."""
        return tuple(principal_sqrt(xj * xj) for xj in self.x)


@dataclass(frozen=True)
class AmplitudeSeries:
    d: float
    taus: np.ndarray
    q: np.ndarray

    @property
    def q2(self) -> np.ndarray:
        return np.abs(self.q) ** 2


@dataclass(frozen=True)
class PhysicalParams:
    omega0: float  # rad/s
    dipole: float  # C m


def check_detuning(d: float) -> float:
    d = float(d)
    if not math.isfinite(d):
        raise ValueError("detuning must be finite")
    if abs(d) > D_MAX:
        raise ValueError(f"|d| must not exceed {D_MAX}, got {d}")
    if abs(d - DEGENERATE_D) < DEGENERATE_EPS:
        raise DegenerateDetuningError(
            f"d={d} lies within {DEGENERATE_EPS} of the degenerate detuning "
            f"{DEGENERATE_D:.10f} where two roots coincide and the residues diverge; "
            "shift the sweep grid to avoid it"
        )
    return d


def compute_roots(d: float) -> BandEdgeRoots:
    """Roots x_j and residue weights a_j = x_j / ((x_j - x_i)(x_j - x_k))."""
    d = check_detuning(d)
    disc = principal_sqrt(1.0 + 4.0 * d**3 / 27.0)
    a_plus = principal_cbrt(0.5 + 0.5 * disc)
    # real radicand: real cube roots; complex radicand: conjugate pair
    a_minus = -d / (3.0 * a_plus)
    x1 = (a_plus + a_minus) * _E_PI4
    x2 = (a_plus / _E_PI6 - a_minus * _E_PI6) / _E_PI4
    x3 = (a_plus * _E_PI6 - a_minus / _E_PI6) * _E_PI4**3
    x = (complex(x1), complex(x2), complex(x3))
    sep = min(abs(x[0] - x[1]), abs(x[0] - x[2]), abs(x[1] - x[2]))
    if sep < MIN_ROOT_SEPARATION:
        raise RootConditioningError(f"roots at d={d} are separated by only {sep:.3e}")
    a = tuple(
        x[j] / ((x[j] - x[(j + 1) % 3]) * (x[j] - x[(j + 2) % 3])) for j in range(3)
    )
    return BandEdgeRoots(d=d, a_plus=complex(a_plus), a_minus=complex(a_minus), x=x, a=a)


def _check_taus(tau) -> np.ndarray:
    taus = np.asarray(tau, dtype=float)
    if not np.all(np.isfinite(taus)) or np.any(taus < 0):
        raise ValueError("tau must be finite and non-negative")
    return taus


def _amplitude(roots: BandEdgeRoots, taus: np.ndarray) -> np.ndarray:
    x, a, w = roots.x, roots.a, roots.sqrt_x2
    root_tau = np.sqrt(taus)
    # bound-state pole: Re(x1) > 0 for every admissible d
    total = 2.0 * a[0] * x[0] * np.exp(x[0] ** 2 * taus)
    # second pole contributes only when it lies on the physical sheet (Re x2 > 0)
    c2 = a[1] * (x[1] + w[1])
    if abs(c2) > 1e-12 * abs(a[1] * x[1]):
        total = total + c2 * np.exp(x[1] ** 2 * taus)
    for j in range(3):
        total = total - a[j] * w[j] * erfcx_scaled(w[j] * root_tau)
    return total * np.exp(1j * roots.d * taus)


def amplitude_q(d: float, tau):
    """Excited-state amplitude q(tau); scalar tau gives a complex scalar."""
    taus = _check_taus(tau)
    q = _amplitude(compute_roots(d), np.atleast_1d(taus))
    return complex(q[0]) if taus.ndim == 0 else q.reshape(taus.shape)


def amplitude_series(d: float, tau_grid) -> AmplitudeSeries:
    taus = _check_taus(tau_grid).ravel()
    if taus.size > 1 and np.any(np.diff(taus) < 0):
        raise ValueError("tau grid must be monotone non-decreasing")
    roots = compute_roots(d)
    return AmplitudeSeries(d=roots.d, taus=taus, q=_amplitude(roots, taus))


def steady_amplitude_sq(d: float) -> float:
    """Long-time excited population |q_s|^2 = 4 |a1 x1|^2 (0 if the pole decays)."""
    roots = compute_roots(d)
    x1 = roots.x[0]
    if (x1 * x1).real < STEADY_GATE:
        return 0.0
    return float(min(1.0, max(0.0, 4.0 * abs(roots.a[0] * x1) ** 2)))


def excited_population(p0: float, d: float, tau):
    if not 0.0 <= p0 <= 1.0:
        raise ValueError("initial population must lie in [0, 1]")
    return p0 * np.abs(amplitude_q(d, tau)) ** 2


def beta_from_physical(p: PhysicalParams) -> float:
    """Characteristic band-edge rate beta in s^-1.

    beta**(3/2) = omega0**(7/2) dipole**2 / (6 pi eps0 hbar c**3), with
    omega0 taken as an angular frequency.
    """
    if not (p.omega0 > 0 and p.dipole > 0):
        raise ValueError("omega0 and dipole must be strictly positive")
    beta32 = p.omega0**3.5 * p.dipole**2 / (
        6.0 * np.pi * constants.epsilon_0 * constants.hbar * constants.c**3
    )
    return float(beta32 ** (2.0 / 3.0))
