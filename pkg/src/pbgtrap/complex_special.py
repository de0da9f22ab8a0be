"""Complex error functions and principal-branch roots.

``erfcx`` is built on the Faddeeva function w(z) = exp(-z**2) erfc(-iz),
evaluated in the closed upper half plane with a hybrid scheme:

* |z| < ``SWITCH_RADIUS``: Weideman's rational approximation (N = 40 terms),
* |z| >= ``SWITCH_RADIUS``: Laplace continued fraction, backward recurrence.

The lower half plane is reached through the reflection
w(-z) = 2 exp(-z**2) - w(z).

All functions accept scalars or arrays. Scalars come back as Python
``complex``; arrays keep their shape.
"""

from __future__ import annotations

import numpy as np

SWITCH_RADIUS = 6.0
WEIDEMAN_TERMS = 40
CF_DEPTH = 24

_SQRT_PI = np.sqrt(np.pi)
# exp() overflows just above 709.78
_EXP_LIMIT = 709.0


def _weideman_coefficients(n: int) -> tuple[float, np.ndarray]:
    m = 2 * n
    k = np.arange(-m + 1, m)
    length = np.sqrt(n / np.sqrt(2.0))
    t = length * np.tan(k * np.pi / (2 * m))
    f = np.exp(-t * t) * (length**2 + t * t)
    f = np.concatenate([[0.0], f])
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * m)
    return length, a[1 : n + 1][::-1].copy()


_WEIDEMAN_L, _WEIDEMAN_A = _weideman_coefficients(WEIDEMAN_TERMS)


def _as_complex_array(z) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("complex argument must be finite")
    return arr, arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    if not np.all(np.isfinite(arr)):
        raise OverflowError("result is not representable in double precision")
    return complex(arr) if scalar else arr


def _w_upper(z: np.ndarray) -> np.ndarray:
    """Faddeeva function for Im(z) >= 0."""
    out = np.empty_like(z)
    near = np.abs(z) < SWITCH_RADIUS
    if np.any(near):
        zn = z[near]
        L = _WEIDEMAN_L
        denom = L - 1j * zn
        p = np.polyval(_WEIDEMAN_A, (L + 1j * zn) / denom)
        out[near] = 2.0 * p / denom**2 + (1.0 / _SQRT_PI) / denom
    far = ~near
    if np.any(far):
        zf = z[far]
        r = np.zeros_like(zf)
        for n in range(CF_DEPTH, 0, -1):
            r = (0.5 * n) / (zf - r)
        out[far] = (1j / _SQRT_PI) / (zf - r)
    return out


def faddeeva_w(z):
    """Faddeeva function w(z) = exp(-z**2) * erfc(-i z) for any finite z."""
    arr, scalar = _as_complex_array(z)
    arr = arr + 0.0  # drop negative zeros
    upper = arr.imag >= 0
    out = np.empty_like(arr)
    out[upper] = _w_upper(arr[upper])
    lower = ~upper
    if np.any(lower):
        zl = arr[lower]
        with np.errstate(over="ignore", invalid="ignore"):
            out[lower] = 2.0 * np.exp(-zl * zl) - _w_upper(-zl)
    return _out(out, scalar)


def erfcx_scaled(z):
    """Scaled complementary error function ``exp(z**2) * erfc(z)``.

    Bounded for Re(z) >= 0. For Re(z) < 0 the result contains
    ``2 exp(z**2)`` and raises ``OverflowError`` once that term
    leaves the double range (Re(z**2) beyond about 709).
    """
    arr, scalar = _as_complex_array(z)
    arr = arr + 0.0
    right = arr.real >= 0
    out = np.empty_like(arr)
    out[right] = _w_upper(1j * arr[right])
    left = ~right
    if np.any(left):
        zl = arr[left]
        with np.errstate(over="ignore", invalid="ignore"):
            out[left] = 2.0 * np.exp(zl * zl) - _w_upper(-1j * zl)
    return _out(out, scalar)


def erfc_complex(z):
    """Complementary error function of a complex argument."""
    arr, scalar = _as_complex_array(z)
    arr = arr + 0.0
    right = arr.real >= 0
    out = np.empty_like(arr)
    zr = arr[right]
    wr = _w_upper(1j * zr)
    # exp(-z^2 + log w) keeps the product finite when exp(-z^2) alone would not be
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out[right] = np.exp(-zr * zr + np.log(wr))
    left = ~right
    if np.any(left):
        zl = -arr[left]
        wl = _w_upper(1j * zl)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out[left] = 2.0 - np.exp(-zl * zl + np.log(wl))
    return _out(out, scalar)


def principal_sqrt(z):
    """Square root with arg(result) in (-pi/2, pi/2]."""
    arr, scalar = _as_complex_array(z)
    res = np.sqrt(arr + 0.0)
    return complex(res) if scalar else res


def principal_cbrt(z):
    """Cube root with arg(result) in (-pi/3, pi/3]."""
    arr, scalar = _as_complex_array(z)
    arr = arr + 0.0
    res = np.cbrt(np.abs(arr)) * np.exp(1j * np.angle(arr) / 3.0)
    return complex(res) if scalar else res
