"""Order-1/2 Bessel log-derivatives and the reduced contour integrands.

At order 1/2 every Bessel function is elementary, so ``z B'(z)/B(z)`` has a
closed form:

    J   z cot z - 1/2        H^(1)   i z - 1/2
    I   z coth z - 1/2       K       -z - 1/2

``series_logderiv`` evaluates the same quantities from the ascending power
series in extended precision and serves as the independent check.
"""

from __future__ import annotations

import cmath
import enum
import math

import mpmath
import numpy as np

from .errors import NearPole


class BesselKind(enum.Enum):
    J_HALF = "J"
    H1_HALF = "H1"
    I_HALF = "I"
    K_HALF = "K"


def z_logderiv(kind: BesselKind, z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise ValueError("z * B'(z) / B(z) is evaluated only for z != 0")
    if kind is BesselKind.J_HALF:
        s = cmath.sin(z)
        if abs(s) < 1e-12 * abs(z):
            raise NearPole(f"sin z vanishes at z={z}")
        return z * cmath.cos(z) / s - 0.5
    if kind is BesselKind.H1_HALF:
        return 1j * z - 0.5
    if kind is BesselKind.I_HALF:
        if abs(z) < 1e-4:
            # z coth z = 1 + z^2/3 - z^4/45 + ...
            z2 = z * z
            return 0.5 + z2 / 3 - z2 * z2 / 45
        return z / cmath.tanh(z) - 0.5
    if kind is BesselKind.K_HALF:
        return -z - 0.5
    raise TypeError(f"unknown Bessel kind {kind!r}")


# -- series oracle -----------------------------------------------------------

_ORACLE_DPS = 60
_SERIES_REL_CUTOFF = mpmath.mpf(10) ** (-(_ORACLE_DPS - 5))


def _series(order, z, alternating):
    """Return (B, z B') for J_order (alternating) or I_order from the power series."""
    half = z / 2
    sign = -1 if alternating else 1
    term = half**order / mpmath.gamma(order + 1)
    k = 0
    value = mpmath.mpc(0)
    zderiv = mpmath.mpc(0)
    while True:
        value += term
        zderiv += (2 * k + order) * term
        k += 1
        term *= sign * half * half / (k * (k + order))
        if abs(term) * (2 * k + abs(order) + 1) < _SERIES_REL_CUTOFF * max(abs(value), abs(zderiv)) \
                and k > abs(z):
            break
    return value, zderiv


def series_logderiv(kind: BesselKind, z: complex) -> complex:
    """``z B'(z)/B(z)`` from ascending series in 60-digit arithmetic.

    J and I come straight from their series; ``H1_(1/2) = J_(1/2) - i J_(-1/2)``
    and ``K_(1/2) = (pi/2) (I_(-1/2) - I_(1/2))``.
    """
    with mpmath.workdps(_ORACLE_DPS):
        zz = mpmath.mpc(complex(z))
        half = mpmath.mpf(1) / 2
        if kind is BesselKind.J_HALF:
            b, zb = _series(half, zz, True)
        elif kind is BesselKind.I_HALF:
            b, zb = _series(half, zz, False)
        elif kind is BesselKind.H1_HALF:
            bp, zbp = _series(half, zz, True)
            bm, zbm = _series(-half, zz, True)
            b, zb = bp - 1j * bm, zbp - 1j * zbm
        elif kind is BesselKind.K_HALF:
            bp, zbp = _series(half, zz, False)
            bm, zbm = _series(-half, zz, False)
            b, zb = bm - bp, zbm - zbp
        else:
            raise TypeError(f"unknown Bessel kind {kind!r}")
        return complex(zb / b)


# -- reduced integrands ------------------------------------------------------

def _check_poles(x):
    s = np.sin(x)
    near = (np.abs(s) < 1e-12 * np.abs(x)) & (x != 0)
    if np.any(near):
        raise NearPole(f"x/sin x is singular near x={x[near][0]!r}")
    return np.where(x == 0, 1.0, s)


def f_integrand(x, tau_over_a: float):
    """``(i/2) exp(i|x| - i x tau/a) x / sin x`` (complex)."""
    x = np.asarray(x, dtype=float)
    s = _check_poles(x)
    ratio = np.where(x == 0, 1.0, x / s)
    return 0.5j * np.exp(1j * (np.abs(x) - x * tau_over_a)) * ratio


def f_integrand_re(x, tau_over_a: float):
    """Real part of ``f_integrand``.

    ``-(x/2) sin(x(1 - tau/a)) / sin x`` for x > 0 and
    ``(x/2) sin(x(1 + tau/a)) / sin x`` for x < 0; zero at x = 0.
    """
    x = np.asarray(x, dtype=float)
    s = _check_poles(x)
    upper = -0.5 * x * np.sin(x * (1 - tau_over_a))
    lower = 0.5 * x * np.sin(x * (1 + tau_over_a))
    return np.where(x >= 0, upper, lower) / s


def f_integrand_im(x, tau_over_a: float):
    """Imaginary part of ``f_integrand``: ``(x/2) cos(|x| - x tau/a) / sin x``."""
    x = np.asarray(x, dtype=float)
    ratio = np.where(x == 0, 1.0, x / _check_poles(x))
    return 0.5 * np.cos(np.abs(x) - x * tau_over_a) * ratio


def f_integrand_from_logderivs(x: float, tau_over_a: float) -> complex:
    """Same integrand assembled from ``k a [H'/H + J'/J] + 1`` with ``ka = |x|``."""
    ka = abs(x)
    bracket = z_logderiv(BesselKind.H1_HALF, ka) + z_logderiv(BesselKind.J_HALF, ka) + 1
    return 0.5j * cmath.exp(-1j * x * tau_over_a) * bracket


def fE_integrand(y, delta: float = 0.0):
    """``-cos(delta y) * 2x / (exp(2x) - 1)`` with ``x = |y|``; equals -1 at y = 0.

    This is the even real part of ``-(1/2) exp(i delta y)(x K'/K + x I'/I + 1)``
    doubled, so its half-line integral is the full-line Euclidean integral.
    """
    x = np.abs(np.asarray(y, dtype=float))
    decay = np.exp(-2 * x)
    with np.errstate(invalid="ignore", divide="ignore"):
        bose = np.where(x == 0, 1.0, 2 * x * decay / -np.expm1(-2 * np.where(x == 0, 1.0, x)))
    return -np.cos(delta * np.asarray(y, dtype=float)) * bose


def fE_integrand_from_logderivs(y: float, delta: float = 0.0) -> float:
    x = abs(y)
    bracket = z_logderiv(BesselKind.K_HALF, x) + z_logderiv(BesselKind.I_HALF, x) + 1
    return -math.cos(delta * y) * bracket.real
