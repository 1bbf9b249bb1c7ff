"""Spherically symmetric scalar mode in the shell a < r < R_out.

The field profile is ``phi(r) = A cos(omega (r - a)) / (omega r)`` with
``d(r phi)/dr = 0`` at both walls, so ``omega_n = n pi / (R_out - a)``.
The amplitude follows the Klein-Gordon normalization
``int phi^2 d^3x = 1 / (2 omega_n)``, which gives
``A^2 = omega_n / (4 pi (R_out - a))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfShell

NORMALIZATION_NOTE = (
    "Klein-Gordon normalization int phi^2 d^3x = 1/(2 omega_n), "
    "A^2 = omega_n / (4 pi (R_out - a)); the printed condition "
    "'2 omega_n A^2 int phi^2 = 1' is read with A taken out of phi"
)

_BOUNDARY_SLACK = 1e-14


@dataclass(frozen=True)
class ShellGeometry:
    a: float
    R_out: float

    def __post_init__(self):
        if not (0 < self.a < self.R_out):
            raise ValueError(f"need 0 < a < R_out, got a={self.a}, R_out={self.R_out}")

    @property
    def width(self) -> float:
        return self.R_out - self.a


@dataclass(frozen=True)
class Mode:
    n: int
    omega: float
    amplitude_sq: float


def make_mode(geom: ShellGeometry, n: int) -> Mode:
    if int(n) != n or n < 1:
        raise ValueError(f"radial quantum number must be a positive integer, got {n}")
    n = int(n)
    omega = n * math.pi / geom.width
    return Mode(n=n, omega=omega, amplitude_sq=omega / (4 * math.pi * geom.width))


def _check_radius(geom, r):
    r = np.asarray(r, dtype=float)
    slack = _BOUNDARY_SLACK * geom.R_out
    if np.any(r < geom.a - slack) or np.any(r > geom.R_out + slack):
        raise OutOfShell(f"r={r} outside the shell [{geom.a}, {geom.R_out}]")
    return r


def phi(geom: ShellGeometry, mode: Mode, r):
    r = _check_radius(geom, r)
    amp = math.sqrt(mode.amplitude_sq)
    return amp * np.cos(mode.omega * (r - geom.a)) / (mode.omega * r)


def dphi_dr(geom: ShellGeometry, mode: Mode, r):
    """First radial derivative of ``phi``; equals ``-phi/r`` at both walls."""
    r = _check_radius(geom, r)
    amp = math.sqrt(mode.amplitude_sq)
    u = mode.omega * (r - geom.a)
    return -amp * np.sin(u) / r - amp * np.cos(u) / (mode.omega * r**2)


def d2phi_dr2(geom: ShellGeometry, mode: Mode, r):
    r = _check_radius(geom, r)
    amp = math.sqrt(mode.amplitude_sq)
    w = mode.omega
    u = w * (r - geom.a)
    return amp * (-w * np.cos(u) / r + 2 * np.sin(u) / r**2 + 2 * np.cos(u) / (w * r**3))
